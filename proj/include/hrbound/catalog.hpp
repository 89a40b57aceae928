#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "hrbound/irt_distribution.hpp"

namespace hrbound {

/// Dense 0-based object index. CSV files use 1-based ids.
using ObjectId = std::uint32_t;

/// Independent renewal request processes, one IRT law per object.
struct RenewalTraffic {
  std::vector<IrtDistribution> irts;
};

/// Per-object two-state (off/on) Markov modulation; requests arrive as a
/// Poisson process with `request_rate` while on and not at all while off.
/// The stationary on-probability is alpha / (alpha + beta).
struct OnOffParams {
  std::vector<double> alpha;         ///< off -> on switching rate
  std::vector<double> beta;          ///< on -> off switching rate
  std::vector<double> request_rate;  ///< Poisson rate while on

  std::size_t size() const noexcept { return request_rate.size(); }
  double on_probability(std::size_t i) const { return alpha[i] / (alpha[i] + beta[i]); }
  double off_probability(std::size_t i) const { return beta[i] / (alpha[i] + beta[i]); }
};

/// Markov-modulated Poisson traffic: a finite environment chain switches
/// every object's request rate simultaneously.
struct MmppParams {
  /// transition_rates[x][y]: jump rate from state x to state y (diagonal ignored).
  std::vector<std::vector<double>> transition_rates;
  /// request_rates[x][i]: Poisson rate of object i while in state x.
  std::vector<std::vector<double>> request_rates;

  std::size_t states() const noexcept { return request_rates.size(); }
  std::size_t objects() const noexcept { return request_rates.empty() ? 0 : request_rates.front().size(); }

  /// Stationary distribution of the environment chain (solves the balance
  /// equations; sums to 1).
  std::vector<double> stationary() const;

  /// Long-run average rate of object i.
  double mean_rate(std::size_t i) const;
};

struct SnmClass {
  double mean_lifespan;  ///< E[L_c]
  double mean_volume;    ///< E[V_c], expected requests per object
  std::size_t count;     ///< n_c

  /// Class birth rate E[V_c] / E[L_c].
  double birth_rate() const { return mean_volume / mean_lifespan; }
  /// Decay constant of the exponential popularity profile, 0.5/0.8 * E[L_c].
  double decay() const { return 0.625 * mean_lifespan; }
};

/// Shot-noise traffic. Objects are numbered class by class: the first
/// classes[0].count ids belong to class 0, and so on.
struct SnmParams {
  std::vector<SnmClass> classes;

  std::size_t objects() const;
  std::size_t class_of(ObjectId id) const;
};

using TrafficSpec = std::variant<RenewalTraffic, OnOffParams, MmppParams, SnmParams>;

enum class TrafficModel { renewal, onoff, mmpp, snm };

struct Catalog {
  std::vector<double> sizes;
  TrafficSpec traffic;

  std::size_t size() const noexcept { return sizes.size(); }
  TrafficModel model() const noexcept { return static_cast<TrafficModel>(traffic.index()); }
  bool unit_sizes() const;
  double total_size() const;

  /// Long-run per-object request rates used to rank objects statically
  /// (STATIC policy, request-count targeting). For shot noise this is the
  /// class mean volume.
  std::vector<double> average_rates() const;

  /// Throws std::invalid_argument if sizes and traffic dimensions disagree
  /// or any parameter is out of range.
  void validate() const;
};

const char* model_name(TrafficModel model);

/// Renewal catalog with the given family and per-object rates, unit sizes.
Catalog renewal_catalog(IrtFamily family, const std::vector<double>& rates, const ShapeParams& shape);

}  // namespace hrbound
