#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

#include "hrbound/random.hpp"

namespace hrbound {

// Inter-request time (IRT) laws of a renewal request process. Each family
// carries its own parameterization; IrtDistribution validates them once at
// construction and is immutable afterwards.

struct Exponential {
  double rate;
};

/// F(t) = 1 - (1 + shape*t/scale)^(-1/shape). shape == 0 is the exponential limit.
struct GeneralizedPareto {
  double shape;
  double scale;
};

/// Uniform on (0, upper).
struct Uniform {
  double upper;
};

/// Two-phase mixture: with probability p1 an Exp(rate1) gap, else Exp(rate2).
struct Hyperexponential {
  double p1;
  double p2;
  double rate1;
  double rate2;
};

struct Gamma {
  double shape;
  double scale;
};

struct Erlang {
  int shape;
  double rate;
};

enum class IrtFamily { exponential, generalized_pareto, uniform, hyperexponential, gamma, erlang };

std::string_view family_name(IrtFamily family);
std::optional<IrtFamily> parse_family(std::string_view name);

class IrtDistribution {
 public:
  using Params = std::variant<Exponential, GeneralizedPareto, Uniform, Hyperexponential, Gamma, Erlang>;

  /// Throws std::invalid_argument if a parameter is out of range.
  IrtDistribution(Params params);  // NOLINT(google-explicit-constructor)

  template <class T>
    requires std::is_constructible_v<Params, T> && (!std::is_same_v<std::decay_t<T>, Params>)
  IrtDistribution(T params) : IrtDistribution(Params(std::move(params))) {}  // NOLINT(google-explicit-constructor)

  IrtFamily family() const noexcept { return static_cast<IrtFamily>(params_.index()); }
  const Params& params() const noexcept { return params_; }

  template <class T>
  const T& as() const {
    return std::get<T>(params_);
  }

 private:
  Params params_;
};

/// Hazard returned where the true value diverges (Gamma with shape < 1 at
/// age 0, Uniform at or past its upper end when evaluated by a tracker).
inline constexpr double kHazardCap = 1e15;

/// f(age) / (1 - F(age)). Throws std::domain_error for Uniform with
/// age >= upper and std::invalid_argument for negative or non-finite ages.
double hazard_rate(const IrtDistribution& dist, double age);

double irt_cdf(const IrtDistribution& dist, double t);
double irt_survival(const IrtDistribution& dist, double t);
double irt_density(const IrtDistribution& dist, double t);

double sample_irt(const IrtDistribution& dist, Rng& rng);

/// Throws std::domain_error for a generalized Pareto law with shape >= 1.
double mean_irt(const IrtDistribution& dist);

/// Shape parameters held fixed by from_rate. `shape` is used by the
/// generalized Pareto, Gamma and Erlang families, `scv` by the
/// hyperexponential family.
struct ShapeParams {
  double shape = 0.0;
  double scv = 2.0;
};

/// Distribution of the given family whose mean IRT is 1/rate.
IrtDistribution from_rate(IrtFamily family, double rate, const ShapeParams& shape = {});

/// Default shape parameters used by the experiments for each family.
ShapeParams default_shape(IrtFamily family);

namespace detail {

// Closed-form hazards shared by the scalar API and the tracker kernels so
// both paths produce bit-identical values.

inline double gpd_hazard(double shape, double scale, double age) { return 1.0 / (scale + shape * age); }

inline double uniform_hazard(double upper, double age) { return 1.0 / (upper - age); }

inline double hyperexp_hazard(const Hyperexponential& h, double age) {
  const double slow = std::min(h.rate1, h.rate2);
  const double w1 = h.p1 * std::exp(-(h.rate1 - slow) * age);
  const double w2 = h.p2 * std::exp(-(h.rate2 - slow) * age);
  return (w1 * h.rate1 + w2 * h.rate2) / (w1 + w2);
}

inline double erlang_hazard(int shape, double rate, double age) {
  const double x = rate * age;
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < shape; ++j) {
    term *= x / j;
    sum += term;
  }
  return rate * term / sum;
}

/// Gamma(1/2, scale): Q(1/2, x) = erfc(sqrt(x)).
inline double gamma_half_hazard(double scale, double age) {
  if (age <= 0.0) return kHazardCap;
  const double x = age / scale;
  if (x > 600.0) {
    const double inv = 1.0 / x;
    return 1.0 / (scale * (1.0 - 0.5 * inv + 0.75 * inv * inv - 1.875 * inv * inv * inv));
  }
  return std::exp(-x) / (scale * std::sqrt(std::numbers::pi * x) * std::erfc(std::sqrt(x)));
}

double gamma_hazard(double shape, double scale, double age);

}  // namespace detail

}  // namespace hrbound
