#pragma once

#include <cstddef>
#include <vector>

#include "hrbound/catalog.hpp"
#include "hrbound/popularity.hpp"

namespace hrbound {

// Closed-form hit probability and hit rate of the equal-size hazard-rate
// bound. Rates need not be pre-sorted: every form orders objects by
// decreasing rate, equal rates by lower id.

struct AnalyticResult {
  double hit_probability = 0.0;
  /// Hits per unit time.
  double hit_rate = 0.0;
};

/// Independent Poisson requests: the B largest rates are always cached.
/// B is clamped to n.
AnalyticResult poisson_hr(const RateVector& rates, std::size_t capacity);

/// On-off traffic by explicit enumeration of on/off configurations. Throws
/// InstanceTooLarge for more than 25 objects.
AnalyticResult onoff_hr_exact(const OnOffParams& params, std::size_t capacity);

inline constexpr std::size_t kMaxOnOffExact = 25;

/// On-off traffic where every object has the same on-probability rho in (0, 1].
AnalyticResult onoff_hr_common_rho(const RateVector& rates, double rho, std::size_t capacity);

/// Occupancy probabilities p[l][k] and conditional hit rates r[l][k] for a
/// catalog of the l most popular objects, l = 1..n, k = 0..B. Row 0 is unused.
struct OnOffRecursionTable {
  std::vector<std::vector<double>> p;
  std::vector<std::vector<double>> r;
};

OnOffRecursionTable onoff_recursion_table(const OnOffParams& params, std::size_t capacity);

/// On-off traffic in O(nB) from the occupancy recursions.
AnalyticResult onoff_hr_recursive(const OnOffParams& params, std::size_t capacity);

/// MMPP traffic: stationary mix over environment states of the share of the
/// B largest per-state rates. The hit rate is the stationary mean of the B
/// largest per-state rates.
AnalyticResult mmpp_hr(const MmppParams& params, std::size_t capacity);

}  // namespace hrbound
