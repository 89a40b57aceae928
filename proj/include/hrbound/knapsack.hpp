#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hrbound/catalog.hpp"

namespace hrbound {

struct KnapsackSolution {
  /// Objects by decreasing value/size ratio, ties by lower id.
  std::vector<ObjectId> order;
  /// Fraction of each object placed, indexed by object id.
  std::vector<double> fractions;
  /// Number of leading objects in `order` that are placed entirely.
  std::size_t full_count = 0;
  /// The object following the full prefix, if any, and its fraction.
  std::optional<ObjectId> marginal;
  double marginal_fraction = 0.0;
  /// Sum of values[i] * fractions[i].
  double objective = 0.0;
};

/// Greedy optimum of max sum v_i x_i s.t. sum s_i x_i <= B, 0 <= x_i <= 1.
/// Throws std::invalid_argument for mismatched lengths, non-positive sizes or
/// negative capacity.
KnapsackSolution solve_fractional_knapsack(std::span<const double> values, std::span<const double> sizes,
                                           double capacity);

/// Exact 0-1 knapsack optimum by subset enumeration. Throws InstanceTooLarge
/// for more than 20 items.
double brute_force_knapsack01(std::span<const double> values, std::span<const double> sizes, double capacity);

inline constexpr std::size_t kMaxKnapsackBruteForce = 20;

}  // namespace hrbound
