#include "hrbound/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hrbound/errors.hpp"

namespace hrbound {

namespace {

void check(std::span<const double> values, std::span<const double> sizes, double capacity) {
  if (values.size() != sizes.size()) throw std::invalid_argument("values and sizes differ in length");
  if (!(capacity >= 0.0)) throw std::invalid_argument("capacity must be >= 0");
  for (double s : sizes) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("sizes must be finite and > 0");
  }
}

}  // namespace

KnapsackSolution solve_fractional_knapsack(std::span<const double> values, std::span<const double> sizes,
                                           double capacity) {
  check(values, sizes, capacity);
  const std::size_t n = values.size();
  KnapsackSolution sol;
  sol.order.resize(n);
  std::iota(sol.order.begin(), sol.order.end(), ObjectId{0});
  std::stable_sort(sol.order.begin(), sol.order.end(),
                   [&](ObjectId a, ObjectId b) { return values[a] / sizes[a] > values[b] / sizes[b]; });
  sol.fractions.assign(n, 0.0);
  double remaining = capacity;
  std::size_t k = 0;
  for (; k < n; ++k) {
    const ObjectId i = sol.order[k];
    if (sizes[i] > remaining) break;
    sol.fractions[i] = 1.0;
    sol.objective += values[i];
    remaining -= sizes[i];
  }
  sol.full_count = k;
  if (k < n) {
    const ObjectId i = sol.order[k];
    sol.marginal = i;
    sol.marginal_fraction = remaining > 0.0 ? remaining / sizes[i] : 0.0;
    sol.fractions[i] = sol.marginal_fraction;
    sol.objective += values[i] * sol.marginal_fraction;
  }
  return sol;
}

double brute_force_knapsack01(std::span<const double> values, std::span<const double> sizes, double capacity) {
  check(values, sizes, capacity);
  const std::size_t n = values.size();
  if (n > kMaxKnapsackBruteForce) throw InstanceTooLarge("0-1 knapsack enumeration is limited to 20 items");
  double best = 0.0;
  const std::size_t subsets = std::size_t{1} << n;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    double v = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        v += values[i];
        s += sizes[i];
      }
    }
    if (s <= capacity) best = std::max(best, v);
  }
  return best;
}

}  // namespace hrbound
