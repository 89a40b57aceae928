#pragma once

#include <cstddef>
#include <vector>

namespace hrbound {

/// Per-object arrival rates.
struct RateVector {
  std::vector<double> rates;
  bool sorted_descending = false;

  std::size_t size() const noexcept { return rates.size(); }
  double total() const;
};

/// Rates proportional to i^(-exponent), i = 1..n, scaled to sum to total_rate.
RateVector zipf_rates(std::size_t n, double exponent, double total_rate);

}  // namespace hrbound
