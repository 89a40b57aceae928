#include "hrbound/popularity.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hrbound {

double RateVector::total() const { return std::accumulate(rates.begin(), rates.end(), 0.0); }

RateVector zipf_rates(std::size_t n, double exponent, double total_rate) {
  if (n == 0) throw std::invalid_argument("zipf_rates: n must be >= 1");
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) throw std::invalid_argument("zipf_rates: exponent must be >= 0");
  if (!(total_rate > 0.0) || !std::isfinite(total_rate)) throw std::invalid_argument("zipf_rates: total rate must be > 0");

  RateVector out;
  out.rates.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.rates[i] = std::pow(static_cast<double>(i + 1), -exponent);
  const double norm = total_rate / out.total();
  for (double& r : out.rates) r *= norm;
  out.sorted_descending = true;
  return out;
}

}  // namespace hrbound
