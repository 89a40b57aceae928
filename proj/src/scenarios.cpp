#include "hrbound/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hrbound/popularity.hpp"
#include "hrbound/random.hpp"

namespace hrbound {

Catalog onoff_catalog(std::size_t n, double t_on, double t_off, double volume_mean, double volume_shape,
                      std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("on-off catalog needs n >= 1");
  if (!(t_on > 0.0 && t_off > 0.0)) throw std::invalid_argument("on/off durations must be > 0");
  if (!(volume_shape > 1.0 && volume_mean > 0.0)) throw std::invalid_argument("Pareto volume needs shape > 1 and mean > 0");
  const double v_min = volume_mean * (volume_shape - 1.0) / volume_shape;
  Rng rng = substream(seed, 0, 7);
  std::vector<double> volumes(n);
  for (double& v : volumes) v = v_min * std::pow(uniform_open(rng), -1.0 / volume_shape);
  std::sort(volumes.begin(), volumes.end(), std::greater<>());

  OnOffParams p;
  p.alpha.assign(n, 1.0 / t_off);
  p.beta.assign(n, 1.0 / t_on);
  p.request_rate.resize(n);
  std::transform(volumes.begin(), volumes.end(), p.request_rate.begin(), [t_on](double v) { return v / t_on; });
  return Catalog{std::vector<double>(n, 1.0), std::move(p)};
}

Catalog mmpp_catalog(std::size_t n, double exponent, double total_rate, double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0)) throw std::invalid_argument("MMPP jump rates must be > 0");
  auto rates = zipf_rates(n, exponent, total_rate).rates;
  MmppParams p;
  p.transition_rates = {{0.0, alpha}, {beta, 0.0}};
  p.request_rates = {rates, std::vector<double>(rates.rbegin(), rates.rend())};
  return Catalog{std::vector<double>(n, 1.0), std::move(p)};
}

Catalog snm_catalog(std::vector<SnmClass> classes) {
  SnmParams p{std::move(classes)};
  const std::size_t n = p.objects();
  if (n == 0) throw std::invalid_argument("shot-noise catalog needs at least one object");
  return Catalog{std::vector<double>(n, 1.0), std::move(p)};
}

std::vector<SnmClass> scaled_vod_classes(std::size_t target_objects) {
  constexpr std::array<SnmClass, 4> kClasses = {{
      {1.14, 86.4, 29481},
      {3.36, 41.9, 45570},
      {6.40, 59.5, 27435},
      {10.53, 36.9, 41385},
  }};
  std::size_t full = 0;
  for (const auto& c : kClasses) full += c.count;
  std::vector<SnmClass> out(kClasses.begin(), kClasses.end());
  std::size_t assigned = 0;
  for (auto& c : out) {
    c.count = static_cast<std::size_t>(std::llround(static_cast<double>(c.count) * static_cast<double>(target_objects) /
                                                    static_cast<double>(full)));
    assigned += c.count;
  }
  // Absorb rounding in the largest class.
  auto& largest = *std::max_element(out.begin(), out.end(), [](const SnmClass& a, const SnmClass& b) { return a.count < b.count; });
  largest.count = largest.count + target_objects - assigned;
  return out;
}

}  // namespace hrbound
