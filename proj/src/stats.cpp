#include "hrbound/stats.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hrbound {

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_std(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double standard_error(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  return sample_std(x) / std::sqrt(static_cast<double>(x.size()));
}

double batch_means_stderr(std::span<const double> x, std::size_t batches) {
  if (batches < 2) throw std::invalid_argument("batch means need at least 2 batches");
  const std::size_t len = x.size() / batches;
  if (len == 0) throw std::invalid_argument("too few values for the requested number of batches");
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) means[b] = mean(x.subspan(b * len, len));
  return standard_error(means);
}

double paired_stderr(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return standard_error(d);
}

Interval normal_ci95(std::span<const double> x) {
  const double m = mean(x);
  const double h = 1.96 * standard_error(x);
  return {m - h, m + h};
}

}  // namespace hrbound
