#include "hrbound/gpd_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "hrbound/errors.hpp"

namespace hrbound {

namespace {

constexpr double kMinScale = 1e-9;
constexpr double kMaxScale = 1e9;

double sample_mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Stationarity condition in the scale for a fixed shape:
/// (1+k)/n * sum x/(scale + k x) - 1, decreasing in scale.
double scale_score(std::span<const double> x, double shape, double scale) {
  double s = 0.0;
  for (double v : x) s += v / (scale + shape * v);
  return (1.0 + shape) * s / static_cast<double>(x.size()) - 1.0;
}

double profiled_scale(std::span<const double> x, double shape, double mean) {
  if (shape == 0.0) return std::clamp(mean, kMinScale, kMaxScale);
  double lo = std::max(kMinScale, 1e-6 * *std::min_element(x.begin(), x.end()));
  double hi = std::min(kMaxScale, (1.0 + shape) * mean);
  if (scale_score(x, shape, hi) >= 0.0) return hi;
  while (scale_score(x, shape, lo) <= 0.0 && lo > kMinScale) lo = std::max(kMinScale, lo * 1e-3);
  if (scale_score(x, shape, lo) <= 0.0) return lo;
  boost::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      [&](double s) { return scale_score(x, shape, s); }, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (a + b);
}

GpdFit moments_fit(std::span<const double> x, double mean) {
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size() - 1);
  const double ratio = var > 0.0 ? mean * mean / var : 1.0;
  GpdFit fit;
  fit.shape = std::clamp(0.5 * (1.0 - ratio), 0.0, kMaxGpdShape);
  fit.scale = std::clamp(0.5 * mean * (1.0 + ratio), kMinScale, kMaxScale);
  fit.samples = x.size();
  fit.log_likelihood = gpd_log_likelihood(x, fit.shape, fit.scale);
  fit.converged = false;
  return fit;
}

}  // namespace

double gpd_log_likelihood(std::span<const double> samples, double shape, double scale) {
  const double n = static_cast<double>(samples.size());
  double acc = 0.0;
  if (shape == 0.0) {
    for (double v : samples) acc += v;
    return -n * std::log(scale) - acc / scale;
  }
  for (double v : samples) acc += std::log1p(shape * v / scale);
  return -n * std::log(scale) - (1.0 + 1.0 / shape) * acc;
}

GpdFit fit_gpd_mle(std::span<const double> samples) {
  if (samples.size() < kMinGpdSamples) {
    throw InsufficientData("GPD fit needs at least " + std::to_string(kMinGpdSamples) + " samples, got " +
                           std::to_string(samples.size()));
  }
  for (double v : samples) {
    if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument("GPD fit samples must be finite and > 0");
  }
  const double mean = sample_mean(samples);

  const auto neg_profile = [&](double shape) {
    const double scale = profiled_scale(samples, shape, mean);
    return -gpd_log_likelihood(samples, shape, scale);
  };

  GpdFit fit;
  fit.samples = samples.size();
  try {
    boost::uintmax_t iters = 200;
    const auto [shape, neg_ll] = boost::math::tools::brent_find_minima(neg_profile, 0.0, kMaxGpdShape, 40, iters);
    // The profile can peak on the k = 0 boundary, which Brent only approaches.
    const double boundary = neg_profile(0.0);
    fit.shape = boundary <= neg_ll ? 0.0 : shape;
    fit.scale = profiled_scale(samples, fit.shape, mean);
    fit.log_likelihood = gpd_log_likelihood(samples, fit.shape, fit.scale);
    fit.converged = std::isfinite(fit.log_likelihood) && iters < 200 && fit.scale > kMinScale &&
                    fit.scale < kMaxScale;
  } catch (const std::exception&) {
    fit.converged = false;
  }
  if (!fit.converged) return moments_fit(samples, mean);
  return fit;
}

}  // namespace hrbound
