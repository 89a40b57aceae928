#pragma once

#include <cstddef>
#include <span>

#include "hrbound/irt_distribution.hpp"

namespace hrbound {

struct GpdFit {
  double shape = 0.0;
  double scale = 1.0;
  double log_likelihood = 0.0;
  std::size_t samples = 0;
  /// False when the likelihood search failed and (shape, scale) are the
  /// method-of-moments estimates.
  bool converged = false;

  IrtDistribution distribution() const { return GeneralizedPareto{shape, scale}; }
};

inline constexpr std::size_t kMinGpdSamples = 10;
inline constexpr double kMaxGpdShape = 5.0;

/// GPD log-likelihood of `samples` (all > 0).
double gpd_log_likelihood(std::span<const double> samples, double shape, double scale);

/// Maximum-likelihood GPD fit with shape constrained to [0, 5]. The scale is
/// profiled out for each candidate shape and the profile likelihood is
/// maximized over the shape by Brent's method.
///
/// Throws InsufficientData for fewer than 10 samples and
/// std::invalid_argument for a non-positive or non-finite sample.
GpdFit fit_gpd_mle(std::span<const double> samples);

}  // namespace hrbound
