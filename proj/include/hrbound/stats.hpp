#pragma once

#include <cstddef>
#include <span>

namespace hrbound {

double mean(std::span<const double> x);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_std(std::span<const double> x);

/// Standard error of the mean; 0 for fewer than 2 values.
double standard_error(std::span<const double> x);

/// Standard error of the mean of a correlated sequence from `batches`
/// non-overlapping batch means. Trailing values that do not fill a batch
/// are dropped.
double batch_means_stderr(std::span<const double> x, std::size_t batches = 50);

/// Standard error of mean(a - b) for paired samples.
double paired_stderr(std::span<const double> a, std::span<const double> b);

struct Interval {
  double lo;
  double hi;
};

/// mean +- 1.96 standard errors.
Interval normal_ci95(std::span<const double> x);

}  // namespace hrbound
