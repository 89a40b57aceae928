#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hrbound/catalog.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

// Seeded synthetic trace generators. Every generator is a pure function of
// (catalog, horizon, seed). Each object draws from its own substreams, and
// per-object arrivals are produced by a time change of a unit-rate process,
// so a longer horizon extends a trace without altering its prefix.

/// Independent renewal processes started at t = 0, first gap drawn from the
/// plain IRT law.
RequestTrace gen_renewal(const Catalog& catalog, double horizon, std::uint64_t seed);

/// Independent on-off modulated Poisson processes. Initial states are drawn
/// from the stationary on-probability; switches are recorded in the trace.
RequestTrace gen_onoff(const Catalog& catalog, double horizon, std::uint64_t seed);

/// Markov-modulated Poisson traffic; the environment starts in a state drawn
/// from its stationary law and its path is recorded in the trace.
RequestTrace gen_mmpp(const Catalog& catalog, double horizon, std::uint64_t seed);

/// Shot-noise traffic: class-c births form a Poisson(birth_rate) sequence,
/// volumes are Poisson(mean_volume), and each object's requests follow the
/// intensity (V/decay)·exp(-(t - birth)/decay), truncated at the horizon.
RequestTrace gen_snm(const Catalog& catalog, double horizon, std::uint64_t seed);

/// Dispatches on the catalog's traffic model.
RequestTrace generate(const Catalog& catalog, double horizon, std::uint64_t seed);

/// Trace with exactly `count` requests: generates up to an estimated horizon,
/// extends it if short, then truncates. Throws Unsupported for shot-noise
/// traffic, which has no stationary request rate.
RequestTrace generate_requests(const Catalog& catalog, std::size_t count, std::uint64_t seed);

/// i.i.d. bounded-Pareto samples on [min_size, max_size].
std::vector<double> sample_sizes_bounded_pareto(std::size_t n, double shape, double min_size, double max_size,
                                                std::uint64_t seed);

double bounded_pareto_cdf(double x, double shape, double min_size, double max_size);

}  // namespace hrbound
