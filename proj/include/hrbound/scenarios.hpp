#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hrbound/catalog.hpp"

namespace hrbound {

// Catalog builders for the standard experimental setups.

/// On-off catalog: alpha = 1/t_off, beta = 1/t_on, on-state rate V/t_on
/// with V ~ Pareto(volume_shape) of mean volume_mean. Objects are numbered
/// by decreasing on-state rate. Unit sizes.
Catalog onoff_catalog(std::size_t n, double t_on, double t_off, double volume_mean, double volume_shape,
                      std::uint64_t seed);

/// Two-state MMPP: Zipf(exponent) rates summing to total_rate in state 0 and
/// the reversed vector in state 1. `alpha` is the 0 -> 1 jump rate, `beta`
/// the 1 -> 0 jump rate. Unit sizes.
Catalog mmpp_catalog(std::size_t n, double exponent, double total_rate, double alpha, double beta);

/// Shot-noise catalog with the given classes. Unit sizes.
Catalog snm_catalog(std::vector<SnmClass> classes);

/// Four-class shot-noise mix measured on a VoD trace (lifespan, volume,
/// catalog share), with class counts scaled so they sum to `target_objects`.
std::vector<SnmClass> scaled_vod_classes(std::size_t target_objects);

}  // namespace hrbound
