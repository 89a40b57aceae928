#pragma once

#include <cstdint>
#include <random>

namespace hrbound {

using Rng = std::mt19937_64;

/// Independent random stream keyed by (seed, stream, tag). Streams for
/// different keys do not overlap in practice, so adding objects to a catalog
/// leaves the streams of existing objects untouched.
Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t tag = 0);

/// Child seed for replication `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform draw on the open interval (0, 1).
inline double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace hrbound
