#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hrbound/bounds.hpp"
#include "hrbound/catalog.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

/// Offline optimum for equal-size objects: farthest-next-use eviction with
/// bypass. Returns per-request hit flags for the whole sequence.
std::vector<bool> belady_hits(std::span<const ObjectId> requests, std::size_t capacity);

/// belady_hits scored after warm-up. Decisions use the whole trace.
BoundScore belady_score(const RequestTrace& trace, std::size_t capacity, const ScoreOptions& options = {});

/// As above; throws Unsupported when the catalog's object sizes differ.
BoundScore belady_score(const RequestTrace& trace, const Catalog& catalog, std::size_t capacity,
                        const ScoreOptions& options = {});

/// Maximum hit count over every on-demand admission/eviction schedule.
/// Throws InstanceTooLarge for more than 16 requests or an id >= 6.
std::size_t brute_force_offline_optimal(std::span<const ObjectId> requests, std::size_t capacity);

}  // namespace hrbound
