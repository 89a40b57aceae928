#include "hrbound/belady.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include "hrbound/errors.hpp"

namespace hrbound {

std::vector<bool> belady_hits(std::span<const ObjectId> requests, std::size_t capacity) {
  const std::size_t k_total = requests.size();
  constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> next_use(k_total, kNever);
  std::unordered_map<ObjectId, std::size_t> seen;
  for (std::size_t k = k_total; k-- > 0;) {
    auto it = seen.find(requests[k]);
    if (it != seen.end()) next_use[k] = it->second;
    seen[requests[k]] = k;
  }

  // Cached objects ordered by next use, ties by descending id, so the last
  // element is the farthest next use with the lowest id.
  struct Farthest {
    bool operator()(const std::pair<std::size_t, ObjectId>& a, const std::pair<std::size_t, ObjectId>& b) const {
      return a.first != b.first ? a.first < b.first : a.second > b.second;
    }
  };
  std::set<std::pair<std::size_t, ObjectId>, Farthest> cache;
  std::unordered_map<ObjectId, std::size_t> key_of;
  std::vector<bool> hits(k_total, false);
  if (capacity == 0) return hits;

  for (std::size_t k = 0; k < k_total; ++k) {
    const ObjectId r = requests[k];
    auto it = key_of.find(r);
    if (it != key_of.end()) {
      hits[k] = true;
      cache.erase({it->second, r});
      it->second = next_use[k];
      cache.insert({next_use[k], r});
      continue;
    }
    if (next_use[k] == kNever) continue;
    if (cache.size() >= capacity) {
      auto victim = std::prev(cache.end());
      if (victim->first <= next_use[k]) continue;  // bypass
      key_of.erase(victim->second);
      cache.erase(victim);
    }
    cache.insert({next_use[k], r});
    key_of[r] = next_use[k];
  }
  return hits;
}

BoundScore belady_score(const RequestTrace& trace, std::size_t capacity, const ScoreOptions& options) {
  std::vector<ObjectId> ids(trace.size());
  std::transform(trace.events.begin(), trace.events.end(), ids.begin(), [](const RequestEvent& e) { return e.object; });
  const auto hits = belady_hits(ids, capacity);
  const std::size_t warm = warmup_count(trace.size(), options.warmup_fraction);
  BoundScore score;
  for (std::size_t k = warm; k < hits.size(); ++k) score.add(hits[k] ? 1.0 : 0.0, 1.0, options.keep_credits);
  score.finish();
  return score;
}

BoundScore belady_score(const RequestTrace& trace, const Catalog& catalog, std::size_t capacity,
                        const ScoreOptions& options) {
  if (std::any_of(catalog.sizes.begin(), catalog.sizes.end(), [&](double s) { return s != catalog.sizes.front(); }))
    throw Unsupported("offline optimum is only provided for equal object sizes");
  BoundScore score = belady_score(trace, capacity, options);
  // Rescale byte counts to the common object size.
  const double s = catalog.sizes.empty() ? 1.0 : catalog.sizes.front();
  score.expected_bytes_hit *= s;
  score.requested_bytes *= s;
  return score;
}

std::size_t brute_force_offline_optimal(std::span<const ObjectId> requests, std::size_t capacity) {
  constexpr std::size_t kMaxRequests = 16;
  constexpr ObjectId kMaxObjects = 6;
  if (requests.size() > kMaxRequests) throw InstanceTooLarge("brute-force optimum is limited to 16 requests");
  if (std::any_of(requests.begin(), requests.end(), [](ObjectId r) { return r >= kMaxObjects; }))
    throw InstanceTooLarge("brute-force optimum is limited to 6 objects");

  const std::size_t k_total = requests.size();
  constexpr std::size_t kStates = std::size_t{1} << kMaxObjects;
  std::vector<int> memo((k_total + 1) * kStates, -1);

  std::function<int(std::size_t, unsigned)> best = [&](std::size_t k, unsigned mask) -> int {
    if (k == k_total) return 0;
    int& slot = memo[k * kStates + mask];
    if (slot >= 0) return slot;
    const unsigned bit = 1U << requests[k];
    int result;
    if (mask & bit) {
      result = 1 + best(k + 1, mask);
    } else {
      result = best(k + 1, mask);  // bypass
      if (capacity > 0) {
        if (static_cast<std::size_t>(std::popcount(mask)) < capacity) {
          result = std::max(result, best(k + 1, mask | bit));
        } else {
          for (unsigned v = 0; v < kMaxObjects; ++v) {
            if (mask >> v & 1U) result = std::max(result, best(k + 1, (mask & ~(1U << v)) | bit));
          }
        }
      }
    }
    slot = result;
    return result;
  };
  return static_cast<std::size_t>(best(0, 0));
}

}  // namespace hrbound
