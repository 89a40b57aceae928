#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "hrbound/bounds.hpp"
#include "hrbound/catalog.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

enum class PolicyKind { lru, fifo, random, static_rank, lfu, gdsf };

/// "LRU", "FIFO", "RANDOM", "STATIC", "LFU", "GDSF".
std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::lru;
  /// Ranking rates for STATIC, one per object.
  std::vector<double> static_rates;
};

/// On-demand cache: an object enters only when it is requested and missed.
/// Objects larger than the capacity are never admitted.
class Cache {
 public:
  Cache(std::vector<double> sizes, double capacity);
  virtual ~Cache() = default;

  Cache(const Cache&) = delete;
  Cache& operator=(const Cache&) = delete;

  /// Serves one request: returns whether it hit, then updates the state.
  bool access(ObjectId object);

  bool contains(ObjectId object) const { return cached_[object] != 0; }
  std::vector<ObjectId> contents() const;
  double used() const noexcept { return used_; }
  double capacity() const noexcept { return capacity_; }

  /// Evicted objects in order, recorded when enabled.
  void record_evictions(bool on) { log_evictions_ = on; }
  const std::vector<ObjectId>& evictions() const noexcept { return evictions_; }

 protected:
  virtual void on_hit(ObjectId object) = 0;
  /// Called for every miss, before any eviction or admission.
  virtual void on_miss(ObjectId /*object*/) {}
  /// Chooses the next victim among cached objects.
  virtual ObjectId victim() = 0;
  virtual void on_insert(ObjectId object) = 0;
  virtual void on_evict(ObjectId object) = 0;
  /// STATIC never changes its contents.
  virtual bool admits() const { return true; }

  void insert(ObjectId object);
  double size_of(ObjectId object) const { return sizes_[object]; }
  std::size_t objects() const noexcept { return sizes_.size(); }

 private:
  std::vector<double> sizes_;
  double capacity_;
  double used_ = 0.0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> cached_;
  bool log_evictions_ = false;
  std::vector<ObjectId> evictions_;
};

/// GDSF priority clock + frequency / size.
double gdsf_priority(double frequency, double size, double clock);

/// Builds an empty cache of the given policy. RANDOM draws victims from a
/// stream derived from `seed`. STATIC is filled at construction with the
/// largest-rate objects, in rate order, until the next one does not fit.
std::unique_ptr<Cache> make_cache(const PolicySpec& spec, const std::vector<double>& sizes, double capacity,
                                  std::uint64_t seed);

/// Replays the trace through the policy and scores hits after warm-up.
BoundScore simulate_policy(const RequestTrace& trace, const Catalog& catalog, const PolicySpec& spec, double capacity,
                           std::uint64_t seed, const ScoreOptions& options = {});

}  // namespace hrbound
