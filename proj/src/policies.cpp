#include "hrbound/policies.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "hrbound/random.hpp"

namespace hrbound {

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::lru:
      return "LRU";
    case PolicyKind::fifo:
      return "FIFO";
    case PolicyKind::random:
      return "RANDOM";
    case PolicyKind::static_rank:
      return "STATIC";
    case PolicyKind::lfu:
      return "LFU";
    case PolicyKind::gdsf:
      return "GDSF";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (auto k : {PolicyKind::lru, PolicyKind::fifo, PolicyKind::random, PolicyKind::static_rank, PolicyKind::lfu,
                 PolicyKind::gdsf}) {
    if (policy_name(k) == name) return k;
  }
  return std::nullopt;
}

double gdsf_priority(double frequency, double size, double clock) {
  if (!(size > 0.0)) throw std::invalid_argument("GDSF size must be > 0");
  return clock + frequency / size;
}

Cache::Cache(std::vector<double> sizes, double capacity)
    : sizes_(std::move(sizes)), capacity_(capacity), cached_(sizes_.size(), 0) {
  if (!(capacity >= 0.0)) throw std::invalid_argument("cache capacity must be >= 0");
}

bool Cache::access(ObjectId object) {
  if (object >= sizes_.size()) throw std::out_of_range("object id outside the catalog");
  if (cached_[object]) {
    on_hit(object);
    return true;
  }
  on_miss(object);
  if (!admits() || sizes_[object] > capacity_) return false;
  while (used_ + sizes_[object] > capacity_) {
    const ObjectId v = victim();
    on_evict(v);
    cached_[v] = 0;
    used_ -= sizes_[v];
    // Reset accumulated rounding once the cache is empty.
    if (--count_ == 0) used_ = 0.0;
    if (log_evictions_) evictions_.push_back(v);
  }
  insert(object);
  return false;
}

void Cache::insert(ObjectId object) {
  cached_[object] = 1;
  ++count_;
  used_ += sizes_[object];
  on_insert(object);
}

std::vector<ObjectId> Cache::contents() const {
  std::vector<ObjectId> out;
  for (std::size_t i = 0; i < cached_.size(); ++i) {
    if (cached_[i]) out.push_back(static_cast<ObjectId>(i));
  }
  return out;
}

namespace {

constexpr ObjectId kNil = static_cast<ObjectId>(-1);

/// Doubly linked queue over object ids: head is the next victim.
class QueueCache : public Cache {
 public:
  QueueCache(std::vector<double> sizes, double capacity, bool move_on_hit)
      : Cache(std::move(sizes), capacity), prev_(objects(), kNil), next_(objects(), kNil), move_on_hit_(move_on_hit) {}

 protected:
  void on_hit(ObjectId o) override {
    if (!move_on_hit_) return;
    unlink(o);
    push_back(o);
  }
  ObjectId victim() override { return head_; }
  void on_insert(ObjectId o) override { push_back(o); }
  void on_evict(ObjectId o) override { unlink(o); }

 private:
  void push_back(ObjectId o) {
    prev_[o] = tail_;
    next_[o] = kNil;
    if (tail_ != kNil) next_[tail_] = o;
    tail_ = o;
    if (head_ == kNil) head_ = o;
  }
  void unlink(ObjectId o) {
    if (prev_[o] != kNil) next_[prev_[o]] = next_[o];
    else head_ = next_[o];
    if (next_[o] != kNil) prev_[next_[o]] = prev_[o];
    else tail_ = prev_[o];
    prev_[o] = next_[o] = kNil;
  }

  std::vector<ObjectId> prev_;
  std::vector<ObjectId> next_;
  ObjectId head_ = kNil;
  ObjectId tail_ = kNil;
  bool move_on_hit_;
};

class RandomCache : public Cache {
 public:
  RandomCache(std::vector<double> sizes, double capacity, std::uint64_t seed)
      : Cache(std::move(sizes), capacity), slot_(objects(), 0), rng_(substream(seed, 0, 11)) {}

 protected:
  void on_hit(ObjectId) override {}
  ObjectId victim() override {
    std::uniform_int_distribution<std::size_t> pick(0, members_.size() - 1);
    return members_[pick(rng_)];
  }
  void on_insert(ObjectId o) override {
    slot_[o] = members_.size();
    members_.push_back(o);
  }
  void on_evict(ObjectId o) override {
    const std::size_t s = slot_[o];
    members_[s] = members_.back();
    slot_[members_[s]] = s;
    members_.pop_back();
  }

 private:
  std::vector<ObjectId> members_;
  std::vector<std::size_t> slot_;
  Rng rng_;
};

class StaticCache : public Cache {
 public:
  StaticCache(std::vector<double> sizes, double capacity, const std::vector<double>& rates)
      : Cache(std::move(sizes), capacity) {
    if (rates.size() != objects()) throw std::invalid_argument("STATIC needs one rate per object");
    std::vector<ObjectId> order(objects());
    std::iota(order.begin(), order.end(), ObjectId{0});
    std::stable_sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) { return rates[a] > rates[b]; });
    for (ObjectId o : order) {
      if (used() + size_of(o) > this->capacity()) break;
      insert(o);
    }
  }

 protected:
  void on_hit(ObjectId) override {}
  ObjectId victim() override { throw std::logic_error("STATIC never evicts"); }
  void on_insert(ObjectId) override {}
  void on_evict(ObjectId) override {}
  bool admits() const override { return false; }
};

/// Ideal LFU: frequencies persist across evictions; ties go to the least
/// recently used object.
class LfuCache : public Cache {
 public:
  LfuCache(std::vector<double> sizes, double capacity)
      : Cache(std::move(sizes), capacity), freq_(objects(), 0), stamp_(objects(), 0) {}

 protected:
  void on_hit(ObjectId o) override {
    order_.erase(key(o));
    touch(o);
    order_.insert(key(o));
  }
  void on_miss(ObjectId o) override { touch(o); }
  ObjectId victim() override { return std::get<2>(*order_.begin()); }
  void on_insert(ObjectId o) override { order_.insert(key(o)); }
  void on_evict(ObjectId o) override { order_.erase(key(o)); }

 private:
  using Key = std::tuple<std::uint64_t, std::uint64_t, ObjectId>;
  Key key(ObjectId o) const { return {freq_[o], stamp_[o], o}; }
  void touch(ObjectId o) {
    ++freq_[o];
    stamp_[o] = ++clock_;
  }

  std::vector<std::uint64_t> freq_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t clock_ = 0;
  std::set<Key> order_;
};

/// Greedy-Dual-Size-Frequency with an aging clock. Frequencies restart at 1
/// when an evicted object is readmitted.
class GdsfCache : public Cache {
 public:
  GdsfCache(std::vector<double> sizes, double capacity)
      : Cache(std::move(sizes), capacity), freq_(objects(), 0.0), prio_(objects(), 0.0) {}

 protected:
  void on_hit(ObjectId o) override {
    order_.erase({prio_[o], o});
    freq_[o] += 1.0;
    prio_[o] = gdsf_priority(freq_[o], size_of(o), clock_);
    order_.insert({prio_[o], o});
  }
  ObjectId victim() override { return order_.begin()->second; }
  void on_insert(ObjectId o) override {
    freq_[o] = 1.0;
    prio_[o] = gdsf_priority(freq_[o], size_of(o), clock_);
    order_.insert({prio_[o], o});
  }
  void on_evict(ObjectId o) override {
    clock_ = prio_[o];
    order_.erase({prio_[o], o});
    freq_[o] = 0.0;
  }

 private:
  std::vector<double> freq_;
  std::vector<double> prio_;
  double clock_ = 0.0;
  std::set<std::pair<double, ObjectId>> order_;
};

}  // namespace

std::unique_ptr<Cache> make_cache(const PolicySpec& spec, const std::vector<double>& sizes, double capacity,
                                  std::uint64_t seed) {
  switch (spec.kind) {
    case PolicyKind::lru:
      return std::make_unique<QueueCache>(sizes, capacity, true);
    case PolicyKind::fifo:
      return std::make_unique<QueueCache>(sizes, capacity, false);
    case PolicyKind::random:
      return std::make_unique<RandomCache>(sizes, capacity, seed);
    case PolicyKind::static_rank:
      return std::make_unique<StaticCache>(sizes, capacity, spec.static_rates);
    case PolicyKind::lfu:
      return std::make_unique<LfuCache>(sizes, capacity);
    case PolicyKind::gdsf:
      return std::make_unique<GdsfCache>(sizes, capacity);
  }
  throw std::invalid_argument("unknown policy");
}

BoundScore simulate_policy(const RequestTrace& trace, const Catalog& catalog, const PolicySpec& spec, double capacity,
                           std::uint64_t seed, const ScoreOptions& options) {
  auto cache = make_cache(spec, catalog.sizes, capacity, seed);
  const std::size_t warm = warmup_count(trace.size(), options.warmup_fraction);
  BoundScore score;
  for (std::size_t k = 0; k < trace.events.size(); ++k) {
    const ObjectId r = trace.events[k].object;
    const bool hit = cache->access(r);
    if (k >= warm) score.add(hit ? 1.0 : 0.0, catalog.sizes[r], options.keep_credits);
  }
  score.finish();
  return score;
}

}  // namespace hrbound
