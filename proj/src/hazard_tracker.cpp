#include "hrbound/hazard_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hrbound {

void HazardTracker::hazards(double t, std::span<double> out) const {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = hazard(static_cast<ObjectId>(i), t);
}

std::size_t HazardTracker::count_ahead(ObjectId object, double t) const {
  hazards(t, scratch_);
  return count_ahead_in(scratch_, object);
}

std::size_t HazardTracker::count_ahead_in(std::span<const double> h, ObjectId object) {
  const double hr = h[object];
  std::size_t ahead = 0;
  for (std::size_t j = 0; j < object; ++j) ahead += h[j] >= hr ? 1 : 0;
  for (std::size_t j = object + 1; j < h.size(); ++j) ahead += h[j] > hr ? 1 : 0;
  return ahead;
}

namespace {

/// Position of each object when sorted by (key descending, id ascending).
std::vector<std::size_t> rank_positions(const std::vector<double>& key) {
  std::vector<std::size_t> order(key.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  std::vector<std::size_t> pos(key.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
  return pos;
}

// ---------------------------------------------------------------- renewal

class RenewalTracker final : public HazardTracker {
 public:
  RenewalTracker(const RenewalTraffic& traffic, double start)
      : HazardTracker(traffic.irts.size()), irts_(traffic.irts), last_(traffic.irts.size(), start) {
    const std::size_t n = irts_.size();
    const IrtFamily f = irts_.front().family();
    homogeneous_ = std::all_of(irts_.begin(), irts_.end(), [f](const IrtDistribution& d) { return d.family() == f; });
    family_ = f;
    if (!homogeneous_) return;
    a_.resize(n);
    b_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = irts_[i].params();
      switch (f) {
        case IrtFamily::exponential:
          a_[i] = std::get<Exponential>(p).rate;
          break;
        case IrtFamily::generalized_pareto:
          a_[i] = std::get<GeneralizedPareto>(p).shape;
          b_[i] = std::get<GeneralizedPareto>(p).scale;
          break;
        case IrtFamily::uniform:
          a_[i] = std::get<Uniform>(p).upper;
          break;
        case IrtFamily::hyperexponential:
          break;
        case IrtFamily::gamma:
          a_[i] = std::get<Gamma>(p).shape;
          b_[i] = std::get<Gamma>(p).scale;
          break;
        case IrtFamily::erlang:
          a_[i] = std::get<Erlang>(p).shape;
          b_[i] = std::get<Erlang>(p).rate;
          break;
      }
    }
    if (f == IrtFamily::exponential) static_rank_ = rank_positions(a_);
    if (f == IrtFamily::gamma) {
      all_half_gamma_ = std::all_of(a_.begin(), a_.end(), [](double k) { return k == 0.5; });
    }
  }

  double hazard(ObjectId i, double t) const override {
    const double age = t - last_[i];
    if (irts_[i].family() == IrtFamily::uniform && age >= irts_[i].as<Uniform>().upper) return kHazardCap;
    return hazard_rate(irts_[i], age);
  }

  void hazards(double t, std::span<double> out) const override {
    if (!homogeneous_) {
      HazardTracker::hazards(t, out);
      return;
    }
    const std::size_t n = out.size();
    const double* last = last_.data();
    switch (family_) {
      case IrtFamily::exponential:
        std::copy(a_.begin(), a_.end(), out.begin());
        break;
      case IrtFamily::generalized_pareto:
        for (std::size_t i = 0; i < n; ++i) out[i] = detail::gpd_hazard(a_[i], b_[i], t - last[i]);
        break;
      case IrtFamily::uniform:
        for (std::size_t i = 0; i < n; ++i) {
          const double age = t - last[i];
          out[i] = age >= a_[i] ? kHazardCap : detail::uniform_hazard(a_[i], age);
        }
        break;
      case IrtFamily::hyperexponential:
        for (std::size_t i = 0; i < n; ++i) {
          out[i] = detail::hyperexp_hazard(irts_[i].as<Hyperexponential>(), t - last[i]);
        }
        break;
      case IrtFamily::gamma:
        if (all_half_gamma_) {
          for (std::size_t i = 0; i < n; ++i) out[i] = detail::gamma_half_hazard(b_[i], t - last[i]);
        } else {
          for (std::size_t i = 0; i < n; ++i) out[i] = detail::gamma_hazard(a_[i], b_[i], t - last[i]);
        }
        break;
      case IrtFamily::erlang:
        for (std::size_t i = 0; i < n; ++i) {
          out[i] = detail::erlang_hazard(static_cast<int>(a_[i]), b_[i], t - last[i]);
        }
        break;
    }
  }

  std::size_t count_ahead(ObjectId object, double t) const override {
    if (!static_rank_.empty()) return static_rank_[object];
    return HazardTracker::count_ahead(object, t);
  }

  void record_request(ObjectId object, double t) override { last_[object] = t; }

 private:
  const std::vector<IrtDistribution>& irts_;
  std::vector<double> last_;
  bool homogeneous_ = false;
  bool all_half_gamma_ = false;
  IrtFamily family_ = IrtFamily::exponential;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<std::size_t> static_rank_;
};

// ----------------------------------------------------------------- on-off

/// Fenwick tree of 0/1 flags.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t pos, int delta) {
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  /// Sum over positions [0, pos).
  std::size_t prefix(std::size_t pos) const {
    long long s = 0;
    for (std::size_t i = pos; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return static_cast<std::size_t>(s);
  }

 private:
  std::vector<int> tree_;
};

class OnOffTracker final : public HazardTracker {
 public:
  OnOffTracker(const OnOffParams& p, const RequestTrace& trace)
      : HazardTracker(p.size()), rate_(p.request_rate), switches_(trace.switches), fenwick_(p.size()) {
    if (trace.initial_on.size() != p.size())
      throw std::invalid_argument("on-off tracker needs the initial on/off state of every object");
    pos_ = rank_positions(rate_);
    on_.assign(trace.initial_on.begin(), trace.initial_on.end());
    for (std::size_t i = 0; i < on_.size(); ++i) {
      if (on_[i]) fenwick_.add(pos_[i], 1);
    }
  }

  void advance_to(double t) override {
    while (next_ < switches_.size() && switches_[next_].time < t) {
      const OnOffSwitch& s = switches_[next_++];
      const std::uint8_t v = s.on ? 1 : 0;
      if (on_[s.object] == v) continue;
      on_[s.object] = v;
      fenwick_.add(pos_[s.object], v ? 1 : -1);
    }
  }

  double hazard(ObjectId i, double /*t*/) const override { return on_[i] ? rate_[i] : 0.0; }

  std::size_t count_ahead(ObjectId object, double t) const override {
    if (on_[object]) return fenwick_.prefix(pos_[object]);
    return HazardTracker::count_ahead(object, t);
  }

 private:
  const std::vector<double>& rate_;
  const std::vector<OnOffSwitch>& switches_;
  std::size_t next_ = 0;
  std::vector<std::uint8_t> on_;
  std::vector<std::size_t> pos_;
  Fenwick fenwick_;
};

// ------------------------------------------------------------------- MMPP

class MmppTracker final : public HazardTracker {
 public:
  MmppTracker(const MmppParams& p, const RequestTrace& trace)
      : HazardTracker(p.objects()), rates_(p.request_rates), path_(trace.state_path) {
    if (path_.empty()) throw std::invalid_argument("MMPP tracker needs the environment state path");
    for (const auto& row : rates_) rank_.push_back(rank_positions(row));
    state_ = path_.front().state;
  }

  void advance_to(double t) override {
    while (next_ < path_.size() && path_[next_].time < t) state_ = path_[next_++].state;
  }

  double hazard(ObjectId i, double /*t*/) const override { return rates_[state_][i]; }

  std::size_t count_ahead(ObjectId object, double /*t*/) const override { return rank_[state_][object]; }

 private:
  const std::vector<std::vector<double>>& rates_;
  const std::vector<StateChange>& path_;
  std::vector<std::vector<std::size_t>> rank_;
  std::size_t next_ = 1;
  std::uint32_t state_ = 0;
};

// ------------------------------------------------------------- shot noise

class SnmTracker final : public HazardTracker {
 public:
  SnmTracker(const SnmParams& p, const RequestTrace& trace) : HazardTracker(p.objects()), shots_(trace.shots) {
    if (shots_.size() != p.objects()) throw std::invalid_argument("shot-noise tracker needs one shot per object");
    decay_.reserve(p.objects());
    for (const auto& c : p.classes) decay_.insert(decay_.end(), c.count, c.decay());
  }

  double hazard(ObjectId i, double t) const override {
    const Shot& s = shots_[i];
    if (!(t >= s.birth)) return 0.0;
    return s.volume / decay_[i] * std::exp(-(t - s.birth) / decay_[i]);
  }

  void hazards(double t, std::span<double> out) const override {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = hazard(static_cast<ObjectId>(i), t);
  }

 private:
  const std::vector<Shot>& shots_;
  std::vector<double> decay_;
};

}  // namespace

std::unique_ptr<HazardTracker> make_tracker(const Catalog& catalog, const RequestTrace& trace) {
  switch (catalog.model()) {
    case TrafficModel::renewal: {
      const auto& r = std::get<RenewalTraffic>(catalog.traffic);
      if (r.irts.empty()) throw std::invalid_argument("empty catalog");
      return std::make_unique<RenewalTracker>(r, trace.start);
    }
    case TrafficModel::onoff:
      return std::make_unique<OnOffTracker>(std::get<OnOffParams>(catalog.traffic), trace);
    case TrafficModel::mmpp:
      return std::make_unique<MmppTracker>(std::get<MmppParams>(catalog.traffic), trace);
    case TrafficModel::snm:
      return std::make_unique<SnmTracker>(std::get<SnmParams>(catalog.traffic), trace);
  }
  throw std::invalid_argument("unknown traffic model");
}

}  // namespace hrbound
