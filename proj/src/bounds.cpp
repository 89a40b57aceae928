#include "hrbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hrbound/hazard_tracker.hpp"
#include "hrbound/knapsack.hpp"

namespace hrbound {

void BoundScore::add(double credit, double size, bool keep) {
  ++requests;
  expected_hits += credit;
  expected_bytes_hit += size * credit;
  requested_bytes += size;
  if (keep) credits.push_back(credit);
}

void BoundScore::finish() {
  hit_probability = requests ? expected_hits / static_cast<double>(requests) : 0.0;
  byte_hit_probability = requested_bytes > 0.0 ? expected_bytes_hit / requested_bytes : 0.0;
}

namespace {

/// Runs the tracker over the trace and calls `score(tracker, event)` for
/// every post-warm-up request with the tracker positioned at event.time-.
template <class Fn>
void drive(const RequestTrace& trace, const Catalog& catalog, double warmup_fraction, Fn&& score) {
  catalog.validate();
  auto tracker = make_tracker(catalog, trace);
  const std::size_t warm = warmup_count(trace.size(), warmup_fraction);
  for (std::size_t k = 0; k < trace.events.size(); ++k) {
    const RequestEvent& ev = trace.events[k];
    if (ev.object >= catalog.size()) throw std::invalid_argument("trace references an object outside the catalog");
    tracker->advance_to(ev.time);
    if (k >= warm) score(*tracker, ev);
    tracker->record_request(ev.object, ev.time);
  }
}

/// Generic per-object hazards, independent of the fast kernels.
void full_hazards(const HazardTracker& tracker, double t, std::vector<double>& out) {
  out.resize(tracker.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = tracker.hazard(static_cast<ObjectId>(i), t);
}

std::vector<BoundScore> finish_all(std::vector<BoundScore> scores) {
  for (auto& s : scores) s.finish();
  return scores;
}

/// Credit for an object whose higher-ranked objects occupy `ahead` bytes.
double fill_credit(double ahead, double size, double capacity) {
  if (ahead + size <= capacity) return 1.0;
  if (ahead < capacity) return (capacity - ahead) / size;
  return 0.0;
}

enum class SizeRule { bytes, objects };

std::vector<BoundScore> variable_sweep(const RequestTrace& trace, const Catalog& catalog,
                                       std::span<const double> capacities, const ScoreOptions& opt, SizeRule rule) {
  for (double b : capacities) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("capacity must be finite and >= 0");
  }
  const auto& sizes = catalog.sizes;
  std::vector<BoundScore> scores(capacities.size());
  std::vector<double> h;
  std::vector<double> values;

  if (opt.mode == RankMode::full) {
    drive(trace, catalog, opt.warmup_fraction, [&](const HazardTracker& tr, const RequestEvent& ev) {
      full_hazards(tr, ev.time, h);
      values.resize(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) values[i] = rule == SizeRule::bytes ? sizes[i] * h[i] : h[i];
      for (std::size_t c = 0; c < capacities.size(); ++c) {
        const double credit =
            capacities[c] > 0.0 ? solve_fractional_knapsack(values, sizes, capacities[c]).fractions[ev.object] : 0.0;
        scores[c].add(credit, sizes[ev.object], opt.keep_credits);
      }
    });
    return finish_all(std::move(scores));
  }

  h.resize(catalog.size());
  drive(trace, catalog, opt.warmup_fraction, [&](const HazardTracker& tr, const RequestEvent& ev) {
    tr.hazards(ev.time, h);
    const ObjectId r = ev.object;
    double ahead = 0.0;
    if (rule == SizeRule::bytes) {
      const double kr = h[r];
      for (std::size_t j = 0; j < r; ++j) ahead += h[j] >= kr ? sizes[j] : 0.0;
      for (std::size_t j = r + 1; j < h.size(); ++j) ahead += h[j] > kr ? sizes[j] : 0.0;
    } else {
      const double kr = h[r] / sizes[r];
      for (std::size_t j = 0; j < r; ++j) ahead += h[j] / sizes[j] >= kr ? sizes[j] : 0.0;
      for (std::size_t j = r + 1; j < h.size(); ++j) ahead += h[j] / sizes[j] > kr ? sizes[j] : 0.0;
    }
    for (std::size_t c = 0; c < capacities.size(); ++c) {
      scores[c].add(fill_credit(ahead, sizes[r], capacities[c]), sizes[r], opt.keep_credits);
    }
  });
  return finish_all(std::move(scores));
}

}  // namespace

std::vector<BoundScore> hr_e_sweep(const RequestTrace& trace, const Catalog& catalog,
                                   std::span<const std::size_t> capacities, const ScoreOptions& opt) {
  const std::size_t n = catalog.size();
  for (std::size_t b : capacities) {
    if (b > n) throw std::invalid_argument("capacity exceeds the number of objects");
  }
  if (!catalog.sizes.empty() &&
      std::any_of(catalog.sizes.begin(), catalog.sizes.end(), [&](double s) { return s != catalog.sizes.front(); }))
    throw std::invalid_argument("equal-size bound needs equal object sizes");

  std::vector<BoundScore> scores(capacities.size());
  auto credit_all = [&](std::size_t ahead, const RequestEvent& ev) {
    for (std::size_t c = 0; c < capacities.size(); ++c) {
      scores[c].add(ahead < capacities[c] ? 1.0 : 0.0, catalog.sizes[ev.object], opt.keep_credits);
    }
  };

  if (opt.mode == RankMode::full) {
    std::vector<double> h;
    std::vector<ObjectId> order(n);
    drive(trace, catalog, opt.warmup_fraction, [&](const HazardTracker& tr, const RequestEvent& ev) {
      full_hazards(tr, ev.time, h);
      std::iota(order.begin(), order.end(), ObjectId{0});
      std::stable_sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) { return h[a] > h[b]; });
      const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), ev.object) - order.begin());
      credit_all(pos, ev);
    });
  } else {
    drive(trace, catalog, opt.warmup_fraction, [&](const HazardTracker& tr, const RequestEvent& ev) {
      credit_all(tr.count_ahead(ev.object, ev.time), ev);
    });
  }
  return finish_all(std::move(scores));
}

BoundScore hr_e_score(const RequestTrace& trace, const Catalog& catalog, std::size_t capacity,
                      const ScoreOptions& options) {
  const std::size_t caps[] = {capacity};
  return std::move(hr_e_sweep(trace, catalog, caps, options).front());
}

std::vector<BoundScore> hr_vb_sweep(const RequestTrace& trace, const Catalog& catalog,
                                    std::span<const double> capacities, const ScoreOptions& options) {
  return variable_sweep(trace, catalog, capacities, options, SizeRule::bytes);
}

BoundScore hr_vb_score(const RequestTrace& trace, const Catalog& catalog, double capacity,
                       const ScoreOptions& options) {
  const double caps[] = {capacity};
  return std::move(hr_vb_sweep(trace, catalog, caps, options).front());
}

std::vector<BoundScore> hr_vc_sweep(const RequestTrace& trace, const Catalog& catalog,
                                    std::span<const double> capacities, const ScoreOptions& options) {
  return variable_sweep(trace, catalog, capacities, options, SizeRule::objects);
}

BoundScore hr_vc_score(const RequestTrace& trace, const Catalog& catalog, double capacity,
                       const ScoreOptions& options) {
  const double caps[] = {capacity};
  return std::move(hr_vc_sweep(trace, catalog, caps, options).front());
}

}  // namespace hrbound
