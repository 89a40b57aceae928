// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hrbound/analytic.hpp"
#include "hrbound/belady.hpp"
#include "hrbound/bounds.hpp"
#include "hrbound/experiment.hpp"
#include "hrbound/gpd_fit.hpp"
#include "hrbound/hazard_tracker.hpp"
#include "hrbound/knapsack.hpp"
#include "hrbound/policies.hpp"
#include "hrbound/popularity.hpp"
#include "hrbound/random.hpp"
#include "hrbound/scenarios.hpp"
#include "hrbound/stats.hpp"
#include "hrbound/traffic.hpp"

using namespace hrbound;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failures while keeping the first few messages.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << " [" << checks_ - failures_ << "/" << checks_ << " checks]";
    if (failures_) s << " failures: " << messages_;
    return {failures_ == 0, s.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string messages_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

const IrtFamily kTableFamilies[] = {IrtFamily::exponential, IrtFamily::generalized_pareto, IrtFamily::uniform,
                                    IrtFamily::hyperexponential, IrtFamily::gamma, IrtFamily::erlang};

/// Per (B, method) hit probabilities across replications.
using Series = std::map<std::pair<double, std::string>, std::vector<double>>;

Series by_cell(const std::vector<ResultRow>& rows) {
  Series s;
  for (const auto& r : rows) s[{r.capacity, r.method}].push_back(r.hit_prob);
  return s;
}

/// mean(ref) - mean(pol) + 2 paired standard errors; nonnegative means bounded.
double dominance_margin(const std::vector<double>& ref, const std::vector<double>& pol) {
  return mean(ref) - mean(pol) + 2.0 * paired_stderr(ref, pol);
}

ScoreOptions with_credits() {
  ScoreOptions o;
  o.keep_credits = true;
  return o;
}

// ---------------------------------------------------------------- criteria

Outcome dominance() {
  Checker c;
  double worst = INFINITY;
  std::string worst_cell;
  const std::vector<std::string> policies{"LRU", "FIFO", "RANDOM", "STATIC", "LFU"};
  for (IrtFamily f : kTableFamilies) {
    ExperimentConfig cfg;
    cfg.id = "dominance";
    cfg.n = 100;
    cfg.family = f;
    cfg.capacities = {5, 10, 20};
    cfg.replications = 20;
    cfg.requests = 100000;
    cfg.methods = {"HR-E"};
    cfg.methods.insert(cfg.methods.end(), policies.begin(), policies.end());
    const auto cells = by_cell(run_experiment(cfg));
    for (double b : cfg.capacities) {
      const auto& ref = cells.at({b, "HR-E"});
      for (const auto& p : policies) {
        const double m = dominance_margin(ref, cells.at({b, p}));
        const std::string cell = std::string(family_name(f)) + " B=" + std::to_string(static_cast<int>(b)) + " " + p;
        if (m < worst) {
          worst = m;
          worst_cell = cell;
        }
        c.expect(m >= 0.0, cell + fmt(" margin %.4g", m));
      }
    }
  }
  return c.outcome("HR-E >= policy - 2 paired SE; tightest " + worst_cell + fmt(" (margin %.4g)", worst));
}

Outcome poisson_specialization() {
  Checker c;
  ExperimentConfig cfg;
  cfg.n = 100;
  cfg.capacities = {5, 10, 20};
  cfg.replications = 20;
  cfg.requests = 100000;
  cfg.methods = {"HR-E", "STATIC"};
  const auto rows = run_experiment(cfg);
  double max_diff = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) max_diff = std::max(max_diff, std::abs(rows[i].hit_prob - rows[i + 1].hit_prob));
  c.expect(max_diff <= 1e-12, fmt("HR-E vs STATIC differ by %.3g", max_diff));

  const auto rates = zipf_rates(100, 0.8, 1.0);
  const Catalog cat = renewal_catalog(IrtFamily::exponential, rates.rates, {});
  const auto trace = generate_requests(cat, 1000000, 2024);
  double worst_z = 0.0;
  for (std::size_t b : {5U, 10U, 20U}) {
    const auto s = hr_e_score(trace, cat, b, with_credits());
    const double z = std::abs(s.hit_probability - poisson_hr(rates, b).hit_probability) / batch_means_stderr(s.credits);
    worst_z = std::max(worst_z, z);
    c.expect(z <= 3.0, fmt("B=%g closed form off by %.2f SE", static_cast<double>(b), z));
  }
  return c.outcome(fmt("max |HR-E - STATIC| = %.2g; max |MC - closed form| = %.2f SE at K=1e6", max_diff, worst_z));
}

OnOffParams random_onoff(std::size_t n, std::mt19937_64& rng, double common_rho = -1.0) {
  std::uniform_real_distribution<double> u(0.05, 5.0);
  OnOffParams p;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng);
    p.alpha.push_back(a);
    p.beta.push_back(common_rho > 0.0 ? a * (1.0 - common_rho) / common_rho : u(rng));
    p.request_rate.push_back(u(rng));
  }
  return p;
}

Outcome onoff_forms() {
  Checker c;
  std::mt19937_64 rng(31);
  double max_gap = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t b = 1 + rng() % 4;
    const auto p = random_onoff(n, rng);
    const auto e = onoff_hr_exact(p, b);
    const auto r = onoff_hr_recursive(p, b);
    const double gap = std::max(std::abs(e.hit_probability - r.hit_probability), std::abs(e.hit_rate - r.hit_rate));
    max_gap = std::max(max_gap, gap);
    c.expect(gap <= 1e-10, fmt("exact vs recursive gap %.3g", gap));

    const double rho = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto q = random_onoff(n, rng, rho);
    const double cr = onoff_hr_common_rho(RateVector{q.request_rate}, rho, b).hit_probability;
    const double g1 = std::abs(cr - onoff_hr_exact(q, b).hit_probability);
    const double g2 = std::abs(cr - onoff_hr_recursive(q, b).hit_probability);
    max_gap = std::max({max_gap, g1, g2});
    c.expect(g1 <= 1e-10 && g2 <= 1e-10, fmt("common-rho gap %.3g / %.3g", g1, g2));
  }

  const Catalog cat = onoff_catalog(50, 7.0, 63.0, 10.0, 2.0, 77);
  const auto& params = std::get<OnOffParams>(cat.traffic);
  const auto trace = generate_requests(cat, 1000000, 78);
  const std::vector<std::size_t> caps{5, 10};
  const auto scores = hr_e_sweep(trace, cat, caps, with_credits());
  double worst_z = 0.0;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const double z = std::abs(scores[i].hit_probability - onoff_hr_recursive(params, caps[i]).hit_probability) /
                     batch_means_stderr(scores[i].credits);
    worst_z = std::max(worst_z, z);
    c.expect(z <= 3.0, fmt("B=%g recursive vs MC %.2f SE", static_cast<double>(caps[i]), z));
  }
  return c.outcome(fmt("max form gap %.2g; recursive vs MC %.2f SE (n=50, K=1e6)", max_gap, worst_z));
}

Outcome mmpp_closed_form() {
  Checker c;
  const Catalog cat = mmpp_catalog(100, 0.8, 1.0, 2e-3, 1.6e-3);
  const auto& params = std::get<MmppParams>(cat.traffic);
  const auto trace = generate_requests(cat, 1000000, 91);
  const std::vector<std::size_t> caps{5, 10, 20};
  const auto scores = hr_e_sweep(trace, cat, caps, with_credits());
  double worst_z = 0.0;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const double z = std::abs(scores[i].hit_probability - mmpp_hr(params, caps[i]).hit_probability) /
                     batch_means_stderr(scores[i].credits);
    worst_z = std::max(worst_z, z);
    c.expect(z <= 3.0, fmt("B=%g closed form vs MC %.2f SE", static_cast<double>(caps[i]), z));
  }
  return c.outcome(fmt("max |MC - closed form| = %.2f SE (n=100, K=1e6)", worst_z));
}

Outcome belady_correctness() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t k = 1 + rng() % 14;
    const std::size_t n = 1 + rng() % 5;
    const std::size_t b = 1 + rng() % 3;
    RequestTrace t;
    std::vector<ObjectId> ids;
    for (std::size_t j = 0; j < k; ++j) {
      ids.push_back(static_cast<ObjectId>(rng() % n));
      t.events.push_back({static_cast<double>(j + 1), ids.back()});
    }
    ScoreOptions o;
    o.warmup_fraction = 0.0;
    const double got = belady_score(t, b, o).expected_hits;
    const auto want = static_cast<double>(brute_force_offline_optimal(ids, b));
    c.expect(got == want, fmt("instance %g: %g vs optimum %g", rep, got, want));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 30.0, fmt("took %.1f s", secs));
  return c.outcome(fmt("200 instances match the exhaustive optimum in %.2f s", secs));
}

Outcome knapsack_chain() {
  Checker c;
  std::mt19937_64 rng(6);
  const PolicyKind kinds[] = {PolicyKind::lru, PolicyKind::fifo, PolicyKind::random,
                              PolicyKind::static_rank, PolicyKind::lfu, PolicyKind::gdsf};
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng() % 14;
    Catalog cat = renewal_catalog(IrtFamily::generalized_pareto, zipf_rates(n, 0.8, 1.0).rates, {0.48, 0.0});
    cat.sizes = sample_sizes_bounded_pareto(n, 1.8, 5.0, 15.0, rng());
    const double capacity = std::uniform_real_distribution<double>(0.2, 0.8)(rng) * cat.total_size();
    const auto trace = generate_requests(cat, 300, rng());
    const std::size_t snap = 20 + rng() % 280;

    auto tracker = make_tracker(cat, trace);
    std::vector<std::unique_ptr<Cache>> caches;
    for (PolicyKind k : kinds) caches.push_back(make_cache({k, cat.average_rates()}, cat.sizes, capacity, rep));
    for (std::size_t j = 0; j < snap; ++j) {
      const auto& e = trace.events[j];
      tracker->advance_to(e.time);
      tracker->record_request(e.object, e.time);
      for (auto& cache : caches) cache->access(e.object);
    }
    const double t = trace.events[snap].time;
    tracker->advance_to(t);
    std::vector<double> h(n);
    tracker->hazards(t, h);

    std::vector<double> bytes(n);
    for (std::size_t i = 0; i < n; ++i) bytes[i] = cat.sizes[i] * h[i];
    for (const auto& values : {h, bytes}) {
      const auto frac = solve_fractional_knapsack(values, cat.sizes, capacity);
      const double best01 = brute_force_knapsack01(values, cat.sizes, capacity);
      double used = 0.0;
      for (std::size_t i = 0; i < n; ++i) used += cat.sizes[i] * frac.fractions[i];
      c.expect(std::abs(used - capacity) <= 1e-9, fmt("capacity gap %.3g", used - capacity));
      c.expect(frac.objective >= best01 - 1e-9 * std::max(1.0, best01), fmt("fractional %.6g < 0-1 %.6g", frac.objective, best01));
      for (std::size_t k = 0; k < caches.size(); ++k) {
        double held = 0.0;
        for (ObjectId o : caches[k]->contents()) held += values[o];
        c.expect(best01 >= held - 1e-9 * std::max(1.0, held),
                 std::string(policy_name(kinds[k])) + fmt(" content %.6g > 0-1 %.6g", held, best01));
      }
    }
  }
  return c.outcome("fractional >= 0-1 optimum >= every policy's cache content on 100 snapshots");
}

Outcome size_one_reduction() {
  Checker c;
  std::vector<std::pair<Catalog, RequestTrace>> cases;
  const auto rates = zipf_rates(50, 0.8, 1.0).rates;
  for (IrtFamily f : kTableFamilies) {
    Catalog cat = renewal_catalog(f, rates, default_shape(f));
    auto t = generate_requests(cat, 20000, 100 + static_cast<int>(f));
    cases.emplace_back(std::move(cat), std::move(t));
  }
  {
    Catalog cat = onoff_catalog(50, 7.0, 63.0, 10.0, 2.0, 8);
    auto t = generate_requests(cat, 20000, 9);
    cases.emplace_back(std::move(cat), std::move(t));
  }
  {
    Catalog cat = mmpp_catalog(50, 0.8, 1.0, 2e-3, 1.6e-3);
    auto t = generate_requests(cat, 20000, 10);
    cases.emplace_back(std::move(cat), std::move(t));
  }
  {
    Catalog cat = snm_catalog(scaled_vod_classes(50));
    auto t = gen_snm(cat, 100.0, 11);
    cases.emplace_back(std::move(cat), std::move(t));
  }
  const std::vector<std::size_t> counts{1, 5, 10, 25, 50};
  const std::vector<double> caps{1, 5, 10, 25, 50};
  for (const auto& [cat, t] : cases) {
    const auto e = hr_e_sweep(t, cat, counts);
    const auto vb = hr_vb_sweep(t, cat, caps);
    const auto vc = hr_vc_sweep(t, cat, caps);
    for (std::size_t i = 0; i < caps.size(); ++i) {
      const std::string cell = std::string(model_name(cat.model())) + " B=" + std::to_string(counts[i]);
      c.expect(vb[i].expected_hits == e[i].expected_hits, cell + " HR-VB differs");
      c.expect(vc[i].expected_hits == e[i].expected_hits, cell + " HR-VC differs");
    }
  }
  return c.outcome("HR-VB and HR-VC expected hits equal HR-E bitwise on unit sizes (9 traffic setups)");
}

Outcome hazard_correctness() {
  Checker c;
  double worst = 0.0;
  const auto rates = zipf_rates(100, 0.8, 1.0).rates;
  for (IrtFamily f : kTableFamilies) {
    for (std::size_t i : {0U, 9U, 99U}) {
      const auto d = from_rate(f, rates[i], default_shape(f));
      const double mean_gap = mean_irt(d);
      const double end = f == IrtFamily::uniform ? 0.99 * d.as<Uniform>().upper : 4.0 * mean_gap;
      const double eps = 1e-6 * mean_gap;
      std::vector<double> h;
      for (int j = 1; j <= 100; ++j) {
        const double t = end * j / 100.0;
        const double fd = (irt_survival(d, t - eps) - irt_survival(d, t + eps)) / (2.0 * eps * irt_survival(d, t));
        h.push_back(hazard_rate(d, t));
        const double rel = std::abs(h.back() - fd) / h.back();
        worst = std::max(worst, rel);
        c.expect(rel < 1e-4, std::string(family_name(f)) + fmt(" t=%.4g rel err %.3g", t, rel));
      }
      bool ok = false;
      switch (f) {
        case IrtFamily::exponential:
          ok = std::all_of(h.begin(), h.end(), [&](double v) { return v == h.front(); });
          break;
        case IrtFamily::generalized_pareto:
        case IrtFamily::hyperexponential:
        case IrtFamily::gamma:
          ok = std::is_sorted(h.rbegin(), h.rend()) && h.back() < h.front();
          break;
        case IrtFamily::uniform:
        case IrtFamily::erlang:
          ok = std::is_sorted(h.begin(), h.end()) && h.back() > h.front();
          break;
      }
      c.expect(ok, std::string(family_name(f)) + " monotonicity does not match its hazard class");
    }
  }
  return c.outcome(fmt("worst finite-difference rel err %.2g; CHR/DHR/IHR shapes hold", worst));
}

Outcome gpd_recovery() {
  int good = 0;
  std::string worst;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng = substream(seed, 0, 99);
    const IrtDistribution d = GeneralizedPareto{0.48, 1.0};
    std::vector<double> x(100000);
    for (auto& v : x) v = sample_irt(d, rng);
    const auto fit = fit_gpd_mle(x);
    if (std::abs(fit.shape - 0.48) <= 0.05 && std::abs(fit.scale - 1.0) <= 0.05) {
      ++good;
    } else {
      worst += fmt(" seed %g: (%.3f, %.3f)", static_cast<double>(seed), fit.shape, fit.scale);
    }
  }
  return {good >= 19, fmt("%g of 20 seeds within 0.05 of (0.48, 1)", good) + worst};
}

Outcome qualitative_trends() {
  Checker c;
  ExperimentConfig dhr;
  dhr.id = "dhr";
  dhr.n = 100;
  dhr.family = IrtFamily::generalized_pareto;
  dhr.capacities = {10};
  dhr.replications = 20;
  dhr.requests = 100000;
  dhr.methods = {"HR-E", "BELADY"};
  const auto a = by_cell(run_experiment(dhr));
  const auto& hr = a.at({10.0, "HR-E"});
  const auto& bel = a.at({10.0, "BELADY"});
  const double diff = mean(hr) - mean(bel);
  const double se = paired_stderr(hr, bel);
  c.expect(diff > 0.0, fmt("HR-E %.4f does not exceed BELADY %.4f (diff %.2f SE)", mean(hr), mean(bel), diff / se));

  ExperimentConfig var;
  var.id = "variable";
  var.n = 100;
  var.family = IrtFamily::generalized_pareto;
  var.size_model = "bounded_pareto";
  var.capacities = {50, 100, 200, 400};
  var.replications = 20;
  var.requests = 100000;
  var.methods = {"HR-VC", "GDSF", "LRU"};
  const auto v = by_cell(run_experiment(var));
  double worst = INFINITY;
  for (double b : var.capacities) {
    for (const char* p : {"GDSF", "LRU"}) {
      const double m = dominance_margin(v.at({b, "HR-VC"}), v.at({b, p}));
      worst = std::min(worst, m);
      c.expect(m >= 0.0, std::string(p) + fmt(" exceeds HR-VC at B=%g (margin %.4g)", b, m));
    }
  }
  const std::string tighter = diff < 0.0 ? " (HR-E is the tighter bound)" : "";
  return c.outcome(fmt("GPD B/n=0.1: HR-E %.4f vs BELADY %.4f", mean(hr), mean(bel)) + tighter +
                   fmt("; HR-VC vs GDSF/LRU tightest margin %.4g", worst));
}

Outcome snm_sanity() {
  Checker c;
  ExperimentConfig cfg;
  cfg.id = "snm";
  cfg.model = "snm";
  cfg.n = 2000;
  cfg.capacities = {100};
  cfg.replications = 20;
  cfg.requests = 0;
  cfg.horizon = 150.0;
  cfg.methods = {"HR-E", "LRU"};
  const auto cells = by_cell(run_experiment(cfg));
  const auto& hr = cells.at({100.0, "HR-E"});
  const auto& lru = cells.at({100.0, "LRU"});
  const double m = dominance_margin(hr, lru);
  c.expect(m >= 0.0, fmt("LRU exceeds HR-E (margin %.4g)", m));

  const Workload w = build_workload(cfg);
  const auto trace = replication_trace(cfg, w, 0);
  const auto& params = std::get<SnmParams>(w.catalog.traffic);
  std::vector<double> counts(params.objects(), 0.0);
  for (const auto& e : trace.events) counts[e.object] += 1.0;
  double worst = 0.0;
  for (std::size_t cls = 0, first = 0; cls < params.classes.size(); first += params.classes[cls].count, ++cls) {
    const double decay = params.classes[cls].decay();
    double seen = 0.0;
    double expected = 0.0;
    for (std::size_t i = first; i < first + params.classes[cls].count; ++i) {
      const Shot& s = trace.shots[i];
      if (!(s.birth < cfg.horizon)) continue;
      seen += counts[i];
      expected += s.volume * -std::expm1(-(cfg.horizon - s.birth) / decay);
    }
    const double rel = std::abs(seen - expected) / expected;
    worst = std::max(worst, rel);
    c.expect(rel <= 0.10, fmt("class %g count off by %.1f%%", static_cast<double>(cls), 100 * rel));
  }
  return c.outcome(fmt("HR-E %.4f vs LRU %.4f (n=2000, B=100)", mean(hr), mean(lru)) +
                   fmt("; class request counts within %.2f%% of integrated intensity", 100 * worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 dominance over online policies", dominance},
      {"2 Poisson specialization", poisson_specialization},
      {"3 on-off form agreement", onoff_forms},
      {"4 MMPP closed form", mmpp_closed_form},
      {"5 Belady correctness", belady_correctness},
      {"6 knapsack chain", knapsack_chain},
      {"7 size-1 reduction", size_one_reduction},
      {"8 hazard correctness", hazard_correctness},
      {"9 GPD MLE recovery", gpd_recovery},
      {"10 qualitative trends", qualitative_trends},
      {"11 shot-noise sanity", snm_sanity},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
