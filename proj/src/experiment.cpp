#include "hrbound/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "hrbound/analytic.hpp"
#include "hrbound/belady.hpp"
#include "hrbound/bounds.hpp"
#include "hrbound/errors.hpp"
#include "hrbound/policies.hpp"
#include "hrbound/popularity.hpp"
#include "hrbound/random.hpp"
#include "hrbound/scenarios.hpp"
#include "hrbound/trace_io.hpp"
#include "hrbound/traffic.hpp"

namespace hrbound {

// ------------------------------------------------------------ results CSV

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.model << ',' << r.n << ',' << format_double(r.capacity) << ',' << r.method << ','
        << r.rep << ',' << format_double(r.hit_prob) << ',' << format_double(r.byte_hit_prob) << ','
        << format_double(r.expected_hits) << ',' << r.requests << ',' << r.seed << ',' << format_double(r.wall_ms)
        << '\n';
  }
}

void write_results_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_results_csv(rows, out);
}

namespace {

template <class T>
T field_number(const std::string& s, std::size_t line, const char* name) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, std::string("malformed ") + name + " '" + s + "'");
  return v;
}

}  // namespace

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("experiment,", 0) == 0) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
      f.push_back(line.substr(start, pos - start));
    }
    f.push_back(line.substr(start));
    if (f.size() != 12) throw ParseError(line_no, "expected 12 fields, got " + std::to_string(f.size()));
    ResultRow r;
    r.experiment = f[0];
    r.model = f[1];
    r.n = field_number<std::size_t>(f[2], line_no, "n");
    r.capacity = field_number<double>(f[3], line_no, "B");
    r.method = f[4];
    r.rep = field_number<std::size_t>(f[5], line_no, "rep");
    r.hit_prob = field_number<double>(f[6], line_no, "hit_prob");
    r.byte_hit_prob = field_number<double>(f[7], line_no, "byte_hit_prob");
    r.expected_hits = field_number<double>(f[8], line_no, "expected_hits");
    r.requests = field_number<std::size_t>(f[9], line_no, "K");
    r.seed = field_number<std::uint64_t>(f[10], line_no, "seed");
    r.wall_ms = field_number<double>(f[11], line_no, "wall_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_results_csv(in);
}

// ------------------------------------------------------------ real traces

FittedTrace fit_real_trace(const std::filesystem::path& path, std::size_t threshold) {
  TraceLoadOptions raw_options;
  raw_options.break_ties = false;
  LoadedTrace loaded = load_trace_csv(path, raw_options);
  const std::size_t n_all = loaded.original_ids.size();

  std::vector<std::vector<double>> times(n_all);
  for (const auto& e : loaded.trace.events) times[e.object].push_back(e.time);

  FittedTrace out;
  out.warnings = loaded.warnings;
  std::vector<ObjectId> new_id(n_all, static_cast<ObjectId>(-1));
  RenewalTraffic traffic;
  std::vector<double> sizes;
  for (std::size_t i = 0; i < n_all; ++i) {
    ObjectFit of;
    of.original_id = loaded.original_ids[i];
    of.requests = times[i].size();
    if (of.requests < threshold) {
      of.note = "below request threshold";
      out.objects.push_back(std::move(of));
      continue;
    }
    std::vector<double> gaps;
    for (std::size_t k = 1; k < times[i].size(); ++k) {
      const double g = times[i][k] - times[i][k - 1];
      if (g > 0.0) gaps.push_back(g);
      else ++of.zero_gaps;
    }
    try {
      of.fit = fit_gpd_mle(gaps);
      of.note = of.fit->converged ? "ok" : "moment estimate";
    } catch (const std::exception& e) {
      of.note = std::string("unfittable: ") + e.what();
      out.warnings.push_back("object " + of.original_id + " excluded (" + e.what() + ")");
    }
    if (of.fit) {
      new_id[i] = static_cast<ObjectId>(traffic.irts.size());
      traffic.irts.push_back(of.fit->distribution());
      sizes.push_back(loaded.catalog.sizes[i]);
      out.original_ids.push_back(of.original_id);
      out.request_counts.push_back(static_cast<double>(of.requests));
    }
    out.objects.push_back(std::move(of));
  }
  if (traffic.irts.empty()) throw InsufficientData("no object qualifies for fitting");

  out.catalog = Catalog{std::move(sizes), std::move(traffic)};
  for (const auto& e : loaded.trace.events) {
    if (new_id[e.object] != static_cast<ObjectId>(-1)) out.trace.events.push_back({e.time, new_id[e.object]});
  }
  canonicalize(out.trace.events);
  out.trace.start = loaded.trace.start;
  out.trace.horizon = out.trace.events.back().time;
  return out;
}

// ------------------------------------------------------------ experiments

Workload build_workload(const ExperimentConfig& c) {
  Workload w;
  if (c.model == "trace") {
    FittedTrace fitted = fit_real_trace(c.trace_path, c.fit_threshold);
    w.catalog = std::move(fitted.catalog);
    if (c.size_model == "unit") std::fill(w.catalog.sizes.begin(), w.catalog.sizes.end(), 1.0);
    w.static_rates = std::move(fitted.request_counts);
    w.fixed_trace = std::move(fitted.trace);
    return w;
  }
  if (c.model == "renewal") {
    const ShapeParams shape{c.shape.value_or(default_shape(c.family).shape), c.scv};
    w.catalog = renewal_catalog(c.family, zipf_rates(c.n, c.zipf_exponent, c.total_rate).rates, shape);
  } else if (c.model == "onoff") {
    w.catalog = onoff_catalog(c.n, c.t_on, c.t_off, c.volume_mean, c.volume_shape, c.seed);
  } else if (c.model == "mmpp") {
    w.catalog = mmpp_catalog(c.n, c.zipf_exponent, c.total_rate, c.mmpp_alpha, c.mmpp_beta);
  } else {
    w.catalog = snm_catalog(scaled_vod_classes(c.n));
  }
  if (c.size_model == "bounded_pareto") {
    w.catalog.sizes = sample_sizes_bounded_pareto(w.catalog.size(), c.size_shape, c.size_min, c.size_max, c.seed);
  }
  w.catalog.validate();
  w.static_rates = w.catalog.average_rates();
  return w;
}

RequestTrace replication_trace(const ExperimentConfig& c, const Workload& w, std::size_t rep) {
  if (w.fixed_trace) return *w.fixed_trace;
  const std::uint64_t seed = derive_seed(c.seed, rep);
  if (c.model == "snm" || c.requests == 0) return generate(w.catalog, c.horizon, seed);
  return generate_requests(w.catalog, c.requests, seed);
}

namespace {

AnalyticResult analytic_for(const ExperimentConfig& c, const Workload& w, std::size_t capacity) {
  switch (w.catalog.model()) {
    case TrafficModel::renewal: {
      RateVector rates{w.catalog.average_rates(), false};
      return poisson_hr(rates, capacity);
    }
    case TrafficModel::onoff:
      return onoff_hr_recursive(std::get<OnOffParams>(w.catalog.traffic), capacity);
    case TrafficModel::mmpp:
      return mmpp_hr(std::get<MmppParams>(w.catalog.traffic), capacity);
    case TrafficModel::snm:
      break;
  }
  throw ConfigError("experiment.methods", "ANALYTIC is not available for " + c.model + " traffic");
}

std::vector<ResultRow> run_replication(const ExperimentConfig& c, const Workload& w, std::size_t rep) {
  const RequestTrace trace = replication_trace(c, w, rep);
  const std::uint64_t seed = derive_seed(c.seed, rep);
  const Catalog& cat = w.catalog;
  ScoreOptions opt;
  opt.warmup_fraction = c.warmup;

  std::vector<ResultRow> rows;
  auto emit = [&](const std::string& method, double capacity, const BoundScore& s, double ms) {
    ResultRow r;
    r.experiment = c.id;
    r.model = c.model;
    r.n = cat.size();
    r.capacity = capacity;
    r.method = method;
    r.rep = rep;
    r.hit_prob = s.hit_probability;
    r.byte_hit_prob = s.byte_hit_probability;
    r.expected_hits = s.expected_hits;
    r.requests = s.requests;
    r.seed = seed;
    r.wall_ms = c.timing ? ms : 0.0;
    rows.push_back(std::move(r));
  };

  std::vector<std::size_t> counts;
  for (double b : c.capacities) counts.push_back(static_cast<std::size_t>(b));

  for (const auto& m : c.methods) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<BoundScore> scores;
    if (m == "HR-E") {
      scores = hr_e_sweep(trace, cat, counts, opt);
    } else if (m == "HR-VB") {
      scores = hr_vb_sweep(trace, cat, c.capacities, opt);
    } else if (m == "HR-VC") {
      scores = hr_vc_sweep(trace, cat, c.capacities, opt);
    } else if (m == "BELADY") {
      for (std::size_t b : counts) scores.push_back(belady_score(trace, cat, b, opt));
    } else if (m == "ANALYTIC") {
      const std::size_t k = trace.size() - warmup_count(trace.size(), c.warmup);
      for (std::size_t b : counts) {
        const AnalyticResult a = analytic_for(c, w, b);
        BoundScore s;
        s.requests = k;
        s.hit_probability = a.hit_probability;
        s.byte_hit_probability = a.hit_probability;
        s.expected_hits = a.hit_probability * static_cast<double>(k);
        scores.push_back(s);
      }
    } else {
      PolicySpec spec{*parse_policy(m), w.static_rates};
      for (double b : c.capacities) scores.push_back(simulate_policy(trace, cat, spec, b, seed, opt));
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() /
        static_cast<double>(c.capacities.size());
    for (std::size_t j = 0; j < scores.size(); ++j) emit(m, c.capacities[j], scores[j], ms);
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& c) {
  validate_config(c);
  const Workload w = build_workload(c);
  for (const auto& m : c.methods) {
    if (m == "HR-E") {
      for (double b : c.capacities) {
        if (b > static_cast<double>(w.catalog.size()))
          throw ConfigError("run.capacities", "capacity exceeds the number of objects");
      }
    }
  }

  const std::size_t reps = c.replications;
  std::vector<std::vector<ResultRow>> per_rep(reps);
  std::vector<std::exception_ptr> errors(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < reps;) {
      try {
        per_rep[r] = run_replication(c, w, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  std::size_t threads = c.threads ? c.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, reps);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<ResultRow> rows;
  for (auto& v : per_rep) rows.insert(rows.end(), v.begin(), v.end());
  auto method_index = [&](const std::string& m) {
    return std::find(c.methods.begin(), c.methods.end(), m) - c.methods.begin();
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const ResultRow& a, const ResultRow& b) {
    if (a.rep != b.rep) return a.rep < b.rep;
    if (a.capacity != b.capacity) return a.capacity < b.capacity;
    return method_index(a.method) < method_index(b.method);
  });
  return rows;
}

}  // namespace hrbound
