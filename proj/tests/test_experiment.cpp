#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hrbound/config.hpp"
#include "hrbound/errors.hpp"
#include "hrbound/experiment.hpp"
#include "hrbound/stats.hpp"
#include "hrbound/summary.hpp"
#include "hrbound/trace_io.hpp"
#include "hrbound/traffic.hpp"

using namespace hrbound;
namespace fs = std::filesystem;

namespace {

ExperimentConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string config_error_field(const std::string& text) {
  try {
    config_from(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_results_csv(rows, out);
  return out.str();
}

std::string summary_csv_of(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  write_summary_csv(rows, out);
  return out.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hrbound_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ResultRow row(const std::string& method, std::size_t rep, double h) {
  ResultRow r;
  r.experiment = "x";
  r.model = "renewal";
  r.n = 10;
  r.capacity = 2;
  r.method = method;
  r.rep = rep;
  r.hit_prob = h;
  r.byte_hit_prob = h;
  r.expected_hits = h * 100;
  r.requests = 100;
  r.seed = 7;
  return r;
}

}  // namespace

// ------------------------------------------------------------------ stats

TEST(Stats, Basics) {
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mean(x), 2.5);
  EXPECT_NEAR(sample_std(x), std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_NEAR(standard_error(x), std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  const std::vector<double> a{1.0, 2.0, 4.0};
  const std::vector<double> b{0.5, 1.0, 3.0};
  const std::vector<double> d{0.5, 1.0, 1.0};
  EXPECT_NEAR(paired_stderr(a, b), standard_error(d), 1e-15);
  const auto ci = normal_ci95(x);
  EXPECT_NEAR(ci.hi - ci.lo, 2 * 1.96 * standard_error(x), 1e-12);
}

TEST(Stats, BatchMeansOfIndependentDataMatchesPlainStderr) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.3);
  std::vector<double> x(200000);
  for (auto& v : x) v = coin(rng) ? 1.0 : 0.0;
  EXPECT_NEAR(batch_means_stderr(x) / standard_error(x), 1.0, 0.25);
}

// ----------------------------------------------------------------- config

TEST(Config, ParsesEverySection) {
  const auto c = config_from(R"(
; comment
[experiment]
id = demo
seed = 42
replications = 3
warmup = 0.2
methods = HR-E, LRU, FIFO
timing = false
threads = 2

[traffic]
model = renewal
n = 50
family = gpd
shape = 0.3
zipf_exponent = 0.9
total_rate = 2.5

[sizes]
model = unit

[run]
capacities = 5, 10
requests = 5000
)");
  EXPECT_EQ(c.id, "demo");
  EXPECT_EQ(c.seed, 42U);
  EXPECT_EQ(c.replications, 3U);
  EXPECT_DOUBLE_EQ(c.warmup, 0.2);
  EXPECT_EQ(c.methods, (std::vector<std::string>{"HR-E", "LRU", "FIFO"}));
  EXPECT_EQ(c.threads, 2U);
  EXPECT_EQ(c.n, 50U);
  EXPECT_EQ(c.family, IrtFamily::generalized_pareto);
  EXPECT_EQ(c.shape, 0.3);
  EXPECT_DOUBLE_EQ(c.zipf_exponent, 0.9);
  EXPECT_EQ(c.capacities, (std::vector<double>{5, 10}));
  EXPECT_EQ(c.requests, 5000U);
}

TEST(Config, FieldLevelErrors) {
  EXPECT_EQ(config_error_field("[traffic]\nfamly = gpd\n"), "traffic.famly");
  EXPECT_EQ(config_error_field("[bogus]\nx = 1\n"), "bogus.x");
  EXPECT_EQ(config_error_field("[experiment]\nwarmup = 0.7\n"), "experiment.warmup");
  EXPECT_EQ(config_error_field("[experiment]\nseed = abc\n"), "experiment.seed");
  EXPECT_EQ(config_error_field("[experiment]\nmethods = HR-E, MRU\n"), "experiment.methods");
  EXPECT_EQ(config_error_field("[experiment]\nmethods = LRU, LRU\n"), "experiment.methods");
  EXPECT_EQ(config_error_field("[experiment]\nreplications = 0\n"), "experiment.replications");
  EXPECT_EQ(config_error_field("[run]\ncapacities = 0\n"), "run.capacities");
  EXPECT_EQ(config_error_field("[run]\ncapacities = 2.5\n"), "run.capacities");
  EXPECT_EQ(config_error_field("[traffic]\nn = 5\n[run]\ncapacities = 6\n"), "run.capacities");
  EXPECT_EQ(config_error_field("[experiment]\nmethods = HR-E\n[sizes]\nmodel = bounded_pareto\n"), "experiment.methods");
  EXPECT_EQ(config_error_field("[traffic]\nmodel = snm\n[run]\nrequests = 100\n"), "run.horizon");
  EXPECT_EQ(config_error_field("[experiment]\nmethods = ANALYTIC\n[traffic]\nfamily = gpd\n"), "experiment.methods");
  EXPECT_EQ(config_error_field("[experiment]\nmethods = ANALYTIC\n[traffic]\nmodel = trace\ntrace = t.csv\n"),
            "experiment.methods");
  EXPECT_THROW(config_from("[experiment]\nseed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.ini"), ConfigError);
}

// ------------------------------------------------------------- experiment

TEST(RunExperiment, PoissonHrEqualsStatic) {
  ExperimentConfig c;
  c.n = 50;
  c.capacities = {5};
  c.replications = 3;
  c.methods = {"HR-E", "STATIC"};
  c.requests = 20000;
  const auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 6U);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(rows[2 * r].method, "HR-E");
    EXPECT_EQ(rows[2 * r + 1].method, "STATIC");
    EXPECT_EQ(rows[2 * r].rep, r);
    EXPECT_NEAR(rows[2 * r].hit_prob, rows[2 * r + 1].hit_prob, 1e-12);
    EXPECT_EQ(rows[2 * r].requests, 18000U);
  }
  EXPECT_NE(rows[0].seed, rows[2].seed);
}

TEST(RunExperiment, DeterministicAcrossRunsAndThreadCounts) {
  ExperimentConfig c;
  c.n = 40;
  c.family = IrtFamily::generalized_pareto;
  c.capacities = {4, 8};
  c.replications = 4;
  c.methods = {"HR-E", "LRU", "RANDOM", "BELADY"};
  c.requests = 5000;
  c.threads = 1;
  const auto one = csv_of(run_experiment(c));
  EXPECT_EQ(one, csv_of(run_experiment(c)));
  c.threads = 3;
  EXPECT_EQ(one, csv_of(run_experiment(c)));
  c.seed = 2;
  EXPECT_NE(one, csv_of(run_experiment(c)));
}

TEST(RunExperiment, GpdBoundDominatesPolicies) {
  ExperimentConfig c;
  c.n = 100;
  c.family = IrtFamily::generalized_pareto;
  c.capacities = {10};
  c.replications = 20;
  c.methods = {"HR-E", "LRU", "FIFO", "RANDOM"};
  c.requests = 20000;
  const auto summary = summarize(run_experiment(c));
  ASSERT_EQ(summary.size(), 4U);
  EXPECT_EQ(summary[0].verdict, "reference");
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(summary[i].verdict, "bounded") << summary[i].method;
}

TEST(RunExperiment, EveryMethodOnEveryModel) {
  struct Case {
    std::string model;
    std::vector<std::string> methods;
    std::string sizes;
  };
  const std::vector<Case> cases{
      {"renewal", {"HR-E", "HR-VB", "HR-VC", "BELADY", "LRU", "FIFO", "RANDOM", "STATIC", "LFU", "GDSF", "ANALYTIC"}, "unit"},
      {"renewal", {"HR-VB", "HR-VC", "LRU", "GDSF", "STATIC"}, "bounded_pareto"},
      {"onoff", {"HR-E", "ANALYTIC", "LRU"}, "unit"},
      {"mmpp", {"HR-E", "ANALYTIC", "LFU"}, "unit"},
      {"snm", {"HR-E", "LRU", "STATIC"}, "unit"},
  };
  for (const auto& k : cases) {
    ExperimentConfig c;
    c.model = k.model;
    c.methods = k.methods;
    c.size_model = k.sizes;
    c.n = 30;
    c.capacities = {k.sizes == "unit" ? 3.0 : 40.0};
    c.requests = k.model == "snm" ? 0 : 3000;
    c.horizon = k.model == "snm" ? 20.0 : 0.0;
    const auto rows = run_experiment(c);
    ASSERT_EQ(rows.size(), k.methods.size()) << k.model;
    for (const auto& r : rows) {
      EXPECT_GE(r.hit_prob, 0.0) << k.model << ' ' << r.method;
      EXPECT_LE(r.hit_prob, 1.0) << k.model << ' ' << r.method;
      EXPECT_GE(r.byte_hit_prob, 0.0);
      EXPECT_LE(r.byte_hit_prob, 1.0);
      EXPECT_EQ(r.model, k.model);
    }
  }
}

TEST(RunExperiment, AnalyticRowMatchesClosedForm) {
  ExperimentConfig c;
  c.n = 20;
  c.capacities = {4};
  c.methods = {"HR-E", "ANALYTIC"};
  c.requests = 200000;
  const auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_NEAR(rows[0].hit_prob, rows[1].hit_prob, 0.01);
  EXPECT_DOUBLE_EQ(rows[1].expected_hits, rows[1].hit_prob * static_cast<double>(rows[1].requests));
}

// ---------------------------------------------------------------- results

TEST(Results, CsvRoundTripPreservesSummary) {
  ExperimentConfig c;
  c.n = 30;
  c.family = IrtFamily::gamma;
  c.capacities = {3, 6};
  c.replications = 3;
  c.methods = {"HR-E", "LRU"};
  c.requests = 3000;
  const auto rows = run_experiment(c);
  std::stringstream buf(csv_of(rows));
  const auto back = read_results_csv(buf);
  EXPECT_EQ(back, rows);
  EXPECT_EQ(summary_csv_of(summarize(back)), summary_csv_of(summarize(rows)));
  EXPECT_EQ(csv_of(rows).substr(0, csv_of(rows).find('\n')), kResultsHeader);
}

TEST(Results, MalformedRowsAreParseErrors) {
  std::stringstream missing(std::string(kResultsHeader) + "\nx,renewal,10,2,LRU,0,0.5\n");
  EXPECT_THROW(read_results_csv(missing), ParseError);
  std::stringstream bad(std::string(kResultsHeader) + "\nx,renewal,10,2,LRU,0,abc,0.5,50,100,7,0\n");
  EXPECT_THROW(read_results_csv(bad), ParseError);
}

TEST(Summary, SingleRowHasNoSpread) {
  const auto s = summarize({row("HR-E", 0, 0.4)});
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(s[0].reps, 1U);
  EXPECT_DOUBLE_EQ(s[0].mean, 0.4);
  EXPECT_TRUE(std::isnan(s[0].std));
  EXPECT_DOUBLE_EQ(s[0].ci_lo, 0.4);
  EXPECT_DOUBLE_EQ(s[0].ci_hi, 0.4);
  EXPECT_NE(summary_csv_of(s).find("n/a"), std::string::npos);
}

TEST(Summary, ConfidenceIntervalHalfWidth) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.5);
  std::vector<ResultRow> rows;
  std::vector<double> h;
  for (std::size_t r = 0; r < 20; ++r) {
    double hits = 0;
    for (int k = 0; k < 100; ++k) hits += coin(rng) ? 1 : 0;
    h.push_back(hits / 100);
    rows.push_back(row("LRU", r, h.back()));
  }
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 1U);
  EXPECT_NEAR((s[0].ci_hi - s[0].ci_lo) / 2, 1.96 * sample_std(h) / std::sqrt(20.0), 1e-12);
  EXPECT_EQ(s[0].verdict, "-");
}

TEST(Summary, VerdictAgainstReference) {
  std::vector<ResultRow> rows;
  for (std::size_t r = 0; r < 5; ++r) {
    rows.push_back(row("HR-E", r, 0.5 + 0.01 * r));
    rows.push_back(row("LRU", r, 0.4 + 0.01 * r));
    rows.push_back(row("FIFO", r, 0.6 + 0.01 * r));
  }
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 3U);
  EXPECT_EQ(s[0].verdict, "reference");
  EXPECT_EQ(s[1].verdict, "bounded");
  EXPECT_EQ(s[2].verdict, "exceeds");
  const auto dir = scratch_dir("summary");
  write_summary_files(s, dir);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));
}

// -------------------------------------------------------------- real trace

TEST(FitRealTrace, RecoversParametersAndFiltersObjects) {
  RenewalTraffic r;
  r.irts = {GeneralizedPareto{0.48, 1.0}, GeneralizedPareto{0.2, 1.0}, GeneralizedPareto{0.05, 1.0}};
  const Catalog c{{1, 1, 1}, r};
  const auto t = gen_renewal(c, 25000.0, 11);
  std::vector<std::pair<double, std::string>> lines;
  for (const auto& e : t.events) lines.emplace_back(e.time, std::to_string(e.object + 1));
  for (int k = 0; k < 99; ++k) lines.emplace_back(10.0 + 50.0 * k + 0.123, "4");
  for (int k = 0; k < 150; ++k) lines.emplace_back(777.0, "5");
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const auto dir = scratch_dir("fit");
  {
    std::ofstream out(dir / "trace.csv");
    out << "timestamp,object_id\n";
    for (const auto& [time, id] : lines) out << format_double(time) << ',' << id << '\n';
  }
  const auto fitted = fit_real_trace(dir / "trace.csv", 100);
  ASSERT_EQ(fitted.catalog.size(), 3U);
  EXPECT_EQ(fitted.original_ids, (std::vector<std::string>{"1", "2", "3"}));
  const double shapes[] = {0.48, 0.2, 0.05};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& d = std::get<RenewalTraffic>(fitted.catalog.traffic).irts[i].as<GeneralizedPareto>();
    EXPECT_NEAR(d.shape, shapes[i], 0.05) << i;
    EXPECT_NEAR(d.scale, 1.0, 0.05) << i;
  }
  ASSERT_EQ(fitted.objects.size(), 5U);
  EXPECT_FALSE(fitted.objects[3].fit.has_value());
  EXPECT_EQ(fitted.objects[3].requests, 99U);
  EXPECT_FALSE(fitted.objects[4].fit.has_value());
  EXPECT_FALSE(fitted.warnings.empty());
  EXPECT_EQ(fitted.trace.size(), t.size());

  EXPECT_THROW(fit_real_trace(dir / "trace.csv", 1000000), InsufficientData);
}
