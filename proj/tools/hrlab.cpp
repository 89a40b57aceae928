// hrlab: command-line front end for hazard-rate bound experiments.
//
//   hrlab generate  --config exp.ini [--seed S] [--out DIR] [--rep R]
//   hrlab run       --config exp.ini [--seed S] [--out DIR]
//   hrlab fit       --trace trace.csv [--threshold N] [--out DIR]
//   hrlab summarize --results results.csv [--out DIR]
//
// Exit codes: 0 success, 1 invalid input or configuration, 2 runtime failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "hrbound/config.hpp"
#include "hrbound/errors.hpp"
#include "hrbound/experiment.hpp"
#include "hrbound/summary.hpp"
#include "hrbound/trace_io.hpp"

namespace fs = std::filesystem;
using namespace hrbound;

namespace {

constexpr int kValidationError = 1;
constexpr int kRuntimeError = 2;

ExperimentConfig load_with_overrides(const std::string& path, const std::optional<std::uint64_t>& seed,
                                     const std::optional<std::string>& out) {
  ExperimentConfig c = load_config(path);
  if (seed) c.seed = *seed;
  if (out) c.output = *out;
  return c;
}

int cmd_generate(const std::string& config, const std::optional<std::uint64_t>& seed,
                 const std::optional<std::string>& out, std::size_t rep) {
  const ExperimentConfig c = load_with_overrides(config, seed, out);
  const Workload w = build_workload(c);
  const RequestTrace trace = replication_trace(c, w, rep);
  fs::create_directories(c.output);
  const fs::path path = c.output / "trace.csv";
  write_trace_csv(trace, w.catalog, path);
  std::cout << "wrote " << trace.size() << " requests for " << w.catalog.size() << " objects to " << path.string()
            << '\n';
  return 0;
}

int cmd_run(const std::string& config, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& out) {
  const ExperimentConfig c = load_with_overrides(config, seed, out);
  const auto rows = run_experiment(c);
  fs::create_directories(c.output);
  const fs::path results = c.output / (c.id + ".csv");
  write_results_csv(rows, results);
  const auto summary = summarize(rows);
  write_summary_files(summary, c.output);
  write_summary_text(summary, std::cout);
  std::cout << "wrote " << rows.size() << " rows to " << results.string() << '\n';
  return 0;
}

int cmd_fit(const std::string& trace, std::size_t threshold, const std::string& out) {
  const FittedTrace fitted = fit_real_trace(trace, threshold);
  fs::create_directories(out);
  const fs::path path = fs::path(out) / "fits.csv";
  std::ofstream csv(path, std::ios::binary);
  csv << "original_id,requests,zero_gaps,shape,scale,log_likelihood,converged,note\n";
  for (const auto& o : fitted.objects) {
    csv << o.original_id << ',' << o.requests << ',' << o.zero_gaps << ',';
    if (o.fit) {
      csv << format_double(o.fit->shape) << ',' << format_double(o.fit->scale) << ','
          << format_double(o.fit->log_likelihood) << ',' << (o.fit->converged ? 1 : 0);
    } else {
      csv << ",,,";
    }
    csv << ',' << o.note << '\n';
  }
  for (const auto& w : fitted.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "fitted " << fitted.catalog.size() << " of " << fitted.objects.size() << " objects; wrote "
            << path.string() << '\n';
  return 0;
}

int cmd_summarize(const std::string& results, const std::string& out) {
  const auto rows = read_results_csv(fs::path(results));
  if (rows.empty()) throw std::invalid_argument("results file has no rows");
  const auto summary = summarize(rows);
  write_summary_files(summary, out);
  write_summary_text(summary, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hazard-rate upper bounds on cache hit probability"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::size_t rep = 0;
  std::string trace;
  std::size_t threshold = 100;
  std::string results;
  std::string out_dir = ".";

  auto* gen = app.add_subcommand("generate", "Write one replication's trace as CSV");
  gen->add_option("--config", config, "Experiment INI file")->required()->check(CLI::ExistingFile);
  gen->add_option("--seed", seed, "Override the master seed");
  gen->add_option("--out", out, "Output directory");
  gen->add_option("--rep", rep, "Replication index");

  auto* run = app.add_subcommand("run", "Run an experiment and write results and a summary");
  run->add_option("--config", config, "Experiment INI file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out, "Output directory");

  auto* fit = app.add_subcommand("fit", "Fit per-object GPD laws to a CSV trace");
  fit->add_option("--trace", trace, "Trace CSV (timestamp,object_id[,size])")->required()->check(CLI::ExistingFile);
  fit->add_option("--threshold", threshold, "Minimum requests per object");
  fit->add_option("--out", out_dir, "Output directory");

  auto* sum = app.add_subcommand("summarize", "Summarize a results CSV");
  sum->add_option("--results", results, "Results CSV")->required()->check(CLI::ExistingFile);
  sum->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  try {
    if (*gen) return cmd_generate(config, seed, out, rep);
    if (*run) return cmd_run(config, seed, out);
    if (*fit) return cmd_fit(trace, threshold, out_dir);
    if (*sum) return cmd_summarize(results, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::logic_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
