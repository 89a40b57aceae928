#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrbound/catalog.hpp"
#include "hrbound/config.hpp"
#include "hrbound/gpd_fit.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

struct ResultRow {
  std::string experiment;
  std::string model;
  std::size_t n = 0;
  double capacity = 0.0;
  std::string method;
  std::size_t rep = 0;
  double hit_prob = 0.0;
  double byte_hit_prob = 0.0;
  double expected_hits = 0.0;
  std::size_t requests = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr const char* kResultsHeader =
    "experiment,model,n,B,method,rep,hit_prob,byte_hit_prob,expected_hits,K,seed,wall_ms";

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_results_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
/// Throws ParseError on a malformed row.
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

/// Per-object GPD fit of a real trace.
struct ObjectFit {
  std::string original_id;
  std::size_t requests = 0;
  std::size_t zero_gaps = 0;
  std::optional<GpdFit> fit;  ///< empty when the object was unfittable
  std::string note;
};

struct FittedTrace {
  /// Renewal catalog with one GPD law per qualifying object.
  Catalog catalog;
  /// Requests of qualifying objects, re-indexed to the catalog.
  RequestTrace trace;
  /// Original id of each catalog object.
  std::vector<std::string> original_ids;
  /// Empirical request counts of the catalog objects.
  std::vector<double> request_counts;
  /// Every object in the file, qualifying or not.
  std::vector<ObjectFit> objects;
  std::vector<std::string> warnings;
};

/// Loads a CSV trace, drops objects with fewer than `threshold` requests,
/// fits a GPD to each remaining object's inter-request times (exact-zero
/// gaps dropped) and excludes objects whose fit is impossible. Throws
/// InsufficientData when no object qualifies.
FittedTrace fit_real_trace(const std::filesystem::path& path, std::size_t threshold = 100);

/// Catalog and, for the trace model, the fixed trace an experiment uses.
struct Workload {
  Catalog catalog;
  /// Rates ranking objects for STATIC.
  std::vector<double> static_rates;
  std::optional<RequestTrace> fixed_trace;
};

Workload build_workload(const ExperimentConfig& config);

/// Trace of replication `rep` (seeded by derive_seed(config.seed, rep)).
RequestTrace replication_trace(const ExperimentConfig& config, const Workload& workload, std::size_t rep);

/// Runs every replication, scoring all methods on the same trace per
/// replication. Rows are sorted by (rep, B, method order in the config).
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

}  // namespace hrbound
