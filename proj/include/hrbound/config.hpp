#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrbound/irt_distribution.hpp"

namespace hrbound {

/// Experiment description. Defaults match the standard desk-scale setup.
/// The INI schema (sections and keys) is listed in README.md.
struct ExperimentConfig {
  // [experiment]
  std::string id = "experiment";
  std::uint64_t seed = 1;
  std::size_t replications = 1;
  double warmup = 0.1;
  std::vector<std::string> methods{"HR-E", "LRU"};
  std::filesystem::path output = "results";
  /// Record wall time per method; off by default so outputs are
  /// byte-identical across runs.
  bool timing = false;
  /// Worker threads for replications; 0 uses the hardware concurrency.
  std::size_t threads = 0;

  // [traffic]
  std::string model = "renewal";  ///< renewal | onoff | mmpp | snm | trace
  std::size_t n = 100;
  IrtFamily family = IrtFamily::exponential;
  std::optional<double> shape;  ///< family default when unset
  double scv = 2.0;
  double zipf_exponent = 0.8;
  double total_rate = 1.0;
  double t_on = 7.0;
  double t_off = 63.0;
  double volume_mean = 10.0;
  double volume_shape = 2.0;
  double mmpp_alpha = 2e-3;
  double mmpp_beta = 1.6e-3;
  std::filesystem::path trace_path;
  std::size_t fit_threshold = 100;

  // [sizes]
  std::string size_model = "unit";  ///< unit | bounded_pareto | trace
  double size_shape = 1.8;
  double size_min = 5.0;
  double size_max = 15.0;

  // [run]
  std::vector<double> capacities{10.0};
  /// Exact request count per replication; used unless 0.
  std::size_t requests = 100000;
  /// Horizon per replication when requests == 0 (required for snm).
  double horizon = 0.0;
};

/// Method names accepted in `methods`.
const std::vector<std::string>& known_methods();

/// Parses INI text. Unknown sections or keys, malformed values and
/// duplicate keys raise ConfigError naming the field.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Cross-field checks; throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Equal-size methods need unit sizes.
bool needs_equal_sizes(const std::string& method);

}  // namespace hrbound
