#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hrbound/catalog.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

/// Hit accounting over the post-warm-up part of a trace. Counts are real
/// because the variable-size bounds credit fractional hits.
struct BoundScore {
  std::size_t requests = 0;
  double expected_hits = 0.0;
  double hit_probability = 0.0;
  double expected_bytes_hit = 0.0;
  double requested_bytes = 0.0;
  double byte_hit_probability = 0.0;
  /// Per-request credit in [0, 1], only filled when requested.
  std::vector<double> credits;

  void add(double credit, double size, bool keep);
  void finish();
};

enum class RankMode {
  /// Specialized ranking kernels (static ranks, Fenwick trees, tight loops).
  fast,
  /// Per-request evaluation of every hazard, full sort and knapsack solve.
  /// Reference path for tests.
  full,
};

struct ScoreOptions {
  double warmup_fraction = 0.1;
  RankMode mode = RankMode::fast;
  bool keep_credits = false;
};

/// Equal-size bound: a request is a hit iff its object ranks among the B
/// largest hazards just before the request. B == 0 scores 0. Throws
/// std::invalid_argument if B exceeds the catalog size or sizes differ.
BoundScore hr_e_score(const RequestTrace& trace, const Catalog& catalog, std::size_t capacity,
                      const ScoreOptions& options = {});

/// hr_e_score for several capacities from one pass over the trace.
std::vector<BoundScore> hr_e_sweep(const RequestTrace& trace, const Catalog& catalog,
                                   std::span<const std::size_t> capacities, const ScoreOptions& options = {});

/// Byte-hit bound: fractional knapsack with values s_i * hazard_i; the
/// requested object earns its placed fraction of bytes.
BoundScore hr_vb_score(const RequestTrace& trace, const Catalog& catalog, double capacity,
                       const ScoreOptions& options = {});
std::vector<BoundScore> hr_vb_sweep(const RequestTrace& trace, const Catalog& catalog,
                                    std::span<const double> capacities, const ScoreOptions& options = {});

/// Object-hit bound: objects ranked by hazard_i / s_i fill the capacity; the
/// requested object earns 1 inside the full prefix and the marginal
/// object's placed fraction otherwise.
BoundScore hr_vc_score(const RequestTrace& trace, const Catalog& catalog, double capacity,
                       const ScoreOptions& options = {});
std::vector<BoundScore> hr_vc_sweep(const RequestTrace& trace, const Catalog& catalog,
                                    std::span<const double> capacities, const ScoreOptions& options = {});

}  // namespace hrbound
