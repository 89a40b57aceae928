#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hrbound/experiment.hpp"

namespace hrbound {

/// Per (experiment, model, n, B, method) statistics of hit probability over
/// replications.
struct SummaryRow {
  std::string experiment;
  std::string model;
  std::size_t n = 0;
  double capacity = 0.0;
  std::string method;
  std::size_t reps = 0;
  double mean = 0.0;
  /// NaN with a single replication.
  double std = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double byte_mean = 0.0;
  /// "reference" for the bound others are compared with; for online
  /// policies "bounded" or "exceeds" (paired, 2-standard-error margin);
  /// "-" otherwise.
  std::string verdict;
};

/// Groups rows in first-appearance order. The comparison reference is HR-E
/// when present in the group's (experiment, B) cell, else HR-VC.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_text(const std::vector<SummaryRow>& rows, std::ostream& out);

/// Writes summary.csv and summary.txt into `dir`.
void write_summary_files(const std::vector<SummaryRow>& rows, const std::filesystem::path& dir);

}  // namespace hrbound
