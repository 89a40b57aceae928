#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hrbound/catalog.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

// Trace CSV: `timestamp,object_id[,size]`, optional header line, '.' as the
// decimal separator, LF line endings. Object ids in files are 1-based.

struct TraceLoadOptions {
  /// Nudge exactly tied timestamps apart (see canonicalize). Disable to keep
  /// raw timestamps, e.g. when estimating inter-request times.
  bool break_ties = true;
};

struct LoadedTrace {
  RequestTrace trace;
  /// Sizes from the size column (unit sizes without one). The traffic model
  /// is a renewal placeholder with exponential IRTs at each object's
  /// empirical rate.
  Catalog catalog;
  /// original_ids[dense] is the id token as it appeared in the file.
  std::vector<std::string> original_ids;
  std::vector<std::size_t> request_counts;
  bool has_sizes = false;
  std::size_t out_of_order = 0;
  std::size_t nudged = 0;
  std::vector<std::string> warnings;
};

/// Parses a trace. Ids that are all positive integers keep their value
/// (dense id = value); otherwise ids are numbered by first appearance.
/// Throws ParseError with the 1-based line number on a malformed row.
LoadedTrace parse_trace_csv(std::istream& in, const TraceLoadOptions& options = {});
LoadedTrace load_trace_csv(const std::filesystem::path& path, const TraceLoadOptions& options = {});

void write_trace_csv(const RequestTrace& trace, const Catalog& catalog, std::ostream& out);
void write_trace_csv(const RequestTrace& trace, const Catalog& catalog, const std::filesystem::path& path);

/// Sidecar `original_id,dense_id`.
void write_id_mapping(const std::vector<std::string>& original_ids, const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace hrbound
