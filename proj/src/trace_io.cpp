#include "hrbound/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "hrbound/errors.hpp"

namespace hrbound {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_positive_integer(std::string_view s, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out > 0;
}

struct RawRow {
  double time;
  std::string id;
  double size;
  bool has_size;
  std::size_t line;
};

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

LoadedTrace parse_trace_csv(std::istream& in, const TraceLoadOptions& options) {
  std::vector<RawRow> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t size_columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split(text, ',');
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected 2 or 3 fields (timestamp,object_id[,size]), got " +
                                    std::to_string(fields.size()));
    }
    RawRow row{0.0, std::string(trim(fields[1])), 1.0, fields.size() == 3, line_no};
    if (!parse_number(trim(fields[0]), row.time)) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw ParseError(line_no, "malformed timestamp '" + std::string(fields[0]) + "'");
    }
    if (row.id.empty()) throw ParseError(line_no, "empty object id");
    if (row.has_size) {
      if (!parse_number(trim(fields[2]), row.size) || row.size <= 0.0)
        throw ParseError(line_no, "malformed size '" + std::string(fields[2]) + "'");
      ++size_columns;
    }
    rows.push_back(std::move(row));
  }

  LoadedTrace out;
  out.has_sizes = size_columns > 0;
  if (out.has_sizes && size_columns != rows.size())
    throw ParseError(line_no, "size column present on some rows but not others");

  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].time < rows[k - 1].time) ++out.out_of_order;
  }
  if (out.out_of_order > 0) {
    std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) { return a.time < b.time; });
    out.warnings.push_back(std::to_string(out.out_of_order) + " out-of-order timestamps; rows sorted by time");
  }

  bool numeric = !rows.empty();
  std::uint64_t max_id = 0;
  for (const auto& r : rows) {
    std::uint64_t v = 0;
    if (!parse_positive_integer(r.id, v) || v > (1ULL << 31)) {
      numeric = false;
      break;
    }
    max_id = std::max(max_id, v);
  }
  if (numeric) {
    // Sparse numeric ids (hashes, URLs mapped to integers) fall back to
    // first-appearance numbering.
    std::unordered_set<std::string_view> distinct;
    for (const auto& r : rows) distinct.insert(r.id);
    numeric = max_id <= 4 * distinct.size() + 16;
  }

  std::unordered_map<std::string, ObjectId> dense;
  if (numeric) {
    out.original_ids.resize(max_id);
    for (std::uint64_t v = 1; v <= max_id; ++v) out.original_ids[v - 1] = std::to_string(v);
  }
  std::vector<RequestEvent> events;
  events.reserve(rows.size());
  std::vector<double> sizes(out.original_ids.size(), 0.0);
  for (const auto& r : rows) {
    ObjectId id;
    if (numeric) {
      std::uint64_t v = 0;
      parse_positive_integer(r.id, v);
      id = static_cast<ObjectId>(v - 1);
    } else {
      auto [it, inserted] = dense.try_emplace(r.id, static_cast<ObjectId>(out.original_ids.size()));
      if (inserted) {
        out.original_ids.push_back(r.id);
        sizes.push_back(0.0);
      }
      id = it->second;
    }
    if (sizes[id] == 0.0) {
      sizes[id] = r.size;
    } else if (sizes[id] != r.size) {
      out.warnings.push_back("line " + std::to_string(r.line) + ": size of object " + r.id +
                             " differs from its first occurrence; keeping the first");
    }
    events.push_back({r.time, id});
  }
  const std::size_t n = out.original_ids.size();
  for (double& s : sizes) {
    if (s == 0.0) s = 1.0;  // never requested
  }

  if (options.break_ties) {
    out.nudged = canonicalize(events);
  } else {
    std::stable_sort(events.begin(), events.end(), [](const RequestEvent& a, const RequestEvent& b) {
      return a.time < b.time || (a.time == b.time && a.object < b.object);
    });
  }
  if (out.nudged > 0) out.warnings.push_back(std::to_string(out.nudged) + " tied timestamps separated");

  out.request_counts.assign(n, 0);
  for (const auto& e : events) ++out.request_counts[e.object];
  out.trace.start = events.empty() ? 0.0 : events.front().time;
  out.trace.horizon = events.empty() ? 0.0 : events.back().time;
  out.trace.events = std::move(events);

  RenewalTraffic placeholder;
  const double span = out.trace.horizon > out.trace.start ? out.trace.horizon - out.trace.start : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double count = std::max(0.5, static_cast<double>(out.request_counts[i]));
    placeholder.irts.push_back(Exponential{count / span});
  }
  out.catalog = Catalog{std::move(sizes), std::move(placeholder)};
  return out;
}

LoadedTrace load_trace_csv(const std::filesystem::path& path, const TraceLoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return parse_trace_csv(in, options);
}

void write_trace_csv(const RequestTrace& trace, const Catalog& catalog, std::ostream& out) {
  const bool sizes = !catalog.unit_sizes();
  out << (sizes ? "timestamp,object_id,size\n" : "timestamp,object_id\n");
  for (const auto& e : trace.events) {
    out << format_double(e.time) << ',' << (e.object + 1);
    if (sizes) out << ',' << format_double(catalog.sizes.at(e.object));
    out << '\n';
  }
}

void write_trace_csv(const RequestTrace& trace, const Catalog& catalog, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file " + path.string());
  write_trace_csv(trace, catalog, out);
}

void write_id_mapping(const std::vector<std::string>& original_ids, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write id mapping " + path.string());
  out << "original_id,dense_id\n";
  for (std::size_t i = 0; i < original_ids.size(); ++i) out << original_ids[i] << ',' << (i + 1) << '\n';
}

}  // namespace hrbound
