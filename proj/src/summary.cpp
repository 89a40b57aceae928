#include "hrbound/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "hrbound/policies.hpp"
#include "hrbound/stats.hpp"
#include "hrbound/trace_io.hpp"

namespace hrbound {

namespace {

using CellKey = std::tuple<std::string, std::string, std::size_t, double>;
using GroupKey = std::tuple<std::string, std::string, std::size_t, double, std::string>;

std::string fmt(double v) {
  if (std::isnan(v)) return "n/a";
  return format_double(v);
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<GroupKey> order;
  std::map<GroupKey, std::map<std::size_t, const ResultRow*>> groups;
  for (const auto& r : rows) {
    GroupKey key{r.experiment, r.model, r.n, r.capacity, r.method};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second[r.rep] = &r;
  }
  auto reference_of = [&](const CellKey& cell) -> const std::map<std::size_t, const ResultRow*>* {
    for (const char* m : {"HR-E", "HR-VC"}) {
      auto it = groups.find(std::tuple_cat(cell, std::make_tuple(std::string(m))));
      if (it != groups.end()) return &it->second;
    }
    return nullptr;
  };

  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& reps = groups.at(key);
    std::vector<double> hp;
    std::vector<double> bp;
    for (const auto& [rep, row] : reps) {
      hp.push_back(row->hit_prob);
      bp.push_back(row->byte_hit_prob);
    }
    SummaryRow s;
    std::tie(s.experiment, s.model, s.n, s.capacity, s.method) = key;
    s.reps = hp.size();
    s.mean = mean(hp);
    s.byte_mean = mean(bp);
    if (hp.size() >= 2) {
      s.std = sample_std(hp);
      const Interval ci = normal_ci95(hp);
      s.ci_lo = ci.lo;
      s.ci_hi = ci.hi;
    } else {
      s.std = std::numeric_limits<double>::quiet_NaN();
      s.ci_lo = s.ci_hi = s.mean;
    }

    const CellKey cell{s.experiment, s.model, s.n, s.capacity};
    const auto* ref = reference_of(cell);
    if (ref == &reps) {
      s.verdict = "reference";
    } else if (ref && parse_policy(s.method)) {
      std::vector<double> a;
      std::vector<double> b;
      for (const auto& [rep, row] : reps) {
        auto it = ref->find(rep);
        if (it == ref->end()) continue;
        a.push_back(it->second->hit_prob);
        b.push_back(row->hit_prob);
      }
      if (a.empty()) {
        s.verdict = "-";
      } else {
        const double margin = 2.0 * paired_stderr(a, b);
        s.verdict = mean(a) >= mean(b) - margin ? "bounded" : "exceeds";
      }
    } else {
      s.verdict = "-";
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "experiment,model,n,B,method,reps,mean,std,ci_lo,ci_hi,byte_mean,verdict\n";
  for (const auto& s : rows) {
    out << s.experiment << ',' << s.model << ',' << s.n << ',' << fmt(s.capacity) << ',' << s.method << ',' << s.reps
        << ',' << fmt(s.mean) << ',' << fmt(s.std) << ',' << fmt(s.ci_lo) << ',' << fmt(s.ci_hi) << ','
        << fmt(s.byte_mean) << ',' << s.verdict << '\n';
  }
}

void write_summary_text(const std::vector<SummaryRow>& rows, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-8s %10s %-9s %5s %9s %9s %21s %9s  %s\n", "experiment", "model", "B",
                "method", "reps", "mean", "std", "95% CI", "byte", "verdict");
  out << line;
  for (const auto& s : rows) {
    char ci[64];
    std::snprintf(ci, sizeof ci, "[%.5f, %.5f]", s.ci_lo, s.ci_hi);
    char sd[32];
    if (std::isnan(s.std)) std::snprintf(sd, sizeof sd, "n/a");
    else std::snprintf(sd, sizeof sd, "%.5f", s.std);
    std::snprintf(line, sizeof line, "%-12s %-8s %10g %-9s %5zu %9.5f %9s %21s %9.5f  %s\n", s.experiment.c_str(),
                  s.model.c_str(), s.capacity, s.method.c_str(), s.reps, s.mean, sd, ci, s.byte_mean,
                  s.verdict.c_str());
    out << line;
  }
}

void write_summary_files(const std::vector<SummaryRow>& rows, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "summary.csv", std::ios::binary);
  std::ofstream txt(dir / "summary.txt", std::ios::binary);
  if (!csv || !txt) throw std::runtime_error("cannot write summary files in " + dir.string());
  write_summary_csv(rows, csv);
  write_summary_text(rows, txt);
}

}  // namespace hrbound
