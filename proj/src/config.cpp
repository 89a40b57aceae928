#include "hrbound/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hrbound/errors.hpp"

namespace hrbound {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& field, const std::string& text) {
  T v{};
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(field, "cannot parse '" + text + "' as a number");
  return v;
}

bool parse_bool(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(field, "expected true or false, got '" + text + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string& field, const std::string& value)>;

template <class T>
Setter number(T ExperimentConfig::*member) {
  return [member](ExperimentConfig& c, const std::string& f, const std::string& v) {
    c.*member = parse_number<T>(f, v);
  };
}

Setter text(std::string ExperimentConfig::*member) {
  return [member](ExperimentConfig& c, const std::string&, const std::string& v) { c.*member = trim(v); };
}

Setter path(std::filesystem::path ExperimentConfig::*member) {
  return [member](ExperimentConfig& c, const std::string&, const std::string& v) { c.*member = trim(v); };
}

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> table = {
      {"experiment.id", text(&ExperimentConfig::id)},
      {"experiment.seed", number(&ExperimentConfig::seed)},
      {"experiment.replications", number(&ExperimentConfig::replications)},
      {"experiment.warmup", number(&ExperimentConfig::warmup)},
      {"experiment.methods",
       [](ExperimentConfig& c, const std::string&, const std::string& v) { c.methods = split_list(v); }},
      {"experiment.output", path(&ExperimentConfig::output)},
      {"experiment.timing",
       [](ExperimentConfig& c, const std::string& f, const std::string& v) { c.timing = parse_bool(f, v); }},
      {"experiment.threads", number(&ExperimentConfig::threads)},
      {"traffic.model", text(&ExperimentConfig::model)},
      {"traffic.n", number(&ExperimentConfig::n)},
      {"traffic.family",
       [](ExperimentConfig& c, const std::string& f, const std::string& v) {
         const auto fam = parse_family(trim(v));
         if (!fam) throw ConfigError(f, "unknown IRT family '" + v + "'");
         c.family = *fam;
       }},
      {"traffic.shape",
       [](ExperimentConfig& c, const std::string& f, const std::string& v) { c.shape = parse_number<double>(f, v); }},
      {"traffic.scv", number(&ExperimentConfig::scv)},
      {"traffic.zipf_exponent", number(&ExperimentConfig::zipf_exponent)},
      {"traffic.total_rate", number(&ExperimentConfig::total_rate)},
      {"traffic.t_on", number(&ExperimentConfig::t_on)},
      {"traffic.t_off", number(&ExperimentConfig::t_off)},
      {"traffic.volume_mean", number(&ExperimentConfig::volume_mean)},
      {"traffic.volume_shape", number(&ExperimentConfig::volume_shape)},
      {"traffic.alpha", number(&ExperimentConfig::mmpp_alpha)},
      {"traffic.beta", number(&ExperimentConfig::mmpp_beta)},
      {"traffic.trace", path(&ExperimentConfig::trace_path)},
      {"traffic.fit_threshold", number(&ExperimentConfig::fit_threshold)},
      {"sizes.model", text(&ExperimentConfig::size_model)},
      {"sizes.shape", number(&ExperimentConfig::size_shape)},
      {"sizes.min", number(&ExperimentConfig::size_min)},
      {"sizes.max", number(&ExperimentConfig::size_max)},
      {"run.capacities",
       [](ExperimentConfig& c, const std::string& f, const std::string& v) {
         c.capacities.clear();
         for (const auto& item : split_list(v)) c.capacities.push_back(parse_number<double>(f, item));
       }},
      {"run.requests", number(&ExperimentConfig::requests)},
      {"run.horizon", number(&ExperimentConfig::horizon)},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names = {"HR-E", "HR-VB", "HR-VC", "BELADY", "LRU", "FIFO",
                                                 "RANDOM", "STATIC", "LFU", "GDSF", "ANALYTIC"};
  return names;
}

bool needs_equal_sizes(const std::string& method) {
  return method == "HR-E" || method == "BELADY" || method == "ANALYTIC";
}

ExperimentConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", "line " + std::to_string(e.line()) + ": " + e.message());
  }
  ExperimentConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError(section, "key outside of any section");
    for (const auto& [key, value] : body) {
      const std::string field = section + "." + key;
      const auto it = schema().find(field);
      if (it == schema().end()) throw ConfigError(field, "unknown key");
      it->second(config, field, value.data());
    }
  }
  validate_config(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  return parse_config(in);
}

void validate_config(const ExperimentConfig& c) {
  if (c.id.empty() || c.id.find_first_of(",\n\"") != std::string::npos)
    throw ConfigError("experiment.id", "must be non-empty without commas or quotes");
  if (c.replications < 1) throw ConfigError("experiment.replications", "must be >= 1");
  if (!(c.warmup >= 0.0 && c.warmup <= 0.5)) throw ConfigError("experiment.warmup", "must lie in [0, 0.5]");
  if (c.methods.empty()) throw ConfigError("experiment.methods", "at least one method is required");
  for (const auto& m : c.methods) {
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
      throw ConfigError("experiment.methods", "unknown method '" + m + "'");
  }
  for (std::size_t i = 0; i < c.methods.size(); ++i) {
    if (std::find(c.methods.begin(), c.methods.begin() + static_cast<std::ptrdiff_t>(i), c.methods[i]) !=
        c.methods.begin() + static_cast<std::ptrdiff_t>(i))
      throw ConfigError("experiment.methods", "duplicate method '" + c.methods[i] + "'");
  }

  static const std::vector<std::string> models = {"renewal", "onoff", "mmpp", "snm", "trace"};
  if (std::find(models.begin(), models.end(), c.model) == models.end())
    throw ConfigError("traffic.model", "unknown traffic model '" + c.model + "'");
  const bool real = c.model == "trace";
  if (real) {
    if (c.trace_path.empty()) throw ConfigError("traffic.trace", "required for the trace model");
    if (c.fit_threshold < 2) throw ConfigError("traffic.fit_threshold", "must be >= 2");
  } else if (c.n < 1) {
    throw ConfigError("traffic.n", "must be >= 1");
  }
  auto positive = [](const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be finite and > 0");
  };
  positive("traffic.total_rate", c.total_rate);
  positive("traffic.t_on", c.t_on);
  positive("traffic.t_off", c.t_off);
  positive("traffic.volume_mean", c.volume_mean);
  if (!(c.volume_shape > 1.0)) throw ConfigError("traffic.volume_shape", "must be > 1 for a finite mean");
  if (!(c.zipf_exponent >= 0.0)) throw ConfigError("traffic.zipf_exponent", "must be >= 0");
  if (!(c.mmpp_alpha >= 0.0)) throw ConfigError("traffic.alpha", "must be >= 0");
  if (!(c.mmpp_beta >= 0.0)) throw ConfigError("traffic.beta", "must be >= 0");

  if (c.size_model != "unit" && c.size_model != "bounded_pareto" && c.size_model != "trace")
    throw ConfigError("sizes.model", "must be unit, bounded_pareto or trace");
  if (c.size_model == "trace" && !real) throw ConfigError("sizes.model", "trace sizes need the trace traffic model");
  if (c.size_model == "bounded_pareto") {
    if (!(c.size_min > 0.0 && c.size_min < c.size_max)) throw ConfigError("sizes.min", "need 0 < min < max");
    positive("sizes.shape", c.size_shape);
  }

  if (c.capacities.empty()) throw ConfigError("run.capacities", "at least one capacity is required");
  for (double b : c.capacities) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("run.capacities", "values must be finite and > 0");
  }
  const bool variable = c.size_model != "unit";
  for (const auto& m : c.methods) {
    if (variable && needs_equal_sizes(m) && c.size_model != "trace")
      throw ConfigError("experiment.methods", m + " needs unit object sizes");
    if (needs_equal_sizes(m) || !variable) {
      for (double b : c.capacities) {
        if (b != std::floor(b)) throw ConfigError("run.capacities", "equal-size capacities must be integers");
        if (!real && b > static_cast<double>(c.n) && m == "HR-E")
          throw ConfigError("run.capacities", "capacity exceeds the number of objects");
      }
    }
    if (m == "ANALYTIC") {
      if (real) throw ConfigError("experiment.methods", "ANALYTIC is not available for real traces");
      const bool poisson = c.model == "renewal" && c.family == IrtFamily::exponential;
      if (!(poisson || c.model == "onoff" || c.model == "mmpp"))
        throw ConfigError("experiment.methods", "ANALYTIC needs Poisson, on-off or MMPP traffic");
    }
  }
  if (c.model == "snm" || c.requests == 0) {
    if (!(c.horizon > 0.0) || !std::isfinite(c.horizon))
      throw ConfigError("run.horizon", c.model == "snm" ? "shot-noise traffic needs a horizon > 0"
                                                        : "needed when run.requests is 0");
  }
}

}  // namespace hrbound
