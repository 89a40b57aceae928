#include "hrbound/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hrbound/errors.hpp"
#include "hrbound/random.hpp"

namespace hrbound {

namespace {

// Substream tags.
constexpr std::uint64_t kRequests = 1;
constexpr std::uint64_t kModulation = 2;
constexpr std::uint64_t kVolume = 3;
constexpr std::uint64_t kBirths = 4;
constexpr std::uint64_t kEnvironment = 5;
constexpr std::uint64_t kSizes = 6;

double unit_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be finite and > 0");
}

/// Piecewise-constant intensity segment [start, end) with the given rate.
struct Segment {
  double start;
  double end;
  double rate;
};

/// Arrivals of a Poisson process with piecewise-constant intensity, by
/// inverting the integrated intensity of a unit-rate stream.
void piecewise_poisson(const std::vector<Segment>& segments, ObjectId object, Rng& rng,
                       std::vector<RequestEvent>& out) {
  double next = unit_exponential(rng);
  double acc = 0.0;
  for (const Segment& s : segments) {
    if (s.rate <= 0.0) continue;
    const double mass = s.rate * (s.end - s.start);
    while (next < acc + mass) {
      out.push_back({s.start + (next - acc) / s.rate, object});
      next += unit_exponential(rng);
    }
    acc += mass;
  }
}

RequestTrace finish(std::vector<RequestEvent> events, double horizon) {
  canonicalize(events);
  RequestTrace trace;
  trace.events = std::move(events);
  trace.horizon = horizon;
  return trace;
}

}  // namespace

RequestTrace gen_renewal(const Catalog& catalog, double horizon, std::uint64_t seed) {
  check_horizon(horizon);
  const auto& renewal = std::get<RenewalTraffic>(catalog.traffic);
  std::vector<RequestEvent> events;
  for (std::size_t i = 0; i < renewal.irts.size(); ++i) {
    Rng rng = substream(seed, i, kRequests);
    double t = sample_irt(renewal.irts[i], rng);
    while (t <= horizon) {
      events.push_back({t, static_cast<ObjectId>(i)});
      t += sample_irt(renewal.irts[i], rng);
    }
  }
  return finish(std::move(events), horizon);
}

RequestTrace gen_onoff(const Catalog& catalog, double horizon, std::uint64_t seed) {
  check_horizon(horizon);
  const auto& p = std::get<OnOffParams>(catalog.traffic);
  const std::size_t n = p.size();
  std::vector<RequestEvent> events;
  std::vector<std::uint8_t> initial(n);
  std::vector<OnOffSwitch> switches;
  std::vector<Segment> on_periods;
  for (std::size_t i = 0; i < n; ++i) {
    Rng mod = substream(seed, i, kModulation);
    bool on = uniform_open(mod) < p.on_probability(i);
    initial[i] = on ? 1 : 0;
    on_periods.clear();
    double t = 0.0;
    while (t < horizon) {
      const double stay = unit_exponential(mod) / (on ? p.beta[i] : p.alpha[i]);
      const double end = std::min(t + stay, horizon);
      if (on) on_periods.push_back({t, end, p.request_rate[i]});
      t += stay;
      on = !on;
      if (t <= horizon) switches.push_back({t, static_cast<ObjectId>(i), on});
    }
    Rng req = substream(seed, i, kRequests);
    piecewise_poisson(on_periods, static_cast<ObjectId>(i), req, events);
  }
  std::sort(switches.begin(), switches.end(), [](const OnOffSwitch& a, const OnOffSwitch& b) {
    return a.time < b.time || (a.time == b.time && a.object < b.object);
  });
  RequestTrace trace = finish(std::move(events), horizon);
  trace.initial_on = std::move(initial);
  trace.switches = std::move(switches);
  return trace;
}

RequestTrace gen_mmpp(const Catalog& catalog, double horizon, std::uint64_t seed) {
  check_horizon(horizon);
  const auto& p = std::get<MmppParams>(catalog.traffic);
  const std::size_t m = p.states();
  const std::size_t n = p.objects();

  Rng env = substream(seed, 0, kEnvironment);
  const auto gamma = p.stationary();
  std::discrete_distribution<std::uint32_t> initial(gamma.begin(), gamma.end());
  std::vector<StateChange> path{{0.0, initial(env)}};
  std::vector<double> out_rate(m, 0.0);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (y != x) out_rate[x] += p.transition_rates[x][y];
    }
  }
  double t = 0.0;
  while (true) {
    const std::uint32_t x = path.back().state;
    if (out_rate[x] <= 0.0) break;
    t += unit_exponential(env) / out_rate[x];
    if (t > horizon) break;
    std::vector<double> weights = p.transition_rates[x];
    weights[x] = 0.0;
    std::discrete_distribution<std::uint32_t> jump(weights.begin(), weights.end());
    path.push_back({t, jump(env)});
  }

  std::vector<RequestEvent> events;
  std::vector<Segment> segments(path.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < path.size(); ++s) {
      const double end = s + 1 < path.size() ? path[s + 1].time : horizon;
      segments[s] = {path[s].time, end, p.request_rates[path[s].state][i]};
    }
    Rng req = substream(seed, i, kRequests);
    piecewise_poisson(segments, static_cast<ObjectId>(i), req, events);
  }
  RequestTrace trace = finish(std::move(events), horizon);
  trace.state_path = std::move(path);
  return trace;
}

RequestTrace gen_snm(const Catalog& catalog, double horizon, std::uint64_t seed) {
  check_horizon(horizon);
  const auto& p = std::get<SnmParams>(catalog.traffic);
  std::vector<RequestEvent> events;
  std::vector<Shot> shots;
  shots.reserve(p.objects());
  ObjectId id = 0;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    const SnmClass& cls = p.classes[c];
    const double decay = cls.decay();
    Rng births = substream(seed, c, kBirths);
    double birth = 0.0;
    for (std::size_t j = 0; j < cls.count; ++j, ++id) {
      birth += unit_exponential(births) / cls.birth_rate();
      Rng vol = substream(seed, id, kVolume);
      const double volume = static_cast<double>(std::poisson_distribution<long long>(cls.mean_volume)(vol));
      if (birth > horizon) {
        shots.push_back({std::numeric_limits<double>::infinity(), volume});
        continue;
      }
      shots.push_back({birth, volume});
      if (volume <= 0.0) continue;
      // Integrated intensity V(1 - exp(-(t - birth)/decay)) inverted on a unit-rate stream.
      const double mass = -volume * std::expm1(-(horizon - birth) / decay);
      Rng req = substream(seed, id, kRequests);
      for (double s = unit_exponential(req); s < mass; s += unit_exponential(req)) {
        events.push_back({birth - decay * std::log1p(-s / volume), id});
      }
    }
  }
  RequestTrace trace = finish(std::move(events), horizon);
  trace.shots = std::move(shots);
  return trace;
}

RequestTrace generate(const Catalog& catalog, double horizon, std::uint64_t seed) {
  switch (catalog.model()) {
    case TrafficModel::renewal:
      return gen_renewal(catalog, horizon, seed);
    case TrafficModel::onoff:
      return gen_onoff(catalog, horizon, seed);
    case TrafficModel::mmpp:
      return gen_mmpp(catalog, horizon, seed);
    case TrafficModel::snm:
      return gen_snm(catalog, horizon, seed);
  }
  throw std::invalid_argument("unknown traffic model");
}

RequestTrace generate_requests(const Catalog& catalog, std::size_t count, std::uint64_t seed) {
  if (catalog.model() == TrafficModel::snm)
    throw Unsupported("shot-noise traffic has no stationary rate; generate it by horizon");
  if (count == 0) throw std::invalid_argument("request count must be >= 1");
  const auto rates = catalog.average_rates();
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  double horizon = 1.05 * static_cast<double>(count) / total + 10.0 / total;
  for (int attempt = 0; attempt < 64; ++attempt) {
    RequestTrace trace = generate(catalog, horizon, seed);
    if (trace.size() >= count) {
      truncate_requests(trace, count);
      return trace;
    }
    const double got = std::max<double>(1.0, static_cast<double>(trace.size()));
    horizon *= std::max(1.5, 1.1 * static_cast<double>(count) / got);
  }
  throw std::runtime_error("could not reach the requested number of requests");
}

std::vector<double> sample_sizes_bounded_pareto(std::size_t n, double shape, double min_size, double max_size,
                                                std::uint64_t seed) {
  if (!(min_size > 0.0 && min_size < max_size)) throw std::invalid_argument("bounded Pareto needs 0 < min < max");
  if (!(shape > 0.0)) throw std::invalid_argument("bounded Pareto shape must be > 0");
  Rng rng = substream(seed, 0, kSizes);
  // Tail mass beyond max_size, (min/max)^shape, underflows to 0 for huge shapes.
  const double tail = std::pow(min_size / max_size, shape);
  std::vector<double> out(n);
  for (double& x : out) {
    const double u = uniform_open(rng);
    x = std::clamp(min_size * std::pow(1.0 - u * (1.0 - tail), -1.0 / shape), min_size, max_size);
  }
  return out;
}

double bounded_pareto_cdf(double x, double shape, double min_size, double max_size) {
  if (x <= min_size) return 0.0;
  if (x >= max_size) return 1.0;
  return (1.0 - std::pow(min_size / x, shape)) / (1.0 - std::pow(min_size / max_size, shape));
}

}  // namespace hrbound
