#include "hrbound/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace hrbound {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::vector<double> MmppParams::stationary() const {
  const std::size_t m = states();
  if (m == 0) throw std::invalid_argument("MMPP needs at least one state");
  if (m == 1) return {1.0};
  // gamma Q = 0 with one balance equation replaced by sum(gamma) = 1.
  Eigen::MatrixXd a(m, m);
  for (std::size_t x = 0; x < m; ++x) {
    double out = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      if (y == x) continue;
      a(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = transition_rates[x][y];
      out += transition_rates[x][y];
    }
    a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = -out;
  }
  a.row(static_cast<Eigen::Index>(m - 1)).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  rhs(static_cast<Eigen::Index>(m - 1)) = 1.0;
  const Eigen::VectorXd gamma = a.fullPivLu().solve(rhs);
  std::vector<double> out(gamma.data(), gamma.data() + gamma.size());
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& g : out) g /= sum;
  return out;
}

double MmppParams::mean_rate(std::size_t i) const {
  const auto gamma = stationary();
  double r = 0.0;
  for (std::size_t x = 0; x < states(); ++x) r += gamma[x] * request_rates[x][i];
  return r;
}

std::size_t SnmParams::objects() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.count;
  return n;
}

std::size_t SnmParams::class_of(ObjectId id) const {
  std::size_t end = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    end += classes[c].count;
    if (id < end) return c;
  }
  throw std::out_of_range("object id beyond shot-noise catalog");
}

bool Catalog::unit_sizes() const {
  return std::all_of(sizes.begin(), sizes.end(), [](double s) { return s == 1.0; });
}

double Catalog::total_size() const { return std::accumulate(sizes.begin(), sizes.end(), 0.0); }

std::vector<double> Catalog::average_rates() const {
  const std::size_t n = size();
  std::vector<double> out(n);
  switch (model()) {
    case TrafficModel::renewal: {
      const auto& r = std::get<RenewalTraffic>(traffic);
      for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / mean_irt(r.irts[i]);
      break;
    }
    case TrafficModel::onoff: {
      const auto& p = std::get<OnOffParams>(traffic);
      for (std::size_t i = 0; i < n; ++i) out[i] = p.request_rate[i] * p.on_probability(i);
      break;
    }
    case TrafficModel::mmpp: {
      const auto& p = std::get<MmppParams>(traffic);
      const auto gamma = p.stationary();
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = 0.0;
        for (std::size_t x = 0; x < p.states(); ++x) out[i] += gamma[x] * p.request_rates[x][i];
      }
      break;
    }
    case TrafficModel::snm: {
      const auto& p = std::get<SnmParams>(traffic);
      for (std::size_t i = 0; i < n; ++i) out[i] = p.classes[p.class_of(static_cast<ObjectId>(i))].mean_volume;
      break;
    }
  }
  return out;
}

void Catalog::validate() const {
  const std::size_t n = size();
  if (n == 0) throw std::invalid_argument("catalog must contain at least one object");
  if (!std::all_of(sizes.begin(), sizes.end(), positive)) throw std::invalid_argument("object sizes must be > 0");
  switch (model()) {
    case TrafficModel::renewal:
      if (std::get<RenewalTraffic>(traffic).irts.size() != n)
        throw std::invalid_argument("renewal traffic must give one IRT law per object");
      break;
    case TrafficModel::onoff: {
      const auto& p = std::get<OnOffParams>(traffic);
      if (p.alpha.size() != n || p.beta.size() != n || p.request_rate.size() != n)
        throw std::invalid_argument("on-off parameters must have one entry per object");
      for (std::size_t i = 0; i < n; ++i) {
        if (!positive(p.alpha[i]) || !positive(p.beta[i]) || !positive(p.request_rate[i]))
          throw std::invalid_argument("on-off rates must be > 0");
      }
      break;
    }
    case TrafficModel::mmpp: {
      const auto& p = std::get<MmppParams>(traffic);
      if (p.states() == 0 || p.objects() != n) throw std::invalid_argument("MMPP rates must cover every object");
      if (p.transition_rates.size() != p.states()) throw std::invalid_argument("MMPP transition matrix size mismatch");
      for (std::size_t x = 0; x < p.states(); ++x) {
        if (p.request_rates[x].size() != n || p.transition_rates[x].size() != p.states())
          throw std::invalid_argument("MMPP parameter dimensions disagree");
        if (!std::all_of(p.request_rates[x].begin(), p.request_rates[x].end(), positive))
          throw std::invalid_argument("MMPP request rates must be > 0");
        for (std::size_t y = 0; y < p.states(); ++y) {
          if (y != x && !(p.transition_rates[x][y] >= 0.0)) throw std::invalid_argument("MMPP jump rates must be >= 0");
        }
      }
      break;
    }
    case TrafficModel::snm: {
      const auto& p = std::get<SnmParams>(traffic);
      if (p.objects() != n) throw std::invalid_argument("shot-noise class counts must sum to n");
      for (const auto& c : p.classes) {
        if (!positive(c.mean_lifespan) || !positive(c.mean_volume))
          throw std::invalid_argument("shot-noise class parameters must be > 0");
      }
      break;
    }
  }
}

const char* model_name(TrafficModel model) {
  switch (model) {
    case TrafficModel::renewal:
      return "renewal";
    case TrafficModel::onoff:
      return "onoff";
    case TrafficModel::mmpp:
      return "mmpp";
    case TrafficModel::snm:
      return "snm";
  }
  return "unknown";
}

Catalog renewal_catalog(IrtFamily family, const std::vector<double>& rates, const ShapeParams& shape) {
  RenewalTraffic traffic;
  traffic.irts.reserve(rates.size());
  for (double r : rates) traffic.irts.push_back(from_rate(family, r, shape));
  return Catalog{std::vector<double>(rates.size(), 1.0), std::move(traffic)};
}

}  // namespace hrbound
