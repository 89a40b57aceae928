#include "hrbound/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/binomial.hpp>

#include "hrbound/errors.hpp"

namespace hrbound {

namespace {

std::vector<std::size_t> descending_order(const std::vector<double>& rates) {
  std::vector<std::size_t> order(rates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rates[a] > rates[b]; });
  return order;
}

/// Rates, on- and off-probabilities of an on-off catalog in rate order.
struct SortedOnOff {
  std::vector<double> lambda;
  std::vector<double> on;
  std::vector<double> off;
};

SortedOnOff sorted_onoff(const OnOffParams& p) {
  if (p.size() == 0) throw std::invalid_argument("on-off catalog is empty");
  SortedOnOff s;
  for (std::size_t i : descending_order(p.request_rate)) {
    s.lambda.push_back(p.request_rate[i]);
    s.on.push_back(p.on_probability(i));
    s.off.push_back(p.off_probability(i));
  }
  return s;
}

/// Combines per-object hit probabilities (rate order) into overall values.
AnalyticResult combine(const SortedOnOff& s, const std::vector<double>& h_obj) {
  double offered = 0.0;
  double hits = 0.0;
  for (std::size_t i = 0; i < s.lambda.size(); ++i) {
    offered += s.lambda[i] * s.on[i];
    hits += s.lambda[i] * s.on[i] * h_obj[i];
  }
  return {hits / offered, hits};
}

}  // namespace

AnalyticResult poisson_hr(const RateVector& rates, std::size_t capacity) {
  if (rates.size() == 0) throw std::invalid_argument("rate vector is empty");
  std::vector<double> r = rates.rates;
  std::stable_sort(r.begin(), r.end(), std::greater<>());
  const std::size_t b = std::min(capacity, r.size());
  const double top = std::accumulate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(b), 0.0);
  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  return {top / total, top};
}

AnalyticResult onoff_hr_exact(const OnOffParams& params, std::size_t capacity) {
  if (params.size() > kMaxOnOffExact) throw InstanceTooLarge("exact on-off form is limited to 25 objects");
  const SortedOnOff s = sorted_onoff(params);
  const std::size_t n = s.lambda.size();
  std::vector<double> h(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < capacity) {
      h[i] = 1.0;
      continue;
    }
    if (capacity == 0) continue;
    // Sum over subsets of the i more popular objects with at most B-1 on.
    double total = 0.0;
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t j, std::size_t left, double prod) {
      if (j == i) {
        total += prod;
        return;
      }
      if (left > 0) walk(j + 1, left - 1, prod * s.on[j]);
      walk(j + 1, left, prod * s.off[j]);
    };
    walk(0, capacity - 1, 1.0);
    h[i] = total;
  }
  return combine(s, h);
}

AnalyticResult onoff_hr_common_rho(const RateVector& rates, double rho, std::size_t capacity) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  if (rates.size() == 0) throw std::invalid_argument("rate vector is empty");
  std::vector<double> lambda = rates.rates;
  std::stable_sort(lambda.begin(), lambda.end(), std::greater<>());
  const std::size_t n = lambda.size();
  const bool log_space = n > 50;
  const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);

  double hits = 0.0;  // sum_i lambda_i h_i
  for (std::size_t i = 0; i < n; ++i) {
    if (i < capacity) {
      hits += lambda[i];
      continue;
    }
    // i more popular objects, at most B-1 of them on.
    double h = 0.0;
    for (std::size_t k = 0; k < capacity; ++k) {
      const auto m = static_cast<double>(i);
      const auto kk = static_cast<double>(k);
      if (log_space) {
        if (rho == 1.0) continue;  // every term has a positive power of 1 - rho
        const double lc = std::lgamma(m + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(m - kk + 1.0);
        h += std::exp(lc + kk * std::log(rho) + (m - kk) * std::log1p(-rho));
      } else {
        h += boost::math::binomial_coefficient<double>(static_cast<unsigned>(i), static_cast<unsigned>(k)) *
             std::pow(rho, kk) * std::pow(1.0 - rho, m - kk);
      }
    }
    hits += lambda[i] * h;
  }
  return {hits / total, rho * hits};
}

OnOffRecursionTable onoff_recursion_table(const OnOffParams& params, std::size_t capacity) {
  const SortedOnOff s = sorted_onoff(params);
  const std::size_t n = s.lambda.size();
  const std::size_t b = capacity;
  OnOffRecursionTable t;
  t.p.assign(n + 1, std::vector<double>(b + 1, 0.0));
  t.r.assign(n + 1, std::vector<double>(b + 1, 0.0));
  if (b == 0) {
    for (std::size_t l = 1; l <= n; ++l) t.p[l][0] = 1.0;
    return t;
  }
  // Objects are 1-based below: lambda_l = s.lambda[l - 1].
  auto pi1 = [&](std::size_t l) { return s.on[l - 1]; };
  auto pi0 = [&](std::size_t l) { return s.off[l - 1]; };
  auto lam = [&](std::size_t l) { return s.lambda[l - 1]; };
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };

  t.p[1][0] = pi0(1);
  t.p[1][1] = pi1(1);
  t.r[1][1] = lam(1);
  for (std::size_t l = 2; l <= n; ++l) {
    auto& p = t.p;
    auto& r = t.r;
    p[l][0] = p[l - 1][0] * pi0(l);
    for (std::size_t k = 1; k < std::min(l, b); ++k) {
      const double in = p[l - 1][k - 1] * pi1(l);
      const double stay = p[l - 1][k] * pi0(l);
      p[l][k] = in + stay;
      r[l][k] = ratio(in * (r[l - 1][k - 1] + lam(l)) + stay * r[l - 1][k], in + stay);
    }
    if (l <= b) {
      p[l][l] = p[l - 1][l - 1] * pi1(l);
      r[l][l] = r[l - 1][l - 1] + lam(l);
    } else {
      const double in = p[l - 1][b - 1] * pi1(l);
      const double full = p[l - 1][b];
      p[l][b] = in + full;
      r[l][b] = ratio(in * (r[l - 1][b - 1] + lam(l)) + full * r[l - 1][b], in + full);
    }
  }
  return t;
}

AnalyticResult onoff_hr_recursive(const OnOffParams& params, std::size_t capacity) {
  const OnOffRecursionTable t = onoff_recursion_table(params, capacity);
  const std::size_t n = params.size();
  double rate = 0.0;
  for (std::size_t k = 1; k < t.p[n].size(); ++k) rate += t.p[n][k] * t.r[n][k];
  double offered = 0.0;
  for (std::size_t i = 0; i < n; ++i) offered += params.request_rate[i] * params.on_probability(i);
  return {rate / offered, rate};
}

AnalyticResult mmpp_hr(const MmppParams& params, std::size_t capacity) {
  const auto gamma = params.stationary();
  AnalyticResult out;
  for (std::size_t x = 0; x < params.states(); ++x) {
    std::vector<double> r = params.request_rates[x];
    std::stable_sort(r.begin(), r.end(), std::greater<>());
    const std::size_t b = std::min(capacity, r.size());
    const double top = std::accumulate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(b), 0.0);
    const double total = std::accumulate(r.begin(), r.end(), 0.0);
    out.hit_probability += gamma[x] * top / total;
    out.hit_rate += gamma[x] * top;
  }
  return out;
}

}  // namespace hrbound
