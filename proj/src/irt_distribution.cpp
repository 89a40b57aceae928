#include "hrbound/irt_distribution.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace hrbound {

namespace {

constexpr std::array<std::string_view, 6> kFamilyNames = {
    "exponential", "gpd", "uniform", "hyperexponential", "gamma", "erlang"};

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_time(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
}

struct Validator {
  void operator()(const Exponential& e) const { require(positive(e.rate), "exponential rate must be > 0"); }
  void operator()(const GeneralizedPareto& g) const {
    require(std::isfinite(g.shape) && g.shape >= 0.0, "GPD shape must be >= 0");
    require(positive(g.scale), "GPD scale must be > 0");
  }
  void operator()(const Uniform& u) const { require(positive(u.upper), "uniform upper bound must be > 0"); }
  void operator()(const Hyperexponential& h) const {
    require(positive(h.p1) && positive(h.p2), "hyperexponential branch probabilities must be > 0");
    require(std::abs(h.p1 + h.p2 - 1.0) <= 1e-12, "hyperexponential probabilities must sum to 1");
    require(positive(h.rate1) && positive(h.rate2), "hyperexponential rates must be > 0");
  }
  void operator()(const Gamma& g) const {
    require(positive(g.shape), "gamma shape must be > 0");
    require(positive(g.scale), "gamma scale must be > 0");
  }
  void operator()(const Erlang& e) const {
    require(e.shape >= 1, "Erlang shape must be a positive integer");
    require(positive(e.rate), "Erlang rate must be > 0");
  }
};

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::string_view family_name(IrtFamily family) { return kFamilyNames.at(static_cast<std::size_t>(family)); }

std::optional<IrtFamily> parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == name) return static_cast<IrtFamily>(i);
  }
  if (name == "generalized_pareto") return IrtFamily::generalized_pareto;
  if (name == "hyperexp") return IrtFamily::hyperexponential;
  return std::nullopt;
}

IrtDistribution::IrtDistribution(Params params) : params_(params) { std::visit(Validator{}, params_); }

double detail::gamma_hazard(double shape, double scale, double age) {
  if (shape == 0.5) return gamma_half_hazard(scale, age);
  if (shape == 1.0) return 1.0 / scale;
  if (age <= 0.0) return shape < 1.0 ? kHazardCap : 0.0;
  const double x = age / scale;
  const double q = boost::math::gamma_q(shape, x);
  if (q > 1e-280) return boost::math::gamma_p_derivative(shape, x) / (scale * q);
  // Asymptotic expansion of Q(k,x)·Γ(k) / (x^(k-1) e^(-x)).
  const double a = shape - 1.0;
  const double inv = 1.0 / x;
  const double ratio = 1.0 + a * inv * (1.0 + (a - 1.0) * inv * (1.0 + (a - 2.0) * inv));
  return 1.0 / (scale * ratio);
}

double hazard_rate(const IrtDistribution& dist, double age) {
  check_time(age);
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return e.rate; },
          [age](const GeneralizedPareto& g) { return detail::gpd_hazard(g.shape, g.scale, age); },
          [age](const Uniform& u) {
            if (age >= u.upper) throw std::domain_error("uniform hazard diverges at or beyond the upper bound");
            return detail::uniform_hazard(u.upper, age);
          },
          [age](const Hyperexponential& h) { return detail::hyperexp_hazard(h, age); },
          [age](const Gamma& g) { return detail::gamma_hazard(g.shape, g.scale, age); },
          [age](const Erlang& e) { return detail::erlang_hazard(e.shape, e.rate, age); },
      },
      dist.params());
}

double irt_survival(const IrtDistribution& dist, double t) {
  check_time(t);
  return std::visit(
      Overloaded{
          [t](const Exponential& e) { return std::exp(-e.rate * t); },
          [t](const GeneralizedPareto& g) {
            if (g.shape == 0.0) return std::exp(-t / g.scale);
            return std::exp(-std::log1p(g.shape * t / g.scale) / g.shape);
          },
          [t](const Uniform& u) { return t >= u.upper ? 0.0 : 1.0 - t / u.upper; },
          [t](const Hyperexponential& h) { return h.p1 * std::exp(-h.rate1 * t) + h.p2 * std::exp(-h.rate2 * t); },
          [t](const Gamma& g) { return boost::math::gamma_q(g.shape, t / g.scale); },
          [t](const Erlang& e) { return boost::math::gamma_q(static_cast<double>(e.shape), e.rate * t); },
      },
      dist.params());
}

double irt_cdf(const IrtDistribution& dist, double t) {
  check_time(t);
  return std::visit(
      Overloaded{
          [t](const Exponential& e) { return -std::expm1(-e.rate * t); },
          [t](const GeneralizedPareto& g) {
            if (g.shape == 0.0) return -std::expm1(-t / g.scale);
            return -std::expm1(-std::log1p(g.shape * t / g.scale) / g.shape);
          },
          [t](const Uniform& u) { return t >= u.upper ? 1.0 : t / u.upper; },
          [t](const Hyperexponential& h) {
            return -(h.p1 * std::expm1(-h.rate1 * t) + h.p2 * std::expm1(-h.rate2 * t));
          },
          [t](const Gamma& g) { return boost::math::gamma_p(g.shape, t / g.scale); },
          [t](const Erlang& e) { return boost::math::gamma_p(static_cast<double>(e.shape), e.rate * t); },
      },
      dist.params());
}

double irt_density(const IrtDistribution& dist, double t) {
  check_time(t);
  return std::visit(
      Overloaded{
          [t](const Exponential& e) { return e.rate * std::exp(-e.rate * t); },
          [t](const GeneralizedPareto& g) {
            if (g.shape == 0.0) return std::exp(-t / g.scale) / g.scale;
            return std::exp(-(1.0 / g.shape + 1.0) * std::log1p(g.shape * t / g.scale)) / g.scale;
          },
          [t](const Uniform& u) { return t >= u.upper ? 0.0 : 1.0 / u.upper; },
          [t](const Hyperexponential& h) {
            return h.p1 * h.rate1 * std::exp(-h.rate1 * t) + h.p2 * h.rate2 * std::exp(-h.rate2 * t);
          },
          [t](const Gamma& g) { return boost::math::gamma_p_derivative(g.shape, t / g.scale) / g.scale; },
          [t](const Erlang& e) {
            return e.rate * boost::math::gamma_p_derivative(static_cast<double>(e.shape), e.rate * t);
          },
      },
      dist.params());
}

double sample_irt(const IrtDistribution& dist, Rng& rng) {
  return std::visit(
      Overloaded{
          [&rng](const Exponential& e) { return -std::log(uniform_open(rng)) / e.rate; },
          [&rng](const GeneralizedPareto& g) {
            const double u = uniform_open(rng);
            if (g.shape == 0.0) return -g.scale * std::log(u);
            return g.scale * std::expm1(-g.shape * std::log(u)) / g.shape;
          },
          [&rng](const Uniform& u) { return u.upper * uniform_open(rng); },
          [&rng](const Hyperexponential& h) {
            const double rate = uniform_open(rng) < h.p1 ? h.rate1 : h.rate2;
            return -std::log(uniform_open(rng)) / rate;
          },
          [&rng](const Gamma& g) {
            double x = 0.0;
            while (x <= 0.0) x = std::gamma_distribution<double>(g.shape, g.scale)(rng);
            return x;
          },
          [&rng](const Erlang& e) {
            double log_sum = 0.0;
            for (int j = 0; j < e.shape; ++j) log_sum += std::log(uniform_open(rng));
            return -log_sum / e.rate;
          },
      },
      dist.params());
}

double mean_irt(const IrtDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return 1.0 / e.rate; },
          [](const GeneralizedPareto& g) {
            if (g.shape >= 1.0) throw std::domain_error("GPD with shape >= 1 has infinite mean");
            return g.scale / (1.0 - g.shape);
          },
          [](const Uniform& u) { return u.upper / 2.0; },
          [](const Hyperexponential& h) { return h.p1 / h.rate1 + h.p2 / h.rate2; },
          [](const Gamma& g) { return g.shape * g.scale; },
          [](const Erlang& e) { return e.shape / e.rate; },
      },
      dist.params());
}

IrtDistribution from_rate(IrtFamily family, double rate, const ShapeParams& shape) {
  require(positive(rate), "rate must be > 0");
  switch (family) {
    case IrtFamily::exponential:
      return Exponential{rate};
    case IrtFamily::generalized_pareto:
      require(std::isfinite(shape.shape) && shape.shape >= 0.0 && shape.shape < 1.0,
              "GPD shape must lie in [0, 1) for a finite rate");
      return GeneralizedPareto{shape.shape, (1.0 - shape.shape) / rate};
    case IrtFamily::uniform:
      return Uniform{2.0 / rate};
    case IrtFamily::hyperexponential: {
      require(std::isfinite(shape.scv) && shape.scv > 1.0, "hyperexponential SCV must be > 1");
      // Balanced means p1/theta1 = p2/theta2 = nu, mean 2*nu = 1/rate.
      const double p1 = (1.0 - std::sqrt((shape.scv - 1.0) / (shape.scv + 1.0))) / 2.0;
      const double p2 = 1.0 - p1;
      const double nu = 1.0 / (2.0 * rate);
      return Hyperexponential{p1, p2, p1 / nu, p2 / nu};
    }
    case IrtFamily::gamma:
      require(positive(shape.shape), "gamma shape must be > 0");
      return Gamma{shape.shape, 1.0 / (shape.shape * rate)};
    case IrtFamily::erlang: {
      require(shape.shape >= 1.0 && std::floor(shape.shape) == shape.shape,
              "Erlang shape must be a positive integer");
      const int k = static_cast<int>(shape.shape);
      return Erlang{k, k * rate};
    }
  }
  throw std::invalid_argument("unknown IRT family");
}

ShapeParams default_shape(IrtFamily family) {
  switch (family) {
    case IrtFamily::generalized_pareto:
      return {0.48, 2.0};
    case IrtFamily::gamma:
      return {0.5, 2.0};
    case IrtFamily::erlang:
      return {2.0, 2.0};
    default:
      return {0.0, 2.0};
  }
}

}  // namespace hrbound
