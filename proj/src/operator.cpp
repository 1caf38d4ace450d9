#include "szd/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "szd/errors.hpp"

namespace szd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_operator_args(const TargetFunction& g, double u, double x) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("operator: u must be positive and finite");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("operator: x must be nonnegative and finite");
  if (!(u > g.growth_rate())) throw DivergentIntegral("operator: u must exceed the growth rate of g");
}

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// ln of the envelope integral \int s_{u,j}(t) |g|-bound(t) dt
double log_envelope(double u, long j, const TargetFunction& g) {
  if (const auto* b = std::get_if<BlackBox>(&g.form())) {
    if (b->bound_scale == 0.0) return kNegInf;
    return std::log(b->bound_scale) + log_add(log_exact_basis_integral(u, j, 0, b->growth_rate),
                                              log_exact_basis_integral(u, j, b->bound_power, b->growth_rate));
  }
  double acc = kNegInf;
  for (const auto& t : g.exp_poly_terms()) {
    if (t.coeff == 0.0) continue;
    acc = log_add(acc, std::log(std::fabs(t.coeff)) + log_exact_basis_integral(u, j, t.power, t.rate));
  }
  return acc;
}

// u * s_{u,j}(x) * envelope_j
double envelope_term(const TargetFunction& g, double u, double x, long j) {
  const double lw = log_szasz_weight(u, j, x);
  if (lw == kNegInf) return 0.0;
  return u * std::exp(lw + log_envelope(u, j, g));
}

// Upper bound on sum_{j > J} envelope_term(j). Terms rise to the effective
// mode and then fall faster than geometrically; once past the mode the
// remainder after term k is at most t_k * rho / (1 - rho).
double envelope_tail(const TargetFunction& g, double u, double x, long J) {
  if (u * x == 0.0) return 0.0;
  // the envelope peaks no later than the mean of Poisson(u x * u/(u-a)) shifted by the power
  const double rate = std::max(0.0, g.growth_rate());
  const double mode = u * x * u / (u - rate) + g.max_power() + 1.0;
  const long past_mode = static_cast<long>(std::ceil(mode));
  double tail = 0.0;
  double prev = envelope_term(g, u, x, J);
  for (long k = J + 1;; ++k) {
    const double t = envelope_term(g, u, x, k);
    tail += t;
    if (k <= past_mode) {
      prev = t;
      continue;
    }
    const double rho = prev > 0.0 ? t / prev : 0.0;
    if (t == 0.0 && prev == 0.0) return tail;
    if (rho < 1.0) {
      const double rest = t * rho / (1.0 - rho);
      if (rest <= 1e-6 * tail) return tail + rest;
    }
    prev = t;
  }
}

struct SeriesPlan {
  long J = 0;
  std::vector<double> log_weights;  // ln s_{u,j}(x), j = 0..J
  std::vector<double> envelope;     // u s_{u,j}(x) env_j
  double envelope_sum = 0.0;
};

SeriesPlan plan_series(const TargetFunction& g, double u, double x, const TruncationSpec& trunc) {
  SeriesPlan plan;
  const long J0 = resolve_truncation(trunc, u, x);
  const auto* tail_eps = std::get_if<TailEpsilon>(&trunc);
  double prev = std::numeric_limits<double>::infinity();
  for (long j = 0;; ++j) {
    const double lw = log_szasz_weight(u, j, x);
    const double env = lw == kNegInf ? 0.0 : u * std::exp(lw + log_envelope(u, j, g));
    if (j > J0) {
      if (!tail_eps) break;
      // Past the Poisson index: stop once the envelope has turned over and
      // the next term is negligible against what has been accumulated.
      const bool negligible = env <= 0.01 * tail_eps->eps * plan.envelope_sum;
      if ((negligible && env <= prev) || (env == 0.0 && plan.envelope_sum == 0.0)) break;
    }
    plan.log_weights.push_back(lw);
    plan.envelope.push_back(env);
    plan.envelope_sum += env;
    prev = env;
  }
  plan.J = static_cast<long>(plan.log_weights.size()) - 1;
  return plan;
}

}  // namespace

SequenceRule SequenceRule::identity() { return SequenceRule(Kind::Identity, 1.0, {}); }

SequenceRule SequenceRule::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("SequenceRule: power must be positive");
  return SequenceRule(Kind::Power, p, {});
}

SequenceRule SequenceRule::explicit_values(std::vector<double> values) {
  if (values.empty()) throw DomainError("SequenceRule: explicit sequence is empty");
  if (!(values.front() >= 1.0)) throw DomainError("SequenceRule: first value must be >= 1");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw DomainError("SequenceRule: sequence must be strictly increasing");
  return SequenceRule(Kind::Explicit, 1.0, std::move(values));
}

double SequenceRule::operator()(long n) const {
  if (n < 1) throw DomainError("SequenceRule: n must be >= 1");
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::Identity:
      return nd;
    case Kind::Power:
      return exponent_ == 2.0 ? nd * nd : std::pow(nd, exponent_);
    case Kind::Explicit:
      if (static_cast<std::size_t>(n) > values_.size()) throw DomainError("SequenceRule: n beyond explicit sequence");
      return values_[static_cast<std::size_t>(n - 1)];
  }
  return nd;
}

std::string SequenceRule::label() const {
  switch (kind_) {
    case Kind::Identity:
      return "n";
    case Kind::Power: {
      std::ostringstream os;
      os << "n^" << exponent_;
      return os.str();
    }
    case Kind::Explicit:
      return "explicit";
  }
  return "?";
}

OperatorValue apply(const TargetFunction& g, double u, double x, const TruncationSpec& trunc,
                    const QuadratureConfig& cfg) {
  validate(trunc);
  validate(cfg);
  check_operator_args(g, u, x);

  const SeriesPlan plan = plan_series(g, u, x, trunc);
  OperatorValue out;
  out.series_terms_used = plan.J + 1;
  out.tail_mass = poisson_upper_tail(u, x, plan.J);
  double skipped = 0.0;

  CompensatedSum sum;
  if (g.has_exact_integrals()) {
    const auto terms = g.exp_poly_terms();
    for (long j = 0; j <= plan.J; ++j) {
      const double lw = plan.log_weights[static_cast<std::size_t>(j)];
      if (lw == kNegInf) continue;
      for (const auto& t : terms) {
        if (t.coeff == 0.0) continue;
        sum.add(u * t.coeff * std::exp(lw + log_exact_basis_integral(u, j, t.power, t.rate)));
      }
    }
    out.inner_integral_error = 4.0 * std::numeric_limits<double>::epsilon() * plan.envelope_sum;
  } else {
    // Numeric inner integrals are only worth computing where the envelope
    // says the term can matter; the rest is booked as neglected.
    const double eps = std::holds_alternative<TailEpsilon>(trunc) ? std::get<TailEpsilon>(trunc).eps : kDefaultTailEps;
    const double skip_below = 1e-3 * eps * plan.envelope_sum;
    for (long j = 0; j <= plan.J; ++j) {
      const auto idx = static_cast<std::size_t>(j);
      if (plan.envelope[idx] == 0.0) continue;
      if (plan.envelope[idx] <= skip_below) {
        skipped += plan.envelope[idx];
        continue;
      }
      const auto r = numeric_basis_integral(u, j, g, cfg);
      const double w = u * std::exp(plan.log_weights[idx]);
      sum.add(w * r.value);
      out.inner_integral_error += w * r.error;
    }
  }
  out.value = sum.value();
  out.tail_bound = envelope_tail(g, u, x, plan.J) + skipped;
  return out;
}

OperatorValue apply_truncated(const TargetFunction& g, double u, double x, long J, const QuadratureConfig& cfg) {
  return apply(g, u, x, FixedJ{J}, cfg);
}

double kernel_value(double u, double x, double t, const TruncationSpec& trunc) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("kernel_value: t must be nonnegative and finite");
  // s_{u,j}(min(x,t)) bounds one factor of every dropped term, so the
  // neglected part is at most u * eps and the cut is symmetric
  const long J = resolve_truncation(trunc, u, std::min(x, t));
  CompensatedSum sum;
  for (long j = 0; j <= J; ++j) {
    const double a = log_szasz_weight(u, j, x);
    const double b = log_szasz_weight(u, j, t);
    if (a == kNegInf || b == kNegInf) continue;
    sum.add(std::exp(a + b));
  }
  return u * sum.value();
}

double kernel_cdf(double u, double x, double y, const TruncationSpec& trunc) {
  if (!(y >= 0.0)) throw DomainError("kernel_cdf: y must be nonnegative");
  const long J = resolve_truncation(trunc, u, x);
  if (y == 0.0) return 0.0;
  const bool infinite = std::isinf(y);
  CompensatedSum sum;
  for (long j = 0; j <= J; ++j) {
    const double lw = log_szasz_weight(u, j, x);
    if (lw == kNegInf) continue;
    const double p = infinite ? 1.0 : boost::math::gamma_p(static_cast<double>(j) + 1.0, u * y);
    sum.add(std::exp(lw) * p);
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

}  // namespace szd
