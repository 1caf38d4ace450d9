#include "szd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "szd/errors.hpp"
#include "szd/moments.hpp"

namespace szd {

namespace {

void check_domain(Interval d) {
  if (!(d.lo >= 0.0) || !(d.hi > d.lo) || !std::isfinite(d.hi))
    throw DomainError("bounds: domain must be a finite interval inside [0, inf)");
}

double resolve_step(double delta, double step) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("bounds: delta must be positive");
  if (step == 0.0) return delta / 64.0;
  if (!(step > 0.0) || step > delta / 8.0 * (1.0 + 1e-12)) throw DomainError("bounds: step must lie in (0, delta/8]");
  return step;
}

std::vector<double> sample(const RealFunction& g, Interval d, double step) {
  const auto n = static_cast<std::size_t>(std::floor((d.hi - d.lo) / step + 1e-9));
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = g(d.lo + static_cast<double>(i) * step);
  return v;
}

}  // namespace

Interval default_modulus_domain(double delta) { return {0.0, 2.5 + 4.0 * delta}; }

ModulusEstimate modulus(const RealFunction& g, double delta, Interval domain, double step) {
  step = resolve_step(delta, step);
  check_domain(domain);
  const auto v = sample(g, domain, step);
  const auto width = static_cast<std::size_t>(std::floor(delta / step + 1e-9));

  // max - min over every window of width+1 consecutive samples
  std::deque<std::size_t> hi, lo;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (!hi.empty() && v[hi.back()] <= v[i]) hi.pop_back();
    while (!lo.empty() && v[lo.back()] >= v[i]) lo.pop_back();
    hi.push_back(i);
    lo.push_back(i);
    while (hi.front() + width < i) hi.pop_front();
    while (lo.front() + width < i) lo.pop_front();
    best = std::max(best, v[hi.front()] - v[lo.front()]);
  }
  return {delta, best, step, domain};
}

ModulusEstimate second_modulus(const RealFunction& g, double delta, Interval domain, double step) {
  step = resolve_step(delta, step);
  check_domain(domain);
  const auto v = sample(g, domain, step);
  const auto width = static_cast<std::size_t>(std::floor(delta / step + 1e-9));
  double best = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const std::size_t kmax = std::min({width, i, v.size() - 1 - i});
    for (std::size_t k = 1; k <= kmax; ++k) best = std::max(best, std::fabs(v[i + k] - 2.0 * v[i] + v[i - k]));
  }
  return {delta, best, step, domain};
}

KFunctionalBound theorem_kfunctional_bound(const RealFunction& g, double u, double x, double C) {
  const double delta_n = central_moment(u, x, 2) + 1.0 / (u * u);
  const double reach = std::max(std::sqrt(delta_n) / 2.0, 1.0 / u);
  return theorem_kfunctional_bound(g, u, x, Interval{0.0, std::max(2.5, x) + 4.0 * reach}, C);
}

KFunctionalBound theorem_kfunctional_bound(const RealFunction& g, double u, double x, Interval domain, double C) {
  if (!(C >= 0.0)) throw DomainError("kfunctional bound: C must be nonnegative");
  KFunctionalBound b{};
  b.delta_n = central_moment(u, x, 2) + 1.0 / (u * u);
  b.gamma_n = central_moment(u, x, 1);
  b.component_omega2 = C * second_modulus(g, std::sqrt(b.delta_n) / 2.0, domain).value;
  b.component_omega = modulus(g, b.gamma_n, domain).value;
  return b;
}

double lipschitz_maximal(const RealFunction& g, double x, double s, const LipschitzGrid& grid) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("lipschitz_maximal: s must lie in (0,1]");
  if (!(x >= 0.0)) throw DomainError("lipschitz_maximal: x must be nonnegative");
  check_domain(grid.domain);
  if (!(grid.step > 0.0)) throw DomainError("lipschitz_maximal: step must be positive");
  const double gx = g(x);
  const auto n = static_cast<long>(std::floor((grid.domain.hi - grid.domain.lo) / grid.step + 1e-9));
  double best = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double t = grid.domain.lo + static_cast<double>(i) * grid.step;
    const double d = std::fabs(t - x);
    if (d < 0.5 * grid.step) continue;
    best = std::max(best, std::fabs(g(t) - gx) / std::pow(d, s));
  }
  return best;
}

LipschitzCheck lipschitz_bound_check(const TargetFunction& g, double s, double u, double x, const LipschitzGrid& grid,
                                     double tol) {
  LipschitzCheck c{};
  c.lhs = std::fabs(apply(g, u, x).value - g(x));
  c.tau = lipschitz_maximal([&g](double t) { return g(t); }, x, s, grid);
  c.rhs = c.tau * std::pow(central_moment(u, x, 2), s / 2.0);
  c.holds = c.lhs <= c.rhs + tol;
  return c;
}

double lip_space_bound(double M, double m1, double m2, double s, double u, double x) {
  if (!(M > 0.0)) throw DomainError("lip_space_bound: M must be positive");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("lip_space_bound: s must lie in (0,1]");
  if (!(x > 0.0)) throw DomainError("lip_space_bound: x must be positive");
  const double denom = x * (x * m1 + m2);
  if (!(denom > 0.0)) throw DomainError("lip_space_bound: x (x m1 + m2) must be positive");
  return M * std::pow(central_moment(u, x, 2) / denom, s / 2.0);
}

TotalVariationEstimate total_variation(const RealFunction& f, Interval interval, long samples,
                                       const std::vector<double>& breakpoints) {
  if (samples < 2) throw DomainError("total_variation: need at least two samples");
  if (!(interval.hi >= interval.lo)) throw DomainError("total_variation: empty interval");
  if (interval.hi == interval.lo) return {interval, 0.0, 1};
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 5 * breakpoints.size());
  const double h = (interval.hi - interval.lo) / static_cast<double>(samples - 1);
  for (long i = 0; i < samples; ++i) pts.push_back(i + 1 == samples ? interval.hi : interval.lo + i * h);
  for (double b : breakpoints) {
    for (double off : {-1e-6, -1e-9, 0.0, 1e-9, 1e-6}) {
      const double t = b + off;
      if (t >= interval.lo && t <= interval.hi) pts.push_back(t);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double v = 0.0;
  double prev = f(pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double cur = f(pts[i]);
    v += std::fabs(cur - prev);
    prev = cur;
  }
  return {interval, v, static_cast<long>(pts.size())};
}

RealFunction auxiliary_derivative(const DbvSpec& spec, double x) {
  const double left_x = spec.gprime_left(x);
  const double right_x = spec.gprime_right(x);
  auto gl = spec.gprime_left;
  auto gr = spec.gprime_right;
  return [=](double t) {
    if (t < x) return gl(t) - left_x;
    if (t > x) return gr(t) - right_x;
    return 0.0;
  };
}

DbvBound dbv_bound(const DbvSpec& spec, double u, double x, long tv_samples) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("dbv_bound: x must be positive");
  if (!(u > 1.0) || !std::isfinite(u)) throw DomainError("dbv_bound: u must exceed 1");
  if (!spec.gprime_left || !spec.gprime_right) throw DomainError("dbv_bound: one-sided derivatives required");

  const double zeta2 = x + 1.0 / u;
  const double gp = spec.gprime_right(x);
  const double gm = spec.gprime_left(x);
  const RealFunction aux = auxiliary_derivative(spec, x);
  auto bps = spec.breakpoints;
  bps.push_back(x);
  auto V = [&](double a, double b) { return total_variation(aux, {a, b}, tv_samples, bps).value; };

  const double root_u = std::sqrt(u);
  const auto jmax = static_cast<long>(std::floor(root_u));
  double left_sum = 0.0, right_sum = 0.0;
  for (long j = 1; j <= jmax; ++j) {
    left_sum += V(x - x / static_cast<double>(j), x);
    right_sum += V(x, x + x / static_cast<double>(j));
  }
  const double outer = 2.0 * zeta2 / (x * u);

  DbvBound b{};
  b.terms[0] = std::fabs(gp + gm) / (2.0 * u);
  b.terms[1] = std::sqrt(1.0 / (2.0 * u)) * std::fabs(gp - gm) * std::sqrt(zeta2);
  b.terms[2] = outer * left_sum;
  b.terms[3] = x / root_u * V(x - x / root_u, x);
  b.terms[4] = x / root_u * V(x, x + x / root_u);
  b.terms[5] = outer * right_sum;
  b.total = 0.0;
  for (double t : b.terms) b.total += t;
  return b;
}

DbvCheck dbv_empirical_check(const DbvSpec& spec, double u, double x, double tol) {
  const auto bound = dbv_bound(spec, u, x);
  const double lhs = std::fabs(apply(spec.g, u, x).value - spec.g(x));
  return {lhs, bound.total, lhs <= bound.total + tol};
}

}  // namespace szd
