#include "szd/basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "szd/errors.hpp"

namespace szd {

namespace {

void check_point(double u, long j, double x) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("basis: u must be positive and finite");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("basis: x must be nonnegative and finite");
  if (j < 0) throw DomainError("basis: j must be nonnegative");
}

const std::array<double, 16>& small_stirling_errors() {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> t{};
    const double log_sqrt_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    for (int n = 1; n < 16; ++n) {
      const double logn = std::log(static_cast<double>(n));
      t[n] = std::lgamma(n + 1.0) + n - log_sqrt_2pi - (n + 0.5) * logn;
    }
    return t;
  }();
  return table;
}

}  // namespace

double stirling_error(long n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n < 16) return small_stirling_errors()[static_cast<std::size_t>(n)];
  const double n1 = 1.0 / static_cast<double>(n);
  const double n2 = n1 * n1;
  if (n > 500) return (S0 - S1 * n2) * n1;
  if (n > 80) return (S0 - (S1 - S2 * n2) * n2) * n1;
  if (n > 35) return (S0 - (S1 - (S2 - S3 * n2) * n2) * n2) * n1;
  return (S0 - (S1 - (S2 - (S3 - S4 * n2) * n2) * n2) * n2) * n1;
}

double poisson_deviance(long j, double lambda) {
  const double x = static_cast<double>(j);
  if (j == 0) return lambda;
  if (std::fabs(x - lambda) < 0.1 * (x + lambda)) {
    // series in v = (x - lambda)/(x + lambda)
    const double v = (x - lambda) / (x + lambda);
    double s = (x - lambda) * v;
    double ej = 2.0 * x * v;
    for (int k = 1; k < 1000; ++k) {
      ej *= v * v;
      const double s1 = s + ej / (2 * k + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / lambda) + lambda - x;
}

double log_szasz_weight(double u, long j, double x) {
  check_point(u, j, x);
  const double lambda = u * x;
  if (lambda == 0.0) return j == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (j == 0) return -lambda;
  return -stirling_error(j) - poisson_deviance(j, lambda) -
         0.5 * std::log(2.0 * std::numbers::pi * static_cast<double>(j));
}

double szasz_weight(double u, long j, double x) { return std::exp(log_szasz_weight(u, j, x)); }

double poisson_upper_tail(double u, double x, long J) {
  check_point(u, 0, x);
  if (J < 0) return 1.0;
  const double lambda = u * x;
  if (lambda == 0.0) return 0.0;
  // P(N > J) = P(J + 1, lambda), the regularized lower incomplete gamma function
  return boost::math::gamma_p(static_cast<double>(J) + 1.0, lambda);
}

long truncation_index(double u, double x, double eps) {
  check_point(u, 0, x);
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("truncation_index: eps must lie in (0,1)");
  const double lambda = u * x;
  if (lambda == 0.0) return 0;
  if (lambda > kMaxPoissonMean) throw DomainError("truncation_index: u*x exceeds the supported Poisson mean 1e10");

  long lo = static_cast<long>(std::ceil(lambda));
  if (poisson_upper_tail(u, x, lo) <= eps) return lo;
  long step = std::max(1L, static_cast<long>(std::sqrt(lambda)));
  long hi = lo + step;
  while (poisson_upper_tail(u, x, hi) > eps) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  // invariant: tail(lo) > eps >= tail(hi)
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (poisson_upper_tail(u, x, mid) > eps)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

void validate(const TruncationSpec& spec) {
  if (const auto* t = std::get_if<TailEpsilon>(&spec)) {
    if (!(t->eps > 0.0 && t->eps < 1.0)) throw DomainError("TailEpsilon: eps must lie in (0,1)");
  } else if (std::get<FixedJ>(spec).J < 0) {
    throw DomainError("FixedJ: J must be nonnegative");
  }
}

long resolve_truncation(const TruncationSpec& spec, double u, double x) {
  validate(spec);
  if (const auto* t = std::get_if<TailEpsilon>(&spec)) return truncation_index(u, x, t->eps);
  return std::get<FixedJ>(spec).J;
}

}  // namespace szd
