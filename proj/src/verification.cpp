#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "szd/bounds.hpp"
#include "szd/moments.hpp"
#include "szd/report.hpp"

namespace szd {

namespace {

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), std::numeric_limits<double>::min()); }

// (t - x)^m expanded into monomials
TargetFunction shifted_power(double x, int m) {
  std::vector<MonomialTerm> terms;
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    terms.push_back({binom * std::pow(-x, m - i), i});
    binom = binom * (m - i) / (i + 1);
  }
  return TargetFunction::monomials(std::move(terms));
}

DbvSpec abs_kink_spec() {
  return {parse_target("abs1"), [](double t) { return t <= 1.0 ? -1.0 : 1.0; },
          [](double t) { return t < 1.0 ? -1.0 : 1.0; }, {1.0}};
}

double sup_error(const TargetFunction& g, double u) {
  double worst = 0.0;
  for (int i = 0; i <= 25; ++i) {
    const double x = 0.1 * i;
    worst = std::max(worst, std::fabs(apply(g, u, x).value - g(x)));
  }
  return worst;
}

CheckResult basis_normalization() {
  const double eps = kDefaultTailEps;
  double worst = 0.0;
  for (double u : {1.0, 10.0, 100.0})
    for (double x : {0.0, 0.5, 1.0, 2.5}) {
      const long J = truncation_index(u, x, eps);
      double s = 0.0;
      for (long j = 0; j <= J; ++j) s += szasz_weight(u, j, x);
      worst = std::max(worst, std::fabs(1.0 - s));
    }
  return {"basis weights sum to 1 within eps", worst, eps, worst <= eps, ""};
}

CheckResult raw_moment_closed_forms(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> log_u(0.0, std::log(1000.0));
  std::uniform_real_distribution<double> xs(0.0, 2.5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double u = std::exp(log_u(rng));
    const double x = xs(rng);
    const double expect[4] = {1.0, 1.0 / u + x, (2 + 4 * x * u + x * x * u * u) / (u * u),
                              (6 + 18 * x * u + 9 * x * x * u * u + x * x * x * u * u * u) / (u * u * u)};
    for (int m = 0; m <= 3; ++m) worst = std::max(worst, rel_err(raw_moment(u, x, m), expect[m]));
  }
  return {"raw moments m<=3 match closed forms", worst, 1e-13, worst <= 1e-13, "50 random (u,x)"};
}

CheckResult central_moments_vs_series() {
  double worst = 0.0;
  for (double u : {5.0, 10.0, 100.0})
    for (double x : {0.1, 1.0, 2.5})
      for (int m = 0; m <= 6; ++m) worst = std::max(worst, rel_err(apply(shifted_power(x, m), u, x).value, central_moment(u, x, m)));
  return {"central moments m<=6 match operator series", worst, 1e-8, worst <= 1e-8, ""};
}

CheckResult recurrence_consistency(RecurrenceForm form) {
  const auto table = central_moment_table(6, form);
  int first_bad = -1;
  double worst = 0.0;
  for (int m = 0; m <= 6; ++m) {
    const auto expect = central_moment_poly(m);
    auto diff = table[static_cast<std::size_t>(m)] + expect.scaled(-1);
    for (const auto& [key, c] : diff.coeffs()) worst = std::max(worst, std::fabs(static_cast<double>(c)));
    if (!diff.coeffs().empty() && first_bad < 0) first_bad = m;
  }
  std::string detail = first_bad < 0 ? "exact agreement" : "first mismatch at m=" + std::to_string(first_bad);
  return {"recurrence reproduces binomial Omega_m, m<=6", worst, 1e-12, worst <= 1e-12, detail};
}

CheckResult zeta_identity() {
  double worst = 0.0;
  for (double u : {1.0, 10.0, 100.0, 1e4})
    for (double x : {0.0, 0.1, 1.0, 2.5}) {
      const double z = zeta(u, x).value;
      worst = std::max(worst, rel_err(2.0 * z * z / u, central_moment(u, x, 2)));
    }
  return {"Omega_2 = 2 zeta^2 / u", worst, 1e-14, worst <= 1e-14, ""};
}

CheckResult decay(int m) {
  const std::vector<double> grid = {1e2, 1e3, 1e4, 1e5, 1e6};
  const auto r = decay_order_check(m, 1.0, grid);
  const double dev = std::fabs(r.empirical_exponent - r.predicted_exponent);
  std::ostringstream d;
  d << "slope " << r.empirical_exponent << " vs " << r.predicted_exponent;
  return {"decay order of Omega_" + std::to_string(m), dev, 0.1, dev <= 0.1, d.str()};
}

CheckResult kernel_normalization() {
  double worst = 0.0;
  for (double u : {10.0, 100.0})
    for (double x : {0.5, 1.0, 2.0})
      worst = std::max(worst, std::fabs(1.0 - kernel_cdf(u, x, std::numeric_limits<double>::infinity())));
  return {"kernel integrates to 1", worst, 1e-10, worst <= 1e-10, ""};
}

CheckResult kernel_tail_bounds() {
  double worst = 0.0;
  for (double u : {100.0, 400.0})
    for (double x : {0.5, 1.0, 2.0}) {
      const double z2 = x + 1.0 / u;
      for (double y : {x / 4, x / 2}) worst = std::max(worst, kernel_cdf(u, x, y) / (2 * z2 / ((x - y) * (x - y) * u)));
      for (double z : {1.5 * x, 2 * x})
        worst = std::max(worst, (1.0 - kernel_cdf(u, x, z)) / (2 * z2 / ((z - x) * (z - x) * u)));
    }
  return {"kernel tail inequalities (ratio to bound)", worst, 1.0, worst <= 1.0, ""};
}

CheckResult lipschitz_bound() {
  const auto g = parse_target("expneg");
  double worst = 0.0;
  bool ok = true;
  for (double u : {50.0, 100.0, 400.0})
    for (double x : {0.5, 1.0, 2.0}) {
      const auto c = lipschitz_bound_check(g, 1.0, u, x);
      ok = ok && c.holds;
      worst = std::max(worst, c.lhs / c.rhs);
    }
  return {"Lipschitz maximal bound, g=e^-t, s=1", worst, 1.0, ok, "max lhs/rhs"};
}

CheckResult lip_space_monotone() {
  double prev = std::numeric_limits<double>::infinity();
  bool ok = true;
  double last = 0.0;
  for (double u : {10.0, 100.0, 1000.0, 1e4}) {
    last = lip_space_bound(1.0, 1.0, 1.0, 1.0, u, 1.0);
    ok = ok && last > 0.0 && last < prev;
    prev = last;
  }
  return {"Lip-space bound positive and decreasing in u", last, 0.0, ok, "value at u=1e4"};
}

CheckResult dbv_kink() {
  const auto spec = abs_kink_spec();
  double worst = 0.0;
  bool ok = true;
  for (double x : {0.5, 1.0, 1.5})
    for (double u : {100.0, 400.0, 900.0}) {
      const auto c = dbv_empirical_check(spec, u, x);
      ok = ok && c.holds;
      worst = std::max(worst, c.lhs / c.bound);
    }
  return {"DBV bound holds for |t-1|", worst, 1.0, ok, "max lhs/bound"};
}

CheckResult dbv_affine() {
  const double slope = 3.0;
  DbvSpec spec{TargetFunction::monomials({{2.0, 0}, {slope, 1}}), [=](double) { return slope; },
               [=](double) { return slope; }, {}};
  double worst = 0.0;
  for (double u : {10.0, 100.0, 1000.0})
    for (double x : {0.5, 1.0, 2.0}) {
      const auto c = dbv_empirical_check(spec, u, x);
      worst = std::max({worst, rel_err(c.lhs, slope / u), rel_err(c.bound, slope / u)});
    }
  return {"DBV bound attained by affine g", worst, 1e-12, worst <= 1e-12, ""};
}

CheckResult korovkin_test_functions() {
  double worst_ratio = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const char* name : {"t", "t2"}) {
    const auto g = parse_target(name);
    const double ratio = sup_error(g, 1e2) / sup_error(g, 1e4);
    worst_ratio = std::min(worst_ratio, ratio);
    ok = ok && ratio >= 50.0;
  }
  const auto one = parse_target("one");
  for (double u : {1e2, 1e4}) ok = ok && sup_error(one, u) <= 1e-12;
  return {"Korovkin: error drop u=1e2 -> 1e4", worst_ratio, 50.0, ok, "min ratio over t, t^2; g=1 exact"};
}

CheckResult korovkin_exp() {
  const auto g = parse_target("expneg");
  double prev = std::numeric_limits<double>::infinity();
  bool ok = true;
  double last = 0.0;
  for (int n = 10; n <= 100; n += 10) {
    last = sup_error(g, static_cast<double>(n) * n);
    ok = ok && last < prev;
    prev = last;
  }
  return {"Korovkin: e^-t error decreasing along u=n^2", last, 0.0, ok, "sup error at n=100"};
}

}  // namespace

VerificationReport run_verification_suite(const VerificationConfig& cfg) {
  VerificationReport r;
  r.checks.push_back(basis_normalization());
  r.checks.push_back(raw_moment_closed_forms(cfg.seed));
  r.checks.push_back(central_moments_vs_series());
  r.checks.push_back(recurrence_consistency(cfg.recurrence));
  r.checks.push_back(zeta_identity());
  for (int m = 1; m <= 4; ++m) r.checks.push_back(decay(m));
  r.checks.push_back(kernel_normalization());
  r.checks.push_back(kernel_tail_bounds());
  r.checks.push_back(lipschitz_bound());
  r.checks.push_back(lip_space_monotone());
  r.checks.push_back(dbv_kink());
  r.checks.push_back(dbv_affine());
  r.checks.push_back(korovkin_test_functions());
  r.checks.push_back(korovkin_exp());
  return r;
}

}  // namespace szd
