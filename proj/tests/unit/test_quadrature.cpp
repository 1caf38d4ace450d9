#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "szd/basis.hpp"
#include "szd/errors.hpp"
#include "szd/quadrature.hpp"

using namespace szd;
using doctest::Approx;

namespace {

// independent oracle: tanh-sinh-family quadrature on [0, inf)
double oracle(double u, long j, const RealFunction& g) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(
      [&](double t) {
        if (!std::isfinite(u * t)) return 0.0;
        const double w = szasz_weight(u, j, t);
        return w == 0.0 ? 0.0 : w * g(t);
      },
      1e-14);
}

TargetFunction box(RealFunction f, double rate, int power = 0) { return TargetFunction::black_box(std::move(f), rate, 1.0, power); }

}  // namespace

TEST_CASE("monomial closed forms") {
  CHECK(exact_basis_integral_monomial(5.0, 3, 0) == Approx(0.2).epsilon(1e-15));
  CHECK(exact_basis_integral_monomial(1.0, 0, 2) == Approx(2.0).epsilon(1e-15));
  CHECK(exact_basis_integral_monomial(10.0, 7, 3) == Approx(0.072).epsilon(1e-14));
  CHECK(exact_basis_integral_monomial(10.0, 7, 3) ==
        Approx(oracle(10.0, 7, [](double t) { return t * t * t; })).epsilon(1e-12));
  CHECK_THROWS_AS(exact_basis_integral_monomial(0.0, 1, 1), DomainError);
}

TEST_CASE("exp-poly closed forms") {
  for (double u : {3.0, 10.0})
    for (long j : {0L, 4L, 30L})
      for (int m : {0, 2, 5}) CHECK(exact_basis_integral_exppoly(u, j, m, 0.0) == Approx(exact_basis_integral_monomial(u, j, m)).epsilon(1e-14));
  CHECK(exact_basis_integral_exppoly(10.0, 0, 2, 2.0) == Approx(3.90625e-3).epsilon(1e-14));
  CHECK(exact_basis_integral_exppoly(10.0, 0, 2, 2.0) ==
        Approx(oracle(10.0, 0, [](double t) { return t * t * std::exp(2 * t); })).epsilon(1e-12));
  CHECK(exact_basis_integral_exppoly(50.0, 3, 3, -5.0) ==
        Approx(oracle(50.0, 3, [](double t) { return t * t * t * std::exp(-5 * t); })).epsilon(1e-12));
  CHECK_THROWS_AS(exact_basis_integral_exppoly(2.0, 1, 0, 2.0), DivergentIntegral);
  CHECK_THROWS_AS(exact_basis_integral_exppoly(1.0, 1, 0, 2.0), DivergentIntegral);
}

TEST_CASE("extreme indices stay finite in log space") {
  const double l = log_exact_basis_integral(1e6, 2500000, 2, 2.0);
  CHECK(std::isfinite(l));
  CHECK(exact_basis_integral_exppoly(1e6, 2500000, 200, 0.0) > 0.0);
}

TEST_CASE("numeric integral examples") {
  const auto one = box([](double) { return 1.0; }, 0.0);
  CHECK(numeric_basis_integral(10.0, 4, one).value == Approx(0.1).epsilon(1e-12));

  const auto g = box([](double t) { return t * t * std::exp(2 * t); }, 2.0, 2);
  CHECK(numeric_basis_integral(10.0, 4, g).value == Approx(exact_basis_integral_exppoly(10.0, 4, 2, 2.0)).epsilon(1e-10));

  const auto h = box([](double t) { return -t * t * t * std::exp(-5 * t); }, 0.0, 3);
  CHECK(numeric_basis_integral(50.0, 0, h).value == Approx(-exact_basis_integral_exppoly(50.0, 0, 3, -5.0)).epsilon(1e-10));

  CHECK_THROWS_AS(numeric_basis_integral(2.0, 1, g), DivergentIntegral);
}

TEST_CASE("numeric and exact agree over a grid") {
  for (int m = 0; m <= 4; ++m) {
    const auto g = box([m](double t) { return std::pow(t, m); }, 0.0, m);
    for (double u : {5.0, 10.0, 100.0})
      for (long j = 0; j <= 20; ++j) {
        const double exact = exact_basis_integral_monomial(u, j, m);
        CHECK(std::fabs(numeric_basis_integral(u, j, g).value - exact) / exact <= 1e-9);
      }
  }
}

TEST_CASE("adaptive fallback for kinks and large indices") {
  const auto kink = box([](double t) { return std::fabs(t - 1.0); }, 0.0, 1);
  for (long j : {5L, 10L, 40L, 900L}) {
    const double u = 100.0;
    const auto r = numeric_basis_integral(u, j, kink);
    // split at the kink: int_0^1 s_j = P(j+1,u)/u, int_0^1 t s_j = (j+1) P(j+2,u)/u^2
    const double jd = static_cast<double>(j);
    const double o = ((jd + 1) / u - 1) / u +
                     2 * (boost::math::gamma_p(jd + 1, u) / u - (jd + 1) / (u * u) * boost::math::gamma_p(jd + 2, u));
    CAPTURE(j);
    CHECK(r.value == Approx(o).epsilon(1e-9));
    CHECK(r.error >= 0.0);
  }
}

TEST_CASE("positivity and linearity") {
  const auto f = box([](double t) { return std::exp(-t) + t; }, 0.0, 1);
  const auto g = box([](double t) { return std::sin(t) + 2.0; }, 0.0, 0);
  for (long j : {0L, 3L, 17L}) {
    CHECK(numeric_basis_integral(10.0, j, f).value >= 0.0);
    CHECK(numeric_basis_integral(10.0, j, g).value >= 0.0);
    const double a = 1.5, b = -0.25;
    const auto combo = a * f + b * g;
    const double lhs = numeric_basis_integral(10.0, j, combo).value;
    const double rhs = a * numeric_basis_integral(10.0, j, f).value + b * numeric_basis_integral(10.0, j, g).value;
    CHECK(lhs == Approx(rhs).epsilon(1e-12));
  }
  const auto s1 = TargetFunction::exp_poly({{2.0, 1, 0.5}});
  const auto s2 = TargetFunction::monomials({{-1.0, 3}});
  const auto sum = 3.0 * s1 + s2;
  CHECK(sum.has_exact_integrals());
  CHECK(basis_integral(4.0, 6, sum).value ==
        Approx(3.0 * basis_integral(4.0, 6, s1).value + basis_integral(4.0, 6, s2).value).epsilon(1e-13));
}

TEST_CASE("structured targets use the exact path") {
  const auto g = TargetFunction::exp_poly({{1.0, 2, 2.0}});
  const auto r = basis_integral(10.0, 4, g);
  CHECK(r.value == exact_basis_integral_exppoly(10.0, 4, 2, 2.0));
  CHECK(r.error <= 1e-15 * r.value);
  CHECK(basis_integral_envelope(10.0, 4, g) >= r.value);
}

TEST_CASE("laguerre rule integrates polynomials exactly") {
  const auto& rule = laguerre_rule(40);
  REQUIRE(rule.nodes.size() == 40);
  for (int k : {0, 1, 5, 20}) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += std::exp(rule.log_weights[i]) * std::pow(rule.nodes[i], k);
    CHECK(s == Approx(std::tgamma(k + 1.0)).epsilon(1e-12));
  }
  CHECK(&laguerre_rule(40) == &rule);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(QuadratureConfig{1, 1e-12, 48}), DomainError);
  CHECK_THROWS_AS(validate(QuadratureConfig{200, 0.0, 48}), DomainError);
  CHECK_NOTHROW(validate(QuadratureConfig{}));
}
