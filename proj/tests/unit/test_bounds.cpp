#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "szd/bounds.hpp"
#include "szd/errors.hpp"
#include "szd/moments.hpp"

using namespace szd;
using doctest::Approx;

namespace {

const RealFunction kConst = [](double) { return 3.0; };
const RealFunction kId = [](double t) { return t; };
const RealFunction kExpNeg = [](double t) { return std::exp(-t); };

DbvSpec affine(double c, double slope) {
  return {TargetFunction::monomials({{c, 0}, {slope, 1}}), [=](double) { return slope; }, [=](double) { return slope; }, {}};
}

DbvSpec kink() {
  return {TargetFunction::black_box([](double t) { return std::fabs(t - 1.0); }, 0.0, 1.0, 1),
          [](double t) { return t <= 1.0 ? -1.0 : 1.0; }, [](double t) { return t < 1.0 ? -1.0 : 1.0; }, {1.0}};
}

}  // namespace

TEST_CASE("first modulus") {
  const Interval d{0.0, 10.0};
  CHECK(modulus(kConst, 0.3, d).value == 0.0);
  const auto m = modulus(kId, 0.1, d);
  CHECK(m.value == Approx(0.1).epsilon(m.grid_step));
  CHECK(m.grid_step == Approx(0.1 / 64));
  CHECK(modulus(kExpNeg, 0.1, d).value == Approx(0.09516258196404043).epsilon(1e-12));
  double prev = 0.0;
  for (double delta : {0.05, 0.1, 0.2, 0.4}) {
    const double v = modulus(kExpNeg, delta, d, 0.005).value;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(modulus(kId, 0.1, d, 0.05), DomainError);
  CHECK_THROWS_AS(modulus(kId, 0.0, d), DomainError);
  CHECK_THROWS_AS(modulus(kId, 0.1, Interval{-1.0, 1.0}), DomainError);
}

TEST_CASE("second modulus") {
  const Interval d{0.0, 10.0};
  CHECK(second_modulus([](double t) { return 2.0 - 3.0 * t; }, 0.2, d).value <= 1e-12);
  CHECK(second_modulus([](double t) { return t * t; }, 0.25, d).value == Approx(2 * 0.25 * 0.25).epsilon(1e-12));
  CHECK(second_modulus(kExpNeg, 0.2, d).value == Approx(0.03285853987967558).epsilon(1e-12));
  for (double delta : {0.05, 0.1, 0.3}) {
    const double step = delta / 16;
    const double w2 = second_modulus(kExpNeg, delta, d, step).value;
    CHECK(w2 <= 2 * modulus(kExpNeg, delta, d, step).value + 1e-12);
    CHECK(w2 >= 0.0);
  }
  CHECK(default_modulus_domain(0.5).hi == Approx(4.5));
}

TEST_CASE("K-functional bound components") {
  const auto c = theorem_kfunctional_bound(kConst, 100.0, 1.0);
  CHECK(c.component_omega == 0.0);
  CHECK(c.component_omega2 == 0.0);
  const auto b = theorem_kfunctional_bound(kExpNeg, 100.0, 1.0);
  CHECK(b.delta_n == Approx(0.0203).epsilon(1e-14));
  CHECK(b.gamma_n == Approx(0.01).epsilon(1e-14));
  CHECK(b.component_omega == Approx(1 - std::exp(-0.01)).epsilon(1e-9));
  CHECK(b.total() == b.component_omega + b.component_omega2);
  const auto b5 = theorem_kfunctional_bound(kExpNeg, 100.0, 1.0, 5.0);
  CHECK(b5.component_omega2 == Approx(5 * b.component_omega2));
  double prev = 1e300;
  for (double u : {10.0, 100.0, 1000.0, 10000.0}) {
    const auto k = theorem_kfunctional_bound(kExpNeg, u, 1.0);
    CHECK(k.delta_n < prev);
    CHECK(k.delta_n * u == Approx(2.0).epsilon(0.25));
    prev = k.delta_n;
  }
  CHECK_THROWS_AS(theorem_kfunctional_bound(kExpNeg, 100.0, 1.0, -1.0), DomainError);
}

TEST_CASE("Lipschitz maximal function") {
  CHECK(lipschitz_maximal(kId, 0.7, 1.0) == Approx(1.0).epsilon(1e-12));
  CHECK(lipschitz_maximal(kConst, 0.7, 0.5) == 0.0);
  // the supremum sits at t = 0, not at the slope limit t -> 1
  CHECK(lipschitz_maximal(kExpNeg, 1.0, 1.0) == Approx(1 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(lipschitz_maximal(kExpNeg, 1.0, 1.0) > std::exp(-1.0));
  CHECK(lipschitz_maximal([](double t) { return std::sqrt(t); }, 0.0, 0.5) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(lipschitz_maximal(kId, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(lipschitz_maximal(kId, 1.0, 1.5), DomainError);
}

TEST_CASE("Lipschitz bound check") {
  const auto c = lipschitz_bound_check(TargetFunction::monomials({{3.0, 0}}), 1.0, 100.0, 1.0);
  CHECK(c.lhs <= 1e-14);
  CHECK(c.rhs == 0.0);
  CHECK(c.holds);
  CHECK(lipschitz_bound_check(TargetFunction::exp_poly({{1.0, 0, -1.0}}), 1.0, 100.0, 1.0).holds);
  const auto t = lipschitz_bound_check(TargetFunction::monomials({{1.0, 1}}), 1.0, 50.0, 2.0);
  CHECK(t.lhs == Approx(0.02).epsilon(1e-12));
  CHECK(t.rhs == Approx(std::sqrt(2.0 * 101.0 / 2500.0)).epsilon(1e-12));
  CHECK(t.holds);
}

TEST_CASE("Lip-space bound") {
  CHECK(lip_space_bound(1.0, 0.0, 1.0, 1.0, 10.0, 1.0) == Approx(std::sqrt(0.22)).epsilon(1e-14));
  CHECK(lip_space_bound(1.0, 1.0, 0.0, 1.0, 100.0, 1.0) == Approx(0.142126704035519).epsilon(1e-12));
  CHECK_THROWS_AS(lip_space_bound(1.0, 1.0, 1.0, 1.0, 10.0, 0.0), DomainError);
  CHECK_THROWS_AS(lip_space_bound(1.0, -1.0, 0.5, 1.0, 10.0, 1.0), DomainError);
  double prev = 1e300;
  for (double u : {10.0, 100.0, 1000.0}) {
    const double b = lip_space_bound(2.0, 1.0, 1.0, 0.5, u, 1.5);
    CHECK(b > 0.0);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("total variation") {
  CHECK(total_variation(kExpNeg, {0.0, 3.0}, 101).value == Approx(1 - std::exp(-3.0)).epsilon(1e-12));
  const RealFunction sign = [](double t) { return t > 1.0 ? 1.0 : (t < 1.0 ? -1.0 : 0.0); };
  CHECK(total_variation(sign, {0.0, 2.0}, 10).value == Approx(2.0).epsilon(1e-14));
  CHECK(total_variation(sign, {0.0, 2.0}, 10, {1.0}).value == Approx(2.0).epsilon(1e-14));
  const RealFunction wiggle = [](double t) { return std::sin(5 * t); };
  const double whole = total_variation(wiggle, {0.0, 3.0}, 3001).value;
  const double parts = total_variation(wiggle, {0.0, 1.2}, 1201).value + total_variation(wiggle, {1.2, 3.0}, 1801).value;
  CHECK(whole >= parts - 1e-9);
  CHECK(whole == Approx(9.349712168696938).epsilon(1e-5));
  CHECK(whole <= 9.349712168696938 + 1e-12);
  CHECK(total_variation(wiggle, {1.0, 1.0}, 5).value == 0.0);
  CHECK_THROWS_AS(total_variation(wiggle, {0.0, 1.0}, 1), DomainError);

  const auto aux = auxiliary_derivative(kink(), 1.0);
  CHECK(total_variation(aux, {0.5, 1.0}, 257, {1.0}).value == 0.0);
  CHECK(total_variation(aux, {1.0, 1.5}, 257, {1.0}).value == 0.0);
  const auto aux_half = auxiliary_derivative(kink(), 0.5);
  CHECK(total_variation(aux_half, {0.5, 1.5}, 257, {0.5, 1.0}).value == Approx(2.0));
}

TEST_CASE("DBV bound terms") {
  for (double u : {10.0, 100.0})
    for (double x : {0.5, 2.0}) {
      const auto b = dbv_bound(affine(1.0, -4.0), u, x);
      CHECK(b.terms[0] == Approx(4.0 / u).epsilon(1e-15));
      for (int i = 1; i < 6; ++i) CHECK(b.terms[static_cast<std::size_t>(i)] == 0.0);
      CHECK(b.total == Approx(4.0 / u).epsilon(1e-15));
    }

  const auto k = dbv_bound(kink(), 400.0, 1.0);
  CHECK(k.terms[0] == 0.0);
  CHECK(k.terms[1] == Approx(std::sqrt(1.0 / 800.0) * 2.0 * std::sqrt(1.0025)).epsilon(1e-14));
  for (int i = 2; i < 6; ++i) CHECK(k.terms[static_cast<std::size_t>(i)] == 0.0);

  double prev = 1e300;
  for (double u : {100.0, 400.0, 1600.0, 6400.0}) {
    const auto b = dbv_bound(kink(), u, 0.5);
    double s = 0.0;
    for (double t : b.terms) {
      CHECK(t >= 0.0);
      s += t;
    }
    CHECK(b.total == s);
    CHECK(b.total < prev);
    prev = b.total;
  }
  CHECK_THROWS_AS(dbv_bound(kink(), 100.0, 0.0), DomainError);
  CHECK_THROWS_AS(dbv_bound(kink(), 1.0, 1.0), DomainError);
}

TEST_CASE("DBV empirical check") {
  for (double u : {10.0, 100.0}) {
    const auto c = dbv_empirical_check(affine(2.0, 3.0), u, 1.0);
    CHECK(c.lhs == Approx(3.0 / u).epsilon(1e-12));
    CHECK(c.bound == Approx(3.0 / u).epsilon(1e-15));
    CHECK(c.holds);
  }
  for (double x : {0.5, 1.0, 1.5})
    for (double u : {100.0, 400.0, 900.0}) {
      CAPTURE(x);
      CAPTURE(u);
      CHECK(dbv_empirical_check(kink(), u, x).holds);
    }
}
