#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/poisson.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>

#include "szd/basis.hpp"
#include "szd/errors.hpp"

using namespace szd;
using doctest::Approx;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

double big_weight(int u, int j, double x) {
  const Big lam = Big(u) * Big(x);
  Big fact = 1;
  for (int i = 2; i <= j; ++i) fact *= i;
  return static_cast<double>(exp(-lam) * pow(lam, j) / fact);
}

double naive_weight(double u, long j, double x) {
  return std::exp(-u * x) * std::pow(u * x, static_cast<double>(j)) / std::tgamma(static_cast<double>(j) + 1.0);
}

}  // namespace

TEST_CASE("weight special values") {
  CHECK(szasz_weight(1.0, 0, 0.0) == 1.0);
  CHECK(szasz_weight(3.0, 5, 0.0) == 0.0);
  CHECK(szasz_weight(10.0, 0, 1.0) == Approx(std::exp(-10.0)).epsilon(1e-15));
  CHECK(szasz_weight(BasisPoint{10.0, 0, 1.0}) == Approx(4.539993e-5).epsilon(1e-6));
}

TEST_CASE("weight against 50-digit oracle") {
  // mpmath: e^{-50} 50^60 / 60!
  CHECK(szasz_weight(50.0, 60, 1.0) == Approx(0.020104872145676233952).epsilon(1e-13));
  for (int u : {1, 7, 50, 400})
    for (int j : {0, 1, 3, 40, 170, 500})
      for (double x : {0.25, 1.0, 2.5}) {
        const double expect = big_weight(u, j, x);
        if (expect < 1e-290) continue;
        CAPTURE(u);
        CAPTURE(j);
        CAPTURE(x);
        CHECK(szasz_weight(u, j, x) == Approx(expect).epsilon(1e-12));
      }
}

TEST_CASE("weight agrees with naive formula where it is representable") {
  for (double u : {0.5, 3.0, 10.0})
    for (double x : {0.1, 1.0, 3.0})
      for (long j = 0; j <= 100; j += 7) CHECK(szasz_weight(u, j, x) == Approx(naive_weight(u, j, x)).epsilon(1e-12));
}

TEST_CASE("role symmetry s_{u,j}(x) = s_{1,j}(ux)") {
  for (double u : {2.0, 10.0, 64.0})
    for (long j : {0L, 5L, 30L, 200L})
      for (double x : {0.5, 1.0, 2.5}) CHECK(szasz_weight(u, j, x) == Approx(szasz_weight(1.0, j, u * x)).epsilon(1e-13));
}

TEST_CASE("huge parameters stay finite") {
  const double lam = 2.5e6;
  const double w = szasz_weight(1e6, static_cast<long>(lam), 2.5);
  CHECK(w == Approx(1.0 / std::sqrt(2.0 * M_PI * lam)).epsilon(1e-6));
  CHECK(std::isfinite(log_szasz_weight(1e6, 10, 2.5)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(szasz_weight(0.0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(szasz_weight(1.0, 1, -0.5), DomainError);
  CHECK_THROWS_AS(szasz_weight(1.0, -1, 0.5), DomainError);
  CHECK_THROWS_AS(truncation_index(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(truncation_index(1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(validate(FixedJ{-1}), DomainError);
  CHECK_NOTHROW(validate(FixedJ{0}));
  CHECK_NOTHROW(validate(TailEpsilon{}));
}

TEST_CASE("poisson tail matches boost poisson distribution") {
  for (double lam : {0.5, 10.0, 250.0})
    for (long J : {0L, 5L, 20L, 300L}) {
      const boost::math::poisson_distribution<> p(lam);
      const double expect = boost::math::cdf(boost::math::complement(p, static_cast<double>(J)));
      if (expect < 1e-300) continue;
      CHECK(poisson_upper_tail(1.0, lam, J) == Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("truncation index") {
  CHECK(truncation_index(7.0, 0.0, 1e-12) == 0);
  CHECK(truncation_index(100.0, 2.5, 1e-12) >= 250);

  // mpmath cumulative sum: first J with tail <= 1e-15 is 44
  const long J = truncation_index(10.0, 1.0, 1e-15);
  CHECK(J == 44);
  double s = 0.0;
  for (long j = 0; j <= J; ++j) s += szasz_weight(10.0, j, 1.0);
  CHECK(s >= 1.0 - 1e-15 - 1e-16);
  CHECK(poisson_upper_tail(10.0, 1.0, J - 1) > 1e-15);

  CHECK(resolve_truncation(FixedJ{17}, 10.0, 1.0) == 17);
  CHECK(resolve_truncation(TailEpsilon{1e-15}, 10.0, 1.0) == 44);
}

TEST_CASE("normalization and monotone partial sums") {
  const double eps = 1e-14;
  for (double u : {1.0, 10.0, 100.0})
    for (double x : {0.0, 0.5, 1.0, 2.5}) {
      const long J = truncation_index(u, x, eps);
      CHECK(J >= static_cast<long>(std::ceil(u * x)));
      double s = 0.0, prev = 0.0;
      for (long j = 0; j <= J; ++j) {
        s += szasz_weight(u, j, x);
        CHECK(s >= prev);
        prev = s;
      }
      CHECK(s >= 1.0 - eps - 1e-15);
      CHECK(s <= 1.0 + 1e-12);
    }
}

TEST_CASE("stirling error and deviance") {
  for (long n : {1L, 5L, 15L, 16L, 100L, 100000L}) {
    const double nd = static_cast<double>(n);
    const double expect = std::lgamma(nd + 1.0) - (nd + 0.5) * std::log(nd) + nd - 0.5 * std::log(2.0 * M_PI);
    CHECK(stirling_error(n) == Approx(expect).epsilon(1e-9).scale(1.0));
  }
  CHECK(poisson_deviance(10, 10.0) == 0.0);
  CHECK(poisson_deviance(0, 3.0) == Approx(3.0));
  CHECK(poisson_deviance(12, 10.0) == Approx(12 * std::log(1.2) + 10 - 12).epsilon(1e-14));
}
