#pragma once

// Grid estimators for moduli of smoothness, the Lipschitz maximal function
// and total variation, plus calculators for the error bounds of B*.

#include <array>
#include <vector>

#include "szd/operator.hpp"
#include "szd/target.hpp"

namespace szd {

struct Interval {
  double lo;
  double hi;
};

struct ModulusEstimate {
  double delta;
  double value;
  double grid_step;
  Interval domain;
};

/// [0, 2.5 + 4 delta], the window the convergence experiments live on.
Interval default_modulus_domain(double delta);

/// sup |g(y) - g(x)| over grid pairs with |y - x| <= delta. Requires step <= delta/8.
/// A step of 0 selects delta/64.
ModulusEstimate modulus(const RealFunction& g, double delta, Interval domain, double step = 0.0);

/// sup |g(x+h) - 2 g(x) + g(x-h)| over grid points and 0 <= h <= delta.
ModulusEstimate second_modulus(const RealFunction& g, double delta, Interval domain, double step = 0.0);

struct KFunctionalBound {
  double component_omega2;  // C * omega_2(g, sqrt(delta_n)/2)
  double component_omega;   // omega(g, gamma_n)
  double delta_n;           // Omega_2(x) + 1/u^2
  double gamma_n;           // Omega_1 = 1/u
  double total() const { return component_omega2 + component_omega; }
};

/// Components of the second-modulus bound; the constant C is the caller's.
/// The domain defaults to [0, 2.5 + 4 max(sqrt(delta_n)/2, gamma_n)].
KFunctionalBound theorem_kfunctional_bound(const RealFunction& g, double u, double x, double C = 1.0);
KFunctionalBound theorem_kfunctional_bound(const RealFunction& g, double u, double x, Interval domain, double C = 1.0);

struct LipschitzGrid {
  Interval domain{0.0, 10.0};
  double step = 1e-3;
};

/// tau_s(g, x) = sup_{t != x} |g(t) - g(x)| / |t - x|^s over the grid.
double lipschitz_maximal(const RealFunction& g, double x, double s, const LipschitzGrid& grid = {});

struct LipschitzCheck {
  double lhs;  // |B*(g;x) - g(x)|
  double rhs;  // tau_s * Omega_2^{s/2}
  double tau;
  bool holds;
};

LipschitzCheck lipschitz_bound_check(const TargetFunction& g, double s, double u, double x,
                                     const LipschitzGrid& grid = {}, double tol = 1e-12);

/// M (Omega_2 / (x (x m1 + m2)))^{s/2}
double lip_space_bound(double M, double m1, double m2, double s, double u, double x);

struct TotalVariationEstimate {
  Interval interval;
  double value;
  long samples;
};

/// Sum of |f(t_{i+1}) - f(t_i)| over a uniform partition, refined to within
/// 1e-6 of each breakpoint inside the interval.
TotalVariationEstimate total_variation(const RealFunction& f, Interval interval, long samples,
                                       const std::vector<double>& breakpoints = {});

/// g with derivative of bounded variation, given by its one-sided derivatives.
struct DbvSpec {
  TargetFunction g;
  RealFunction gprime_left;
  RealFunction gprime_right;
  std::vector<double> breakpoints;  // jumps of g'
};

/// g'_x(t): g'(t) - g'(x-) for t < x, 0 at x, g'(t) - g'(x+) for t > x.
RealFunction auxiliary_derivative(const DbvSpec& spec, double x);

struct DbvBound {
  /// [0] (1/2u)|g'(x+) + g'(x-)|
  /// [1] sqrt(1/2u) |g'(x+) - g'(x-)| zeta(x)
  /// [2] (2 zeta^2/(x u)) sum_j V_{x - x/j}^{x} g'_x
  /// [3] (x/sqrt u) V_{x - x/sqrt u}^{x} g'_x
  /// [4] (x/sqrt u) V_{x}^{x + x/sqrt u} g'_x
  /// [5] (2 zeta^2/(x u)) sum_j V_{x}^{x + x/j} g'_x
  /// with j = 1..floor(sqrt u).
  std::array<double, 6> terms;
  double total;
};

DbvBound dbv_bound(const DbvSpec& spec, double u, double x, long tv_samples = 1025);

struct DbvCheck {
  double lhs;
  double bound;
  bool holds;
};

DbvCheck dbv_empirical_check(const DbvSpec& spec, double u, double x, double tol = 1e-10);

}  // namespace szd
