#pragma once

// Inner integrals  I_j = \int_0^\infty s_{u,j}(t) g(t) dt.

#include <span>
#include <vector>

#include "szd/target.hpp"

namespace szd {

struct QuadratureConfig {
  int laguerre_order = 200;
  double adaptive_tol = 1e-12;
  int max_refinement_depth = 48;
};

void validate(const QuadratureConfig& cfg);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// ln of \int_0^\infty s_{u,j}(t) t^m e^{a t} dt = ln[ u^j (j+m)! / (j! (u-a)^{j+m+1}) ].
/// Requires u > a; throws DivergentIntegral otherwise.
double log_exact_basis_integral(double u, long j, int m, double a);

/// (j+m)! / (j! u^{m+1})
double exact_basis_integral_monomial(double u, long j, int m);

/// u^j (j+m)! / (j! (u-a)^{j+m+1})
double exact_basis_integral_exppoly(double u, long j, int m, double a);

/// Integral of s_{u,j} against an arbitrary target, by Gauss-Laguerre
/// quadrature after the substitution s = u t. Orders N and 2N are compared;
/// when they disagree by more than adaptive_tol (relative to the integral of
/// |integrand|) the integral is redone with adaptive Gauss-Kronrod.
QuadratureResult numeric_basis_integral(double u, long j, const TargetFunction& g, const QuadratureConfig& cfg = {});

/// Closed form when g is structured, numeric otherwise.
QuadratureResult basis_integral(double u, long j, const TargetFunction& g, const QuadratureConfig& cfg = {});

/// Upper bound on \int s_{u,j}(t) |g(t)| dt from g's terms or declared envelope.
double basis_integral_envelope(double u, long j, const TargetFunction& g);

/// Gauss-Laguerre rule for the weight e^{-s} on [0, inf). Weights are kept
/// as logarithms because they underflow long before the last node.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> log_weights;
};

/// Cached per order; the returned reference stays valid for the program's life.
const LaguerreRule& laguerre_rule(int order);

}  // namespace szd
