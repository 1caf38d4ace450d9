#pragma once

// Szász basis s_{u,j}(x) = e^{-ux} (ux)^j / j! and series truncation.

#include <variant>

namespace szd {

inline constexpr double kDefaultTailEps = 1e-14;

/// Largest u*x for which a tail-epsilon truncation index is computed.
inline constexpr double kMaxPoissonMean = 1e10;

struct BasisPoint {
  double u;  // operator parameter, > 0
  long j;    // basis index, >= 0
  double x;  // evaluation point, >= 0
};

/// Cut the series once the Poisson(ux) tail mass drops to eps.
struct TailEpsilon {
  double eps = kDefaultTailEps;
};

/// Keep exactly the terms j = 0..J.
struct FixedJ {
  long J = 0;
};

using TruncationSpec = std::variant<TailEpsilon, FixedJ>;

/// Throws DomainError unless eps is in (0,1) or J >= 0.
void validate(const TruncationSpec& spec);

/// ln s_{u,j}(x); -infinity where the weight is exactly zero.
///
/// Uses the saddle-point form ln p = -stirlerr(j) - bd0(j, ux) - ln(2 pi j)/2,
/// which avoids the cancellation between j ln(ux), ux and ln j! that a
/// direct log-sum suffers when ux is large.
double log_szasz_weight(double u, long j, double x);

double szasz_weight(double u, long j, double x);
inline double szasz_weight(const BasisPoint& p) { return szasz_weight(p.u, p.j, p.x); }

/// Sum_{j > J} s_{u,j}(x), the neglected Poisson(ux) mass.
double poisson_upper_tail(double u, double x, long J);

/// Smallest J >= ceil(ux) with poisson_upper_tail(u, x, J) <= eps.
/// Throws DomainError when ux > kMaxPoissonMean.
long truncation_index(double u, double x, double eps);

/// J implied by a truncation spec at (u, x).
long resolve_truncation(const TruncationSpec& spec, double u, double x);

/// Stirling series remainder ln n! - (n + 1/2) ln n + n - ln sqrt(2 pi).
double stirling_error(long n);

/// Deviance term j ln(j/lambda) + lambda - j, computed without cancellation.
double poisson_deviance(long j, double lambda);

}  // namespace szd
