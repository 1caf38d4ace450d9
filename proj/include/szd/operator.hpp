#pragma once

// B*(g; x) = u * sum_j s_{u,j}(x) \int_0^\infty s_{u,j}(t) g(t) dt
// and its kernel form \int_0^\infty Y(x,t) g(t) dt.

#include <string>
#include <vector>

#include "szd/basis.hpp"
#include "szd/quadrature.hpp"
#include "szd/target.hpp"

namespace szd {

/// Index n -> operator parameter u_n.
class SequenceRule {
 public:
  enum class Kind { Identity, Power, Explicit };

  static SequenceRule identity();
  static SequenceRule power(double p);
  /// values[n-1] is u_n; must be strictly increasing with values[0] >= 1.
  static SequenceRule explicit_values(std::vector<double> values);

  double operator()(long n) const;

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  const std::vector<double>& values() const { return values_; }
  std::string label() const;

 private:
  SequenceRule(Kind kind, double exponent, std::vector<double> values)
      : kind_(kind), exponent_(exponent), values_(std::move(values)) {}

  Kind kind_;
  double exponent_;
  std::vector<double> values_;
};

struct OperatorValue {
  double value = 0.0;
  long series_terms_used = 0;
  /// Bound on |neglected series contribution|, from the envelope of |g|.
  double tail_bound = 0.0;
  /// Neglected Poisson mass sum_{j>J} s_{u,j}(x).
  double tail_mass = 0.0;
  /// Accumulated error estimates of the inner integrals.
  double inner_integral_error = 0.0;
};

/// With TailEpsilon, the series runs at least to truncation_index(u, x, eps)
/// and further until the envelope-weighted remainder is below eps relative
/// to the accumulated sum. With FixedJ it stops at J exactly.
OperatorValue apply(const TargetFunction& g, double u, double x, const TruncationSpec& trunc = TailEpsilon{},
                    const QuadratureConfig& cfg = {});

OperatorValue apply_truncated(const TargetFunction& g, double u, double x, long J, const QuadratureConfig& cfg = {});

/// Y(x,t) = u sum_j s_{u,j}(x) s_{u,j}(t). With TailEpsilon the sum is cut at
/// the index for min(x, t), which keeps it symmetric in (x, t) and the
/// absolute truncation error below u * eps.
double kernel_value(double u, double x, double t, const TruncationSpec& trunc = TailEpsilon{});

/// \int_0^y Y(x,t) dt = sum_j s_{u,j}(x) P(j+1, u y); y may be +infinity.
double kernel_cdf(double u, double x, double y, const TruncationSpec& trunc = TailEpsilon{});

}  // namespace szd
