#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace szd {

using RealFunction = std::function<double(double)>;

struct MonomialTerm {
  double coeff;
  int power;
};

/// coeff * t^power * e^{rate t}
struct ExpPolyTerm {
  double coeff;
  int power;
  double rate;
};

struct MonomialSum {
  std::vector<MonomialTerm> terms;
};

struct ExpPolySum {
  std::vector<ExpPolyTerm> terms;
};

/// An arbitrary evaluable g with a caller-declared envelope
///   |g(t)| <= bound_scale * (1 + t^bound_power) * e^{growth_rate t}.
/// The envelope is trusted, not checked.
struct BlackBox {
  RealFunction eval;
  double growth_rate = 0.0;
  double bound_scale = 1.0;
  int bound_power = 0;
};

/// The function g the operator is applied to.
class TargetFunction {
 public:
  using Form = std::variant<MonomialSum, ExpPolySum, BlackBox>;

  TargetFunction(Form form, std::string label = {});

  static TargetFunction monomials(std::vector<MonomialTerm> terms, std::string label = {});
  static TargetFunction exp_poly(std::vector<ExpPolyTerm> terms, std::string label = {});
  static TargetFunction black_box(RealFunction eval, double growth_rate, double bound_scale = 1.0,
                                  int bound_power = 0, std::string label = {});

  double operator()(double t) const;

  /// Exponential growth rate a; the basis integrals exist iff u > a.
  double growth_rate() const;

  /// Largest polynomial power appearing in g or its declared envelope.
  int max_power() const;

  /// True for the two structured forms that admit closed-form integrals.
  bool has_exact_integrals() const;

  const Form& form() const { return form_; }
  const std::string& label() const { return label_; }

  /// Every structured form rewritten as an ExpPolySum (monomials get rate 0).
  /// Throws std::logic_error for BlackBox.
  std::vector<ExpPolyTerm> exp_poly_terms() const;

 private:
  Form form_;
  std::string label_;
};

TargetFunction operator*(double alpha, const TargetFunction& g);
TargetFunction operator+(const TargetFunction& g, const TargetFunction& h);

}  // namespace szd
