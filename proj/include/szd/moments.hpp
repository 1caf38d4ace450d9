#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace szd {

using Rational = boost::multiprecision::cpp_rational;

/// Omega_m(x) = B*((t - x)^m; x) as an exact polynomial
///   sum_{k,e} c_{k,e} x^k u^{-e},   c_{k,e} rational.
class CentralMomentPoly {
 public:
  /// Key: (power of x, power of 1/u).
  using Key = std::pair<int, int>;

  CentralMomentPoly() = default;
  CentralMomentPoly(int order, std::map<Key, Rational> coeffs);

  static CentralMomentPoly zero(int order);
  static CentralMomentPoly one();

  int order() const { return order_; }
  const std::map<Key, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int x_power, int inv_u_power) const;

  double operator()(double u, double x) const;

  CentralMomentPoly derivative_x() const;
  CentralMomentPoly times_x() const;
  CentralMomentPoly over_u() const;
  CentralMomentPoly scaled(const Rational& c) const;

  friend CentralMomentPoly operator+(const CentralMomentPoly& a, const CentralMomentPoly& b);
  friend bool operator==(const CentralMomentPoly& a, const CentralMomentPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void prune();

  int order_ = 0;
  std::map<Key, Rational> coeffs_;
};

/// B*(t^m; x) = sum_k C(m,k) m!/k! x^k u^{k-m}, as a polynomial.
CentralMomentPoly raw_moment_poly(int m);

/// Omega_m from the binomial expansion sum_i C(m,i) (-x)^{m-i} B*(t^i; x),
/// carried out exactly.
CentralMomentPoly central_moment_poly(int m);

double raw_moment(double u, double x, int m);

/// Evaluates the exact binomial-path polynomial, so there is no cancellation.
double central_moment(double u, double x, int m);

enum class RecurrenceForm {
  /// u Omega_{m+1} = x Omega_m' + 2 m x Omega_{m-1} + (m+1) Omega_m
  Corrected,
  /// u Omega_{m+1} = x (Omega_m' + 2 m Omega_{m-1} + (m+1) Omega_m)
  AsPrinted,
};

/// Omega_{m+1} from Omega_{m-1} and Omega_m. For m = 0 pass
/// CentralMomentPoly::zero(-1) as the lower order.
CentralMomentPoly central_moment_recurrence_step(const CentralMomentPoly& lower, const CentralMomentPoly& current,
                                                 RecurrenceForm form = RecurrenceForm::Corrected);

/// Omega_0..Omega_max_m generated by the recurrence from Omega_0 = 1.
std::vector<CentralMomentPoly> central_moment_table(int max_m, RecurrenceForm form = RecurrenceForm::Corrected);

struct ZetaFactor {
  double u;
  double x;
  double value;  // sqrt(x + 1/u)
};

ZetaFactor zeta(double u, double x);

struct DecayReport {
  int m;
  double x;
  double empirical_exponent;  // least-squares slope of ln|Omega_m| vs ln u
  int predicted_exponent;     // -floor((m+1)/2)
  bool passes;                // empirical <= predicted + 0.1
};

DecayReport decay_order_check(int m, double x, std::span<const double> u_grid);

}  // namespace szd
