#include "szd/moments.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "szd/errors.hpp"

namespace szd {

namespace {

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void check_order(int m) {
  if (m < 0) throw DomainError("moments: order must be nonnegative");
}

void check_point(double u, double x) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("moments: u must be positive and finite");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("moments: x must be nonnegative and finite");
}

}  // namespace

CentralMomentPoly::CentralMomentPoly(int order, std::map<Key, Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
  prune();
}

CentralMomentPoly CentralMomentPoly::zero(int order) { return CentralMomentPoly(order, {}); }

CentralMomentPoly CentralMomentPoly::one() { return CentralMomentPoly(0, {{{0, 0}, Rational(1)}}); }

void CentralMomentPoly::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

Rational CentralMomentPoly::coeff(int x_power, int inv_u_power) const {
  auto it = coeffs_.find({x_power, inv_u_power});
  return it == coeffs_.end() ? Rational(0) : it->second;
}

double CentralMomentPoly::operator()(double u, double x) const {
  double v = 0.0;
  for (const auto& [key, c] : coeffs_) {
    const auto [k, e] = key;
    v += static_cast<double>(c) * std::pow(x, k) * std::pow(u, -e);
  }
  return v;
}

CentralMomentPoly CentralMomentPoly::derivative_x() const {
  std::map<Key, Rational> out;
  for (const auto& [key, c] : coeffs_)
    if (key.first > 0) out[{key.first - 1, key.second}] += c * key.first;
  return CentralMomentPoly(order_, std::move(out));
}

CentralMomentPoly CentralMomentPoly::times_x() const {
  std::map<Key, Rational> out;
  for (const auto& [key, c] : coeffs_) out[{key.first + 1, key.second}] = c;
  return CentralMomentPoly(order_, std::move(out));
}

CentralMomentPoly CentralMomentPoly::over_u() const {
  std::map<Key, Rational> out;
  for (const auto& [key, c] : coeffs_) out[{key.first, key.second + 1}] = c;
  return CentralMomentPoly(order_, std::move(out));
}

CentralMomentPoly CentralMomentPoly::scaled(const Rational& s) const {
  std::map<Key, Rational> out;
  for (const auto& [key, c] : coeffs_) out[key] = c * s;
  return CentralMomentPoly(order_, std::move(out));
}

CentralMomentPoly operator+(const CentralMomentPoly& a, const CentralMomentPoly& b) {
  auto out = a.coeffs_;
  for (const auto& [key, c] : b.coeffs_) out[key] += c;
  return CentralMomentPoly(std::max(a.order_, b.order_), std::move(out));
}

std::string CentralMomentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending x power reads like the usual textbook form
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto [k, e] = it->first;
    const Rational& c = it->second;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool unit = abs(c) == 1 && k > 0;
    if (!unit) os << abs(c);
    if (k > 0) os << (unit ? "" : "*") << "x" << (k > 1 ? "^" + std::to_string(k) : "");
    if (e > 0) os << "/u" << (e > 1 ? "^" + std::to_string(e) : "");
  }
  return os.str();
}

CentralMomentPoly raw_moment_poly(int m) {
  check_order(m);
  std::map<CentralMomentPoly::Key, Rational> c;
  const Rational mf = factorial(m);
  for (int k = 0; k <= m; ++k) c[{k, m - k}] = binomial(m, k) * mf / factorial(k);
  return CentralMomentPoly(m, std::move(c));
}

CentralMomentPoly central_moment_poly(int m) {
  check_order(m);
  static std::mutex mutex;
  static std::vector<CentralMomentPoly> cache;
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) <= m) {
    const int n = static_cast<int>(cache.size());
    std::map<CentralMomentPoly::Key, Rational> acc;
    for (int i = 0; i <= n; ++i) {
      // C(n,i) (-x)^{n-i} * raw_i
      Rational s = binomial(n, i);
      if ((n - i) % 2 == 1) s = -s;
      const auto raw = raw_moment_poly(i);
      for (const auto& [key, c] : raw.coeffs()) acc[{key.first + n - i, key.second}] += s * c;
    }
    cache.emplace_back(n, std::move(acc));
  }
  return cache[static_cast<std::size_t>(m)];
}

double raw_moment(double u, double x, int m) {
  check_point(u, x);
  return raw_moment_poly(m)(u, x);
}

double central_moment(double u, double x, int m) {
  check_point(u, x);
  return central_moment_poly(m)(u, x);
}

CentralMomentPoly central_moment_recurrence_step(const CentralMomentPoly& lower, const CentralMomentPoly& current,
                                                 RecurrenceForm form) {
  const int m = current.order();
  if (lower.order() != m - 1) throw DomainError("recurrence: orders must be consecutive");
  const Rational two_m = 2 * m;
  const Rational m_plus_1 = m + 1;
  const CentralMomentPoly d = current.derivative_x();
  CentralMomentPoly rhs;
  if (form == RecurrenceForm::Corrected) {
    rhs = d.times_x() + lower.scaled(two_m).times_x() + current.scaled(m_plus_1);
  } else {
    rhs = (d + lower.scaled(two_m) + current.scaled(m_plus_1)).times_x();
  }
  return CentralMomentPoly(m + 1, rhs.over_u().coeffs());
}

std::vector<CentralMomentPoly> central_moment_table(int max_m, RecurrenceForm form) {
  check_order(max_m);
  std::vector<CentralMomentPoly> table{CentralMomentPoly::one()};
  CentralMomentPoly lower = CentralMomentPoly::zero(-1);
  for (int m = 0; m < max_m; ++m) {
    table.push_back(central_moment_recurrence_step(lower, table.back(), form));
    lower = table[static_cast<std::size_t>(m)];
  }
  return table;
}

ZetaFactor zeta(double u, double x) {
  check_point(u, x);
  return {u, x, std::sqrt(x + 1.0 / u)};
}

DecayReport decay_order_check(int m, double x, std::span<const double> u_grid) {
  check_order(m);
  if (u_grid.size() < 2) throw DomainError("decay_order_check: need at least two grid points");
  for (std::size_t i = 1; i < u_grid.size(); ++i)
    if (!(u_grid[i] > u_grid[i - 1])) throw DomainError("decay_order_check: u grid must be increasing");
  if (!(u_grid.back() >= 1e3 * (1.0 - 1e-12) * u_grid.front()))
    throw DomainError("decay_order_check: u grid must span at least three decades");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double u : u_grid) {
    const double lx = std::log(u);
    const double ly = std::log(std::fabs(central_moment(u, x, m)));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(u_grid.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const int predicted = -((m + 1) / 2);
  return {m, x, slope, predicted, slope <= predicted + 0.1};
}

}  // namespace szd
