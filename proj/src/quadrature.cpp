#include "szd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include <Eigen/Eigenvalues>

#include "szd/errors.hpp"

namespace szd {

namespace {

void check_args(double u, long j) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("basis integral: u must be positive and finite");
  if (j < 0) throw DomainError("basis integral: j must be nonnegative");
}

// ln((j+1)(j+2)...(j+m))
double log_rising(long j, int m) {
  if (m > 64) return std::lgamma(static_cast<double>(j) + m + 1.0) - std::lgamma(static_cast<double>(j) + 1.0);
  double s = 0.0;
  for (int i = 1; i <= m; ++i) s += std::log(static_cast<double>(j) + i);
  return s;
}

struct ScaledLaguerre {
  double ln;      // L_n(x) * exp(-log_scale)
  double ln_1;    // L_{n-1}(x) * exp(-log_scale)
  double log_scale;
};

ScaledLaguerre laguerre_pair(int n, double x) {
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  double p0 = 1.0;
  double p1 = 1.0 - x;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
    if (std::fabs(p1) > kBig) {
      p0 /= kBig;
      p1 /= kBig;
      log_scale += log_big;
    }
  }
  return {p1, p0, log_scale};
}

std::unique_ptr<LaguerreRule> build_laguerre_rule(int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0;
  for (int i = 1; i < n; ++i) sub[i - 1] = i;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  auto rule = std::make_unique<LaguerreRule>();
  rule->nodes.resize(n);
  rule->log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    // Newton polish; the eigenvalues are only absolutely accurate
    for (int it = 0; it < 30; ++it) {
      const auto p = laguerre_pair(n, x);
      const double dx = x * p.ln / (n * (p.ln - p.ln_1));
      x -= dx;
      if (std::fabs(dx) <= 1e-16 * x) break;
    }
    const auto p = laguerre_pair(n, x);
    // w = 1 / (x L_n'(x)^2),  L_n'(x) = n (L_n - L_{n-1}) / x
    const double log_deriv = std::log(std::fabs(n * (p.ln - p.ln_1) / x)) + p.log_scale;
    rule->nodes[i] = x;
    rule->log_weights[i] = -std::log(x) - 2.0 * log_deriv;
  }
  return rule;
}

// Integrand in s = u t:  e^{-s} s^j / j! * g(s/u) / u
class ScaledIntegrand {
 public:
  ScaledIntegrand(double u, long j, const TargetFunction& g)
      : u_(u), j_(static_cast<double>(j)), log_fact_(std::lgamma(j_ + 1.0)), g_(g) {}

  double log_kernel(double s) const {
    if (s == 0.0) return j_ == 0.0 ? -std::log(u_) : -std::numeric_limits<double>::infinity();
    return j_ * std::log(s) - s - log_fact_ - std::log(u_);
  }

  double operator()(double s) const {
    const double lk = log_kernel(s);
    if (lk < -745.0) return 0.0;
    return std::exp(lk) * g_(s / u_);
  }

  double u() const { return u_; }
  double j() const { return j_; }
  double log_factorial() const { return log_fact_; }
  const TargetFunction& g() const { return g_; }

 private:
  double u_;
  double j_;
  double log_fact_;
  const TargetFunction& g_;
};

struct LaguerreSum {
  double value = 0.0;
  double abs_value = 0.0;
};

LaguerreSum laguerre_integral(const ScaledIntegrand& f, const LaguerreRule& rule) {
  LaguerreSum out;
  const double shift = -f.log_factorial() - std::log(f.u());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    // e^{-s} is carried by the weight
    const double lw = rule.log_weights[i] + f.j() * std::log(s) + shift;
    if (lw < -745.0) continue;
    const double w = std::exp(lw);
    const double gv = f.g()(s / f.u());
    out.value += w * gv;
    out.abs_value += w * std::fabs(gv);
  }
  return out;
}

// 7-point Gauss / 15-point Kronrod
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  double value, error, abs_value;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod_segment(const F& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(fc) * kWgk[7];
  std::array<double, 7> f1{}, f2{};
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    f1[i] = f(c - dx);
    f2[i] = f(c + dx);
    resk += kWgk[i] * (f1[i] + f2[i]);
    resabs += kWgk[i] * (std::fabs(f1[i]) + std::fabs(f2[i]));
    if (i % 2 == 1) resg += kWg[i / 2] * (f1[i] + f2[i]);
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int i = 0; i < 7; ++i) resasc += kWgk[i] * (std::fabs(f1[i] - mean) + std::fabs(f2[i] - mean));
  resasc *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * std::fabs(h);
  err = std::max(err, floor);
  return {a, b, resk * h, err, resabs * std::fabs(h), depth};
}

QuadratureResult adaptive_integral(const ScaledIntegrand& f, const QuadratureConfig& cfg) {
  const TargetFunction& g = f.g();
  const double rate = g.growth_rate();
  const double decay = 1.0 - rate / f.u();
  const double shape = f.j() + g.max_power() + 1.0;
  const double centre = shape / decay;
  const double spread = std::sqrt(shape) / decay;
  const double lo = std::max(0.0, centre - 15.0 * spread);
  const double hi = centre + 15.0 * spread + 60.0 / decay;

  constexpr int kInitial = 16;
  constexpr int kMaxSegments = 20000;
  std::priority_queue<Segment> queue;
  double total = 0.0, total_err = 0.0, total_abs = 0.0;
  const double width = (hi - lo) / kInitial;
  for (int i = 0; i < kInitial; ++i) {
    const double a = lo + i * width;
    const double b = i + 1 == kInitial ? hi : lo + (i + 1) * width;
    auto seg = kronrod_segment(f, a, b, 0);
    total += seg.value;
    total_err += seg.error;
    total_abs += seg.abs_value;
    queue.push(seg);
  }

  int segments = kInitial;
  while (total_err > cfg.adaptive_tol * total_abs && total_err > std::numeric_limits<double>::min()) {
    const Segment worst = queue.top();
    if (worst.depth >= cfg.max_refinement_depth || segments >= kMaxSegments)
      throw ConvergenceFailure("numeric_basis_integral: refinement budget exhausted");
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = kronrod_segment(f, worst.a, mid, worst.depth + 1);
    auto right = kronrod_segment(f, mid, worst.b, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
    ++segments;
  }
  // recompute from the segments to shed accumulated update rounding
  double value = 0.0, err = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {value, err};
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
  if (cfg.laguerre_order < 2) throw DomainError("QuadratureConfig: laguerre_order must be >= 2");
  if (!(cfg.adaptive_tol > 0.0)) throw DomainError("QuadratureConfig: adaptive_tol must be positive");
  if (cfg.max_refinement_depth < 1) throw DomainError("QuadratureConfig: max_refinement_depth must be positive");
}

const LaguerreRule& laguerre_rule(int order) {
  if (order < 2) throw DomainError("laguerre_rule: order must be >= 2");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<LaguerreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = build_laguerre_rule(order);
  return *slot;
}

double log_exact_basis_integral(double u, long j, int m, double a) {
  check_args(u, j);
  if (m < 0) throw DomainError("basis integral: m must be nonnegative");
  if (!(u > a)) throw DivergentIntegral("basis integral diverges: u must exceed the growth rate a");
  const double jd = static_cast<double>(j);
  // u^j / (u-a)^j = exp(-j log1p(-a/u))
  const double ratio_term = a == 0.0 ? 0.0 : -jd * std::log1p(-a / u);
  return ratio_term + log_rising(j, m) - (m + 1.0) * std::log(u - a);
}

double exact_basis_integral_monomial(double u, long j, int m) {
  return std::exp(log_exact_basis_integral(u, j, m, 0.0));
}

double exact_basis_integral_exppoly(double u, long j, int m, double a) {
  return std::exp(log_exact_basis_integral(u, j, m, a));
}

QuadratureResult numeric_basis_integral(double u, long j, const TargetFunction& g, const QuadratureConfig& cfg) {
  validate(cfg);
  check_args(u, j);
  if (!(u > g.growth_rate())) throw DivergentIntegral("numeric_basis_integral: u must exceed the growth rate of g");

  const ScaledIntegrand f(u, j, g);
  // Past ~2N the Gamma(j+1) bulk sits beyond the well-resolved nodes.
  if (j <= 2L * cfg.laguerre_order) {
    const auto coarse = laguerre_integral(f, laguerre_rule(cfg.laguerre_order));
    const auto fine = laguerre_integral(f, laguerre_rule(2 * cfg.laguerre_order));
    const double diff = std::fabs(fine.value - coarse.value);
    if (diff <= cfg.adaptive_tol * fine.abs_value) return {fine.value, diff};
  }
  return adaptive_integral(f, cfg);
}

QuadratureResult basis_integral(double u, long j, const TargetFunction& g, const QuadratureConfig& cfg) {
  if (!g.has_exact_integrals()) return numeric_basis_integral(u, j, g, cfg);
  check_args(u, j);
  double value = 0.0, abs_value = 0.0;
  for (const auto& t : g.exp_poly_terms()) {
    const double v = t.coeff * exact_basis_integral_exppoly(u, j, t.power, t.rate);
    value += v;
    abs_value += std::fabs(v);
  }
  return {value, 4.0 * std::numeric_limits<double>::epsilon() * abs_value};
}

double basis_integral_envelope(double u, long j, const TargetFunction& g) {
  if (const auto* b = std::get_if<BlackBox>(&g.form())) {
    return b->bound_scale * (exact_basis_integral_exppoly(u, j, 0, b->growth_rate) +
                             exact_basis_integral_exppoly(u, j, b->bound_power, b->growth_rate));
  }
  double s = 0.0;
  for (const auto& t : g.exp_poly_terms()) s += std::fabs(t.coeff) * exact_basis_integral_exppoly(u, j, t.power, t.rate);
  return s;
}

}  // namespace szd
