#include "szd/target.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "szd/errors.hpp"

namespace szd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double ipow(double t, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= t;
  return r;
}

void check_power(int m) {
  if (m < 0) throw DomainError("TargetFunction: powers must be nonnegative");
}

}  // namespace

TargetFunction::TargetFunction(Form form, std::string label) : form_(std::move(form)), label_(std::move(label)) {
  std::visit(overloaded{
                 [](const MonomialSum& s) {
                   for (const auto& t : s.terms) check_power(t.power);
                 },
                 [](const ExpPolySum& s) {
                   for (const auto& t : s.terms) {
                     check_power(t.power);
                     if (!std::isfinite(t.rate)) throw DomainError("TargetFunction: rate must be finite");
                   }
                 },
                 [](const BlackBox& b) {
                   if (!b.eval) throw DomainError("TargetFunction: black box needs an evaluator");
                   if (!std::isfinite(b.growth_rate)) throw DomainError("TargetFunction: growth rate must be finite");
                   check_power(b.bound_power);
                   if (!(b.bound_scale >= 0.0)) throw DomainError("TargetFunction: bound scale must be nonnegative");
                 },
             },
             form_);
}

TargetFunction TargetFunction::monomials(std::vector<MonomialTerm> terms, std::string label) {
  return TargetFunction(MonomialSum{std::move(terms)}, std::move(label));
}

TargetFunction TargetFunction::exp_poly(std::vector<ExpPolyTerm> terms, std::string label) {
  return TargetFunction(ExpPolySum{std::move(terms)}, std::move(label));
}

TargetFunction TargetFunction::black_box(RealFunction eval, double growth_rate, double bound_scale, int bound_power,
                                         std::string label) {
  return TargetFunction(BlackBox{std::move(eval), growth_rate, bound_scale, bound_power}, std::move(label));
}

double TargetFunction::operator()(double t) const {
  return std::visit(overloaded{
                        [t](const MonomialSum& s) {
                          double v = 0.0;
                          for (const auto& term : s.terms) v += term.coeff * ipow(t, term.power);
                          return v;
                        },
                        [t](const ExpPolySum& s) {
                          double v = 0.0;
                          for (const auto& term : s.terms) v += term.coeff * ipow(t, term.power) * std::exp(term.rate * t);
                          return v;
                        },
                        [t](const BlackBox& b) { return b.eval(t); },
                    },
                    form_);
}

double TargetFunction::growth_rate() const {
  return std::visit(overloaded{
                        [](const MonomialSum&) { return 0.0; },
                        [](const ExpPolySum& s) {
                          double a = 0.0;
                          for (const auto& term : s.terms) a = std::max(a, term.rate);
                          return a;
                        },
                        [](const BlackBox& b) { return b.growth_rate; },
                    },
                    form_);
}

int TargetFunction::max_power() const {
  return std::visit(overloaded{
                        [](const MonomialSum& s) {
                          int m = 0;
                          for (const auto& term : s.terms) m = std::max(m, term.power);
                          return m;
                        },
                        [](const ExpPolySum& s) {
                          int m = 0;
                          for (const auto& term : s.terms) m = std::max(m, term.power);
                          return m;
                        },
                        [](const BlackBox& b) { return b.bound_power; },
                    },
                    form_);
}

bool TargetFunction::has_exact_integrals() const { return !std::holds_alternative<BlackBox>(form_); }

std::vector<ExpPolyTerm> TargetFunction::exp_poly_terms() const {
  if (const auto* m = std::get_if<MonomialSum>(&form_)) {
    std::vector<ExpPolyTerm> out;
    out.reserve(m->terms.size());
    for (const auto& t : m->terms) out.push_back({t.coeff, t.power, 0.0});
    return out;
  }
  if (const auto* e = std::get_if<ExpPolySum>(&form_)) return e->terms;
  throw std::logic_error("exp_poly_terms: black-box targets have no structured form");
}

TargetFunction operator*(double alpha, const TargetFunction& g) {
  std::string label = g.label().empty() ? std::string{} : std::to_string(alpha) + "*(" + g.label() + ")";
  if (g.has_exact_integrals()) {
    auto terms = g.exp_poly_terms();
    for (auto& t : terms) t.coeff *= alpha;
    return TargetFunction::exp_poly(std::move(terms), std::move(label));
  }
  const auto& b = std::get<BlackBox>(g.form());
  auto eval = b.eval;
  return TargetFunction::black_box([alpha, eval](double t) { return alpha * eval(t); }, b.growth_rate,
                                   std::fabs(alpha) * b.bound_scale, b.bound_power, std::move(label));
}

TargetFunction operator+(const TargetFunction& g, const TargetFunction& h) {
  std::string label = g.label().empty() || h.label().empty() ? std::string{} : g.label() + "+" + h.label();
  if (g.has_exact_integrals() && h.has_exact_integrals()) {
    auto terms = g.exp_poly_terms();
    auto more = h.exp_poly_terms();
    terms.insert(terms.end(), more.begin(), more.end());
    return TargetFunction::exp_poly(std::move(terms), std::move(label));
  }
  // At least one side is opaque: the envelope of the sum is the sum of the
  // envelopes, widened to the larger rate and power.
  RealFunction fg = [g](double t) { return g(t); };
  RealFunction fh = [h](double t) { return h(t); };
  const double rate = std::max(g.growth_rate(), h.growth_rate());
  const int power = std::max(g.max_power(), h.max_power());
  auto scale_of = [](const TargetFunction& f) {
    if (const auto* b = std::get_if<BlackBox>(&f.form())) return b->bound_scale;
    double s = 0.0;
    for (const auto& t : f.exp_poly_terms()) s += std::fabs(t.coeff);
    return s;
  };
  return TargetFunction::black_box([fg, fh](double t) { return fg(t) + fh(t); }, rate, scale_of(g) + scale_of(h),
                                   power, std::move(label));
}

}  // namespace szd
