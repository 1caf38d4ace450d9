#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "szd/bounds.hpp"
#include "szd/errors.hpp"
#include "szd/moments.hpp"
#include "szd/report.hpp"

namespace py = pybind11;
using namespace szd;

namespace {

TruncationSpec make_trunc(std::optional<double> eps, std::optional<long> J) {
  if (eps && J) throw DomainError("pass either eps or J, not both");
  if (J) return FixedJ{*J};
  return TailEpsilon{eps.value_or(kDefaultTailEps)};
}

py::dict to_dict(const KFunctionalBound& b) {
  py::dict d;
  d["component_omega2"] = b.component_omega2;
  d["component_omega"] = b.component_omega;
  d["delta_n"] = b.delta_n;
  d["gamma_n"] = b.gamma_n;
  d["total"] = b.total();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized Szasz-Mirakjan-Durrmeyer operators B*";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DivergentIntegral>(m, "DivergentIntegral", PyExc_ArithmeticError);
  py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);

  m.attr("DEFAULT_TAIL_EPS") = kDefaultTailEps;

  // basis
  m.def("szasz_weight", py::overload_cast<double, long, double>(&szasz_weight), py::arg("u"), py::arg("j"), py::arg("x"));
  m.def("log_szasz_weight", &log_szasz_weight, py::arg("u"), py::arg("j"), py::arg("x"));
  m.def("poisson_upper_tail", &poisson_upper_tail, py::arg("u"), py::arg("x"), py::arg("J"));
  m.def("truncation_index", &truncation_index, py::arg("u"), py::arg("x"), py::arg("eps") = kDefaultTailEps);

  // targets
  py::class_<TargetFunction>(m, "TargetFunction")
      .def_static(
          "monomials",
          [](const std::vector<std::pair<double, int>>& terms, std::string label) {
            std::vector<MonomialTerm> t;
            for (auto [c, p] : terms) t.push_back({c, p});
            return TargetFunction::monomials(std::move(t), std::move(label));
          },
          py::arg("terms"), py::arg("label") = "", "terms: list of (coeff, power)")
      .def_static(
          "exp_poly",
          [](const std::vector<std::tuple<double, int, double>>& terms, std::string label) {
            std::vector<ExpPolyTerm> t;
            for (auto [c, p, a] : terms) t.push_back({c, p, a});
            return TargetFunction::exp_poly(std::move(t), std::move(label));
          },
          py::arg("terms"), py::arg("label") = "", "terms: list of (coeff, power, rate)")
      .def_static("black_box", &TargetFunction::black_box, py::arg("f"), py::arg("growth_rate"),
                  py::arg("bound_scale") = 1.0, py::arg("bound_power") = 0, py::arg("label") = "",
                  "|f(t)| <= bound_scale (1 + t^bound_power) e^{growth_rate t} must hold")
      .def("__call__", &TargetFunction::operator(), py::arg("t"))
      .def_property_readonly("growth_rate", &TargetFunction::growth_rate)
      .def_property_readonly("label", &TargetFunction::label)
      .def_property_readonly("has_exact_integrals", &TargetFunction::has_exact_integrals)
      .def("__add__", [](const TargetFunction& a, const TargetFunction& b) { return a + b; })
      .def("__rmul__", [](const TargetFunction& g, double a) { return a * g; })
      .def("__repr__", [](const TargetFunction& g) { return "<TargetFunction " + g.label() + ">"; });
  m.def("parse_target", &parse_target, py::arg("spec"));

  py::class_<SequenceRule>(m, "SequenceRule")
      .def_static("identity", &SequenceRule::identity)
      .def_static("power", &SequenceRule::power, py::arg("p"))
      .def_static("explicit_values", &SequenceRule::explicit_values, py::arg("values"))
      .def("__call__", &SequenceRule::operator(), py::arg("n"))
      .def_property_readonly("label", &SequenceRule::label);
  m.def("parse_rule", &parse_rule, py::arg("spec"));

  // quadrature
  m.def("exact_basis_integral_monomial", &exact_basis_integral_monomial, py::arg("u"), py::arg("j"), py::arg("m"));
  m.def("exact_basis_integral_exppoly", &exact_basis_integral_exppoly, py::arg("u"), py::arg("j"), py::arg("m"),
        py::arg("a"));
  m.def(
      "numeric_basis_integral",
      [](double u, long j, const TargetFunction& g) {
        const auto r = numeric_basis_integral(u, j, g);
        return std::make_pair(r.value, r.error);
      },
      py::arg("u"), py::arg("j"), py::arg("g"), "returns (value, error estimate)");

  // operator
  py::class_<OperatorValue>(m, "OperatorValue")
      .def_readonly("value", &OperatorValue::value)
      .def_readonly("series_terms_used", &OperatorValue::series_terms_used)
      .def_readonly("tail_bound", &OperatorValue::tail_bound)
      .def_readonly("tail_mass", &OperatorValue::tail_mass)
      .def_readonly("inner_integral_error", &OperatorValue::inner_integral_error)
      .def("__float__", [](const OperatorValue& v) { return v.value; });
  m.def(
      "apply",
      [](const TargetFunction& g, double u, double x, std::optional<double> eps, std::optional<long> J) {
        return apply(g, u, x, make_trunc(eps, J));
      },
      py::arg("g"), py::arg("u"), py::arg("x"), py::arg("eps") = py::none(), py::arg("J") = py::none());
  m.def(
      "apply_truncated", [](const TargetFunction& g, double u, double x, long J) { return apply_truncated(g, u, x, J); },
      py::arg("g"), py::arg("u"), py::arg("x"), py::arg("J"));
  m.def(
      "kernel_value", [](double u, double x, double t) { return kernel_value(u, x, t); }, py::arg("u"), py::arg("x"),
      py::arg("t"));
  m.def(
      "kernel_cdf", [](double u, double x, double y) { return kernel_cdf(u, x, y); }, py::arg("u"), py::arg("x"),
      py::arg("y"));

  // moments
  m.def("raw_moment", &raw_moment, py::arg("u"), py::arg("x"), py::arg("m"));
  m.def("central_moment", &central_moment, py::arg("u"), py::arg("x"), py::arg("m"));
  m.def(
      "central_moment_poly", [](int order) { return central_moment_poly(order).to_string(); }, py::arg("m"),
      "Omega_m as text, e.g. '2*x/u + 2/u^2'");
  m.def(
      "recurrence_table",
      [](int max_m, bool as_printed) {
        std::vector<std::string> out;
        for (const auto& p : central_moment_table(max_m, as_printed ? RecurrenceForm::AsPrinted : RecurrenceForm::Corrected))
          out.push_back(p.to_string());
        return out;
      },
      py::arg("max_m"), py::arg("as_printed") = false);
  m.def(
      "zeta", [](double u, double x) { return zeta(u, x).value; }, py::arg("u"), py::arg("x"));
  m.def(
      "decay_order",
      [](int order, double x, const std::vector<double>& grid) {
        const auto r = decay_order_check(order, x, grid);
        return py::make_tuple(r.empirical_exponent, r.predicted_exponent, r.passes);
      },
      py::arg("m"), py::arg("x"), py::arg("u_grid"), "returns (empirical, predicted, passes)");

  // bounds
  m.def(
      "modulus",
      [](const RealFunction& g, double delta, double lo, double hi, double step) {
        return modulus(g, delta, {lo, hi}, step).value;
      },
      py::arg("g"), py::arg("delta"), py::arg("lo") = 0.0, py::arg("hi") = 10.0, py::arg("step") = 0.0);
  m.def(
      "second_modulus",
      [](const RealFunction& g, double delta, double lo, double hi, double step) {
        return second_modulus(g, delta, {lo, hi}, step).value;
      },
      py::arg("g"), py::arg("delta"), py::arg("lo") = 0.0, py::arg("hi") = 10.0, py::arg("step") = 0.0);
  m.def(
      "theorem_kfunctional_bound",
      [](const RealFunction& g, double u, double x, double C) { return to_dict(theorem_kfunctional_bound(g, u, x, C)); },
      py::arg("g"), py::arg("u"), py::arg("x"), py::arg("C") = 1.0);
  m.def(
      "lipschitz_maximal", [](const RealFunction& g, double x, double s) { return lipschitz_maximal(g, x, s); },
      py::arg("g"), py::arg("x"), py::arg("s"));
  m.def(
      "lipschitz_bound_check",
      [](const TargetFunction& g, double s, double u, double x) {
        const auto c = lipschitz_bound_check(g, s, u, x);
        return py::make_tuple(c.lhs, c.rhs, c.holds);
      },
      py::arg("g"), py::arg("s"), py::arg("u"), py::arg("x"), "returns (lhs, rhs, holds)");
  m.def("lip_space_bound", &lip_space_bound, py::arg("M"), py::arg("m1"), py::arg("m2"), py::arg("s"), py::arg("u"),
        py::arg("x"));
  m.def(
      "total_variation",
      [](const RealFunction& f, double a, double b, long samples, const std::vector<double>& breakpoints) {
        return total_variation(f, {a, b}, samples, breakpoints).value;
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("samples") = 1025,
      py::arg("breakpoints") = std::vector<double>{});
  m.def(
      "dbv_check",
      [](const TargetFunction& g, const RealFunction& left, const RealFunction& right,
         const std::vector<double>& breakpoints, double u, double x) {
        const DbvSpec spec{g, left, right, breakpoints};
        const auto b = dbv_bound(spec, u, x);
        const auto c = dbv_empirical_check(spec, u, x);
        py::dict d;
        d["terms"] = std::vector<double>(b.terms.begin(), b.terms.end());
        d["bound"] = b.total;
        d["lhs"] = c.lhs;
        d["holds"] = c.holds;
        return d;
      },
      py::arg("g"), py::arg("gprime_left"), py::arg("gprime_right"), py::arg("breakpoints"), py::arg("u"),
      py::arg("x"));

  // report
  m.def(
      "error_table_csv",
      [](const TargetFunction& g, const std::string& rule, const std::vector<double>& xs, const std::vector<long>& ns,
         std::optional<double> eps, std::optional<long> J) {
        const auto trunc = make_trunc(eps, J);
        const auto r = parse_rule(rule);
        ErrorTable t;
        if (g.has_exact_integrals()) {
          py::gil_scoped_release release;
          t = make_error_table(g, r, xs, ns, trunc);
        } else {
          // a Python callable must stay on this thread
          t = make_error_table(g, r, xs, ns, trunc, {}, 1);
        }
        std::ostringstream os;
        write_csv(os, t);
        return os.str();
      },
      py::arg("g"), py::arg("rule") = "n", py::arg("xs") = kDefaultXs, py::arg("ns") = kDefaultNs,
      py::arg("eps") = py::none(), py::arg("J") = py::none(), "CSV text x,n,u_n,operator_value,g_value,abs_error");
  m.def("reference_cells", [] {
    std::vector<py::tuple> out;
    for (const auto& c : reference_cells()) out.push_back(py::make_tuple(c.table, c.x, c.n, c.abs_error));
    return out;
  });
  m.def(
      "run_verification_suite",
      [](bool as_printed, unsigned seed) {
        VerificationConfig cfg;
        cfg.recurrence = as_printed ? RecurrenceForm::AsPrinted : RecurrenceForm::Corrected;
        cfg.seed = seed;
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_verification_suite(cfg);
        }
        py::list checks;
        for (const auto& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["measured"] = c.measured;
          d["tolerance"] = c.tolerance;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          checks.append(d);
        }
        return checks;
      },
      py::arg("as_printed_recurrence") = false, py::arg("seed") = VerificationConfig{}.seed);
}
