// Command-line front end for the B* operator library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "szd/bounds.hpp"
#include "szd/errors.hpp"
#include "szd/moments.hpp"
#include "szd/report.hpp"

using namespace szd;
using nlohmann::json;

namespace {

constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Common {
  std::string g = "x2e2x";
  std::optional<double> eps;
  std::optional<long> J;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--g", c.g, "target: x2e2x, negx3e5x, one, t, t2, expneg, abs1 or ep:c,m,a;...")->capture_default_str();
  auto* eps = cmd->add_option("--eps", c.eps, "Poisson tail epsilon (default 1e-14)");
  cmd->add_option("--J", c.J, "fixed truncation index")->excludes(eps);
}

TruncationSpec truncation(const Common& c) {
  if (c.J) return FixedJ{*c.J};
  return TailEpsilon{c.eps.value_or(kDefaultTailEps)};
}

// Opens --out if given, otherwise standard output.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// One-sided derivatives for the DBV bound: exact for structured targets,
// hard-coded for the built-in kink.
DbvSpec dbv_spec(const std::string& name) {
  auto g = parse_target(name);
  if (name == "abs1")
    return {g, [](double t) { return t <= 1.0 ? -1.0 : 1.0; }, [](double t) { return t < 1.0 ? -1.0 : 1.0; }, {1.0}};
  const auto terms = g.exp_poly_terms();
  RealFunction d = [terms](double t) {
    double s = 0.0;
    for (const auto& k : terms) {
      const double lead = k.power > 0 ? k.power * std::pow(t, k.power - 1) : 0.0;
      s += k.coeff * (lead + k.rate * std::pow(t, k.power)) * std::exp(k.rate * t);
    }
    return s;
  };
  return {g, d, d, {}};
}

int run_eval(const Common& c, double u, double x) {
  const auto v = apply(parse_target(c.g), u, x, truncation(c));
  const double gx = parse_target(c.g)(x);
  std::cout << std::setprecision(17) << "B*(g;x)          " << v.value << '\n'
            << "g(x)             " << gx << '\n'
            << "abs_error        " << std::fabs(v.value - gx) << '\n'
            << std::setprecision(6) << "terms            " << v.series_terms_used << '\n'
            << "tail_bound       " << v.tail_bound << '\n'
            << "tail_mass        " << v.tail_mass << '\n'
            << "inner_error      " << v.inner_integral_error << '\n';
  return 0;
}

int run_table(const Common& c, const std::string& rule_s, const std::vector<long>& ns, const std::vector<double>& xs,
              const std::string& out, bool paper_check, unsigned threads, bool quiet) {
  const auto rule = parse_rule(rule_s);
  const auto table = make_error_table(parse_target(c.g), rule, xs, ns, truncation(c), {}, threads);
  if (!out.empty()) {
    Sink sink(out);
    write_csv(sink.stream(), table);
  }
  if (!quiet) write_pretty(std::cout, table);
  if (!paper_check) return 0;

  const auto id = reference_table_for(rule);
  if (c.g != "x2e2x" || !id) {
    std::cerr << "--paper-check needs --g x2e2x and rule n, n1.5 or n2\n";
    return kUsage;
  }
  const auto cmp = compare_with_reference(table, *id);
  int bad = 0;
  for (const auto& r : cmp) {
    if (r.passed) continue;
    ++bad;
    std::cout << "MISMATCH x=" << r.x << " n=" << r.n << " computed=" << std::setprecision(6) << r.computed
              << " reference=" << r.reference << " rel=" << r.rel_error << '\n';
  }
  std::cout << "reference check (table " << *id << "): " << cmp.size() - static_cast<std::size_t>(bad) << "/" << cmp.size()
            << " cells within 1e-3\n";
  return bad == 0 ? 0 : kViolation;
}

int run_curve(const Common& c, const std::vector<double>& us, const std::vector<long>& Js, double x_max, int points,
              const std::string& out) {
  if (points < 2) throw DomainError("--points must be at least 2");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(x_max * i / (points - 1));
  std::optional<std::span<const long>> fixed;
  if (!Js.empty()) fixed = std::span<const long>(Js);
  const auto curves = make_curves(parse_target(c.g), us, grid, fixed);
  Sink sink(out);
  write_curves_csv(sink.stream(), curves);
  return 0;
}

int run_moments(int max_m, std::optional<double> u, std::optional<double> x, const std::string& form) {
  if (form != "corrected" && form != "printed") throw DomainError("--recurrence must be corrected or printed");
  const auto rec = central_moment_table(max_m, form == "printed" ? RecurrenceForm::AsPrinted : RecurrenceForm::Corrected);
  for (int m = 0; m <= max_m; ++m) {
    const auto& r = rec[static_cast<std::size_t>(m)];
    const bool agrees = r == central_moment_poly(m);
    std::cout << "m=" << m << "\n  raw      " << raw_moment_poly(m).to_string() << "\n  central  "
              << central_moment_poly(m).to_string() << "\n  recurr.  " << r.to_string() << (agrees ? "" : "   (differs)")
              << '\n';
    if (u && x)
      std::cout << std::setprecision(17) << "  at u=" << *u << " x=" << *x << ": raw " << raw_moment(*u, *x, m)
                << ", central " << central_moment(*u, *x, m) << '\n';
  }
  return 0;
}

struct BoundArgs {
  std::string kind = "kfunctional";
  double u = 100.0;
  double x = 1.0;
  double s = 1.0;
  double C = 1.0;
  double M = 1.0;
  double m1 = 1.0;
  double m2 = 1.0;
};

int run_bounds(const Common& c, const BoundArgs& b) {
  std::cout << std::setprecision(10);
  if (b.kind == "kfunctional") {
    const auto g = parse_target(c.g);
    const auto k = theorem_kfunctional_bound([&](double t) { return g(t); }, b.u, b.x, b.C);
    std::cout << "delta_n          " << k.delta_n << "\ngamma_n          " << k.gamma_n << "\nC*omega2         "
              << k.component_omega2 << "\nomega            " << k.component_omega << "\ntotal            " << k.total()
              << '\n';
    return 0;
  }
  if (b.kind == "lipschitz") {
    const auto l = lipschitz_bound_check(parse_target(c.g), b.s, b.u, b.x);
    std::cout << "lhs              " << l.lhs << "\ntau_s            " << l.tau << "\nrhs              " << l.rhs
              << "\nholds            " << (l.holds ? "yes" : "no") << '\n';
    return l.holds ? 0 : kViolation;
  }
  if (b.kind == "lipspace") {
    std::cout << "bound            " << lip_space_bound(b.M, b.m1, b.m2, b.s, b.u, b.x) << '\n';
    return 0;
  }
  if (b.kind == "dbv") {
    const auto spec = dbv_spec(c.g);
    const auto bound = dbv_bound(spec, b.u, b.x);
    const auto chk = dbv_empirical_check(spec, b.u, b.x);
    for (std::size_t i = 0; i < bound.terms.size(); ++i) std::cout << "term[" << i << "]          " << bound.terms[i] << '\n';
    std::cout << "bound            " << bound.total << "\nlhs              " << chk.lhs << "\nholds            "
              << (chk.holds ? "yes" : "no") << '\n';
    return chk.holds ? 0 : kViolation;
  }
  throw DomainError("--kind must be kfunctional, lipschitz, lipspace or dbv");
}

int run_verify(const std::string& form, unsigned seed, const std::string& json_out) {
  if (form != "corrected" && form != "printed") throw DomainError("--recurrence must be corrected or printed");
  VerificationConfig cfg;
  cfg.recurrence = form == "printed" ? RecurrenceForm::AsPrinted : RecurrenceForm::Corrected;
  cfg.seed = seed;
  const auto report = run_verification_suite(cfg);
  write_report(std::cout, report);
  if (!json_out.empty()) {
    json j = json::array();
    for (const auto& c : report.checks)
      j.push_back({{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"passed", c.passed},
                   {"detail", c.detail}});
    Sink sink(json_out);
    sink.stream() << json{{"all_passed", report.all_passed()}, {"checks", j}}.dump(2) << '\n';
  }
  return report.all_passed() ? 0 : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Szasz-Mirakjan-Durrmeyer operators B*"};
  app.require_subcommand(1);

  Common eval_c, table_c, curve_c, bounds_c;

  auto* eval = app.add_subcommand("eval", "evaluate B*(g;x) at one point");
  add_common(eval, eval_c);
  double eval_u = 100.0, eval_x = 1.0;
  eval->add_option("--u", eval_u, "operator parameter u")->capture_default_str();
  eval->add_option("--x", eval_x, "evaluation point")->capture_default_str();

  auto* table = app.add_subcommand("table", "error table |B*(g;x) - g(x)| over an (x, n) grid");
  add_common(table, table_c);
  std::string rule = "n", table_out;
  std::vector<long> ns = kDefaultNs;
  std::vector<double> xs = kDefaultXs;
  bool paper_check = false, quiet = false;
  unsigned threads = 0;
  table->add_option("--rule", rule, "n, n1.5, n2, n^p or explicit:u1,u2,...")->capture_default_str();
  table->add_option("--ns", ns, "comma-separated n values")->delimiter(',');
  table->add_option("--xs", xs, "comma-separated x values")->delimiter(',');
  table->add_option("--out", table_out, "CSV destination");
  table->add_flag("--paper-check", paper_check, "compare with the embedded reference tables (exit 1 on mismatch)");
  table->add_option("--threads", threads, "worker threads (0 = hardware)");
  table->add_flag("--quiet", quiet, "suppress the pretty table");

  auto* curve = app.add_subcommand("curve", "curve data for plotting");
  add_common(curve, curve_c);
  std::vector<double> us = {15, 35, 50};
  std::vector<long> Js;
  double x_max = 2.5;
  int points = 101;
  std::string curve_out;
  curve->add_option("--us", us, "comma-separated u values")->delimiter(',');
  curve->add_option("--Js", Js, "comma-separated truncation indices, one per u")->delimiter(',');
  curve->add_option("--x-max", x_max, "right end of the x grid")->capture_default_str();
  curve->add_option("--points", points, "number of grid points")->capture_default_str();
  curve->add_option("--out", curve_out, "CSV destination (default stdout)");

  auto* moments = app.add_subcommand("moments", "raw and central moment polynomials");
  int max_m = 4;
  std::optional<double> mu, mx;
  std::string mom_form = "corrected";
  moments->add_option("--m", max_m, "highest order")->capture_default_str()->check(CLI::Range(0, 64));
  moments->add_option("--u", mu, "evaluate at this u");
  moments->add_option("--x", mx, "evaluate at this x");
  moments->add_option("--recurrence", mom_form, "corrected or printed")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "error bounds at a point");
  add_common(bounds, bounds_c);
  BoundArgs bargs;
  bounds->add_option("--kind", bargs.kind, "kfunctional, lipschitz, lipspace or dbv")->capture_default_str();
  bounds->add_option("--u", bargs.u)->capture_default_str();
  bounds->add_option("--x", bargs.x)->capture_default_str();
  bounds->add_option("--s", bargs.s, "Lipschitz exponent")->capture_default_str();
  bounds->add_option("--C", bargs.C, "second-modulus constant")->capture_default_str();
  bounds->add_option("--M", bargs.M)->capture_default_str();
  bounds->add_option("--m1", bargs.m1)->capture_default_str();
  bounds->add_option("--m2", bargs.m2)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the verification suite (exit 1 on failures)");
  std::string ver_form = "corrected", ver_json;
  unsigned seed = VerificationConfig{}.seed;
  verify->add_option("--recurrence", ver_form, "corrected or printed")->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--json", ver_json, "write the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(eval_c, eval_u, eval_x);
    if (*table) return run_table(table_c, rule, ns, xs, table_out, paper_check, threads, quiet);
    if (*curve) return run_curve(curve_c, us, Js, x_max, points, curve_out);
    if (*moments) return run_moments(max_m, mu, mx, mom_form);
    if (*bounds) return run_bounds(bounds_c, bargs);
    if (*verify) return run_verify(ver_form, seed, ver_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
