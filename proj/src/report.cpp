#include "szd/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "szd/errors.hpp"

namespace szd {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  // std::from_chars for double is missing from older libstdc++
  std::string buf(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse number '" + buf + "'");
  }
  if (used != buf.size()) throw DomainError("cannot parse number '" + buf + "'");
  return v;
}

int to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw DomainError("cannot parse integer '" + std::string(s) + "'");
  return v;
}

std::string fmt(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

TargetFunction parse_target(std::string_view spec) {
  if (spec == "x2e2x") return TargetFunction::exp_poly({{1.0, 2, 2.0}}, "x2e2x");
  if (spec == "negx3e5x") return TargetFunction::exp_poly({{-1.0, 3, -5.0}}, "negx3e5x");
  if (spec == "one") return TargetFunction::monomials({{1.0, 0}}, "one");
  if (spec == "t") return TargetFunction::monomials({{1.0, 1}}, "t");
  if (spec == "t2") return TargetFunction::monomials({{1.0, 2}}, "t2");
  if (spec == "expneg") return TargetFunction::exp_poly({{1.0, 0, -1.0}}, "expneg");
  if (spec == "abs1") return TargetFunction::black_box([](double t) { return std::fabs(t - 1.0); }, 0.0, 1.0, 1, "abs1");
  if (spec.starts_with("ep:")) {
    std::vector<ExpPolyTerm> terms;
    for (auto term : split(spec.substr(3), ';')) {
      const auto parts = split(term, ',');
      if (parts.size() != 3) throw DomainError("exp-poly term must be c,m,a: '" + std::string(term) + "'");
      terms.push_back({to_double(parts[0]), to_int(parts[1]), to_double(parts[2])});
    }
    return TargetFunction::exp_poly(std::move(terms), std::string(spec));
  }
  throw DomainError("unknown target '" + std::string(spec) + "'");
}

SequenceRule parse_rule(std::string_view spec) {
  if (spec == "n") return SequenceRule::identity();
  if (spec.starts_with("explicit:")) {
    std::vector<double> values;
    for (auto v : split(spec.substr(9), ',')) values.push_back(to_double(v));
    return SequenceRule::explicit_values(std::move(values));
  }
  if (spec.starts_with("n^")) return SequenceRule::power(to_double(spec.substr(2)));
  if (spec.starts_with("n")) return SequenceRule::power(to_double(spec.substr(1)));
  throw DomainError("unknown sequence rule '" + std::string(spec) + "'");
}

ErrorTable make_error_table(const TargetFunction& g, const SequenceRule& rule, std::span<const double> xs,
                            std::span<const long> ns, const TruncationSpec& trunc, const QuadratureConfig& cfg,
                            unsigned threads) {
  ErrorTable table;
  table.g_label = g.label();
  table.rule = rule;
  table.xs.assign(xs.begin(), xs.end());
  table.ns.assign(ns.begin(), ns.end());
  table.cells.resize(xs.size() * ns.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < ns.size(); ++k) {
      auto& c = table.cells[i * ns.size() + k];
      c.x = xs[i];
      c.n = ns[k];
      c.u_n = rule(ns[k]);
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < table.cells.size(); idx = next++) {
      auto& c = table.cells[idx];
      c.g_value = g(c.x);
      try {
        c.operator_value = apply(g, c.u_n, c.x, trunc, cfg).value;
        c.abs_error = std::fabs(c.operator_value - c.g_value);
      } catch (const DivergentIntegral& e) {
        c.failure = e.what();
        c.operator_value = c.abs_error = std::nan("");
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, table.cells.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return table;
}

void write_csv(std::ostream& os, const ErrorTable& table) {
  os << "x,n,u_n,operator_value,g_value,abs_error\n";
  for (const auto& c : table.cells) {
    os << fmt(c.x, 17) << ',' << c.n << ',' << fmt(c.u_n, 17) << ',';
    if (c.ok())
      os << fmt(c.operator_value, 17) << ',' << fmt(c.g_value, 17) << ',' << fmt(c.abs_error, 17) << '\n';
    else
      os << "divergent," << fmt(c.g_value, 17) << ",divergent\n";
  }
}

void write_pretty(std::ostream& os, const ErrorTable& table) {
  os << "|B*(g;x) - g(x)|  g = " << table.g_label << ", u_n = " << table.rule.label() << "\n";
  os << std::setw(8) << "x \\ n";
  for (long n : table.ns) os << std::setw(14) << n;
  os << '\n';
  for (std::size_t i = 0; i < table.xs.size(); ++i) {
    os << std::setw(8) << fmt(table.xs[i], 6);
    for (std::size_t k = 0; k < table.ns.size(); ++k) {
      const auto& c = table.at(i, k);
      os << std::setw(14) << (c.ok() ? fmt(c.abs_error, 6) : std::string("divergent"));
    }
    os << '\n';
  }
}

std::vector<CurveSeries> make_curves(const TargetFunction& g, std::span<const double> u_values,
                                     std::span<const double> x_grid, std::optional<std::span<const long>> fixed_J,
                                     const QuadratureConfig& cfg) {
  if (fixed_J && fixed_J->size() != u_values.size())
    throw DomainError("make_curves: truncation list must pair with the u values");
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (!(x_grid[i] > x_grid[i - 1])) throw DomainError("make_curves: x grid must be strictly increasing");

  std::vector<CurveSeries> out;
  const std::string name = g.label().empty() ? "g" : g.label();
  auto series = [&](double u, std::optional<long> J) {
    CurveSeries s;
    s.u = u;
    s.truncation_J = J;
    s.label = "B*_" + fmt(u, 10) + (J ? "_J" + std::to_string(*J) : std::string{}) + "(" + name + ")";
    for (double x : x_grid) {
      const auto v = J ? apply_truncated(g, u, x, *J, cfg) : apply(g, u, x, TailEpsilon{}, cfg);
      s.points.emplace_back(x, v.value);
    }
    return s;
  };
  for (double u : u_values) out.push_back(series(u, std::nullopt));
  if (fixed_J)
    for (std::size_t i = 0; i < u_values.size(); ++i) out.push_back(series(u_values[i], (*fixed_J)[i]));

  CurveSeries target;
  target.label = name;
  for (double x : x_grid) target.points.emplace_back(x, g(x));
  out.push_back(std::move(target));
  return out;
}

void write_curves_csv(std::ostream& os, const std::vector<CurveSeries>& curves) {
  os << "label,u,J,x,value\n";
  for (const auto& c : curves) {
    for (const auto& [x, v] : c.points) {
      os << c.label << ',' << (c.u > 0.0 ? fmt(c.u, 17) : std::string{}) << ','
         << (c.truncation_J ? std::to_string(*c.truncation_J) : std::string{}) << ',' << fmt(x, 17) << ','
         << fmt(v, 17) << '\n';
    }
  }
}

std::optional<int> reference_table_for(const SequenceRule& rule) {
  if (rule.kind() == SequenceRule::Kind::Identity) return 1;
  if (rule.kind() == SequenceRule::Kind::Power) {
    if (rule.exponent() == 1.0) return 1;
    if (rule.exponent() == 1.5) return 2;
    if (rule.exponent() == 2.0) return 3;
  }
  return std::nullopt;
}

std::vector<ReferenceComparison> compare_with_reference(const ErrorTable& table, int table_id, double rel_tol) {
  std::vector<ReferenceComparison> out;
  for (const auto& ref : reference_cells()) {
    if (ref.table != table_id) continue;
    for (const auto& c : table.cells) {
      if (c.n != ref.n || std::fabs(c.x - ref.x) > 1e-12) continue;
      const double rel = c.ok() ? std::fabs(c.abs_error - ref.abs_error) / ref.abs_error : std::nan("");
      out.push_back({c.x, c.n, c.abs_error, ref.abs_error, rel, c.ok() && rel <= rel_tol});
    }
  }
  return out;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void write_report(std::ostream& os, const VerificationReport& report) {
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(44) << c.name << std::right
       << " measured=" << fmt(c.measured, 6) << " tol=" << fmt(c.tolerance, 3);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](auto& c) { return !c.passed; });
  os << report.checks.size() - static_cast<std::size_t>(failed) << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace szd
