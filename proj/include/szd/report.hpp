#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "szd/moments.hpp"
#include "szd/operator.hpp"
#include "szd/target.hpp"

namespace szd {

/// Built-in targets: x2e2x, negx3e5x, one, t, t2, expneg, abs1; or an
/// exponential-polynomial literal "ep:c,m,a;c,m,a;..." meaning sum c t^m e^{a t}.
TargetFunction parse_target(std::string_view spec);

/// "n", "n1.5", "n2", "n^p", "explicit:u1,u2,...".
SequenceRule parse_rule(std::string_view spec);

inline const std::vector<double> kDefaultXs = {0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 2.5};
inline const std::vector<long> kDefaultNs = {10, 50, 100, 200, 250, 500, 1000};

struct ErrorCell {
  double x = 0.0;
  long n = 0;
  double u_n = 0.0;
  double operator_value = 0.0;
  double g_value = 0.0;
  double abs_error = 0.0;
  std::string failure;  // non-empty when the operator is undefined at this cell
  bool ok() const { return failure.empty(); }
};

struct ErrorTable {
  std::string g_label;
  SequenceRule rule = SequenceRule::identity();
  std::vector<double> xs;
  std::vector<long> ns;
  std::vector<ErrorCell> cells;  // row-major: x outer, n inner

  const ErrorCell& at(std::size_t xi, std::size_t ni) const { return cells[xi * ns.size() + ni]; }
};

/// Cells are evaluated concurrently (threads = 0 picks the hardware count)
/// and stored in (x, n) order regardless of completion order.
ErrorTable make_error_table(const TargetFunction& g, const SequenceRule& rule, std::span<const double> xs,
                            std::span<const long> ns, const TruncationSpec& trunc = TailEpsilon{},
                            const QuadratureConfig& cfg = {}, unsigned threads = 0);

/// Header x,n,u_n,operator_value,g_value,abs_error; 17 significant digits.
void write_csv(std::ostream& os, const ErrorTable& table);

/// Grid layout: rows x, columns n, abs_error to 6 significant digits.
void write_pretty(std::ostream& os, const ErrorTable& table);

struct CurveSeries {
  std::string label;
  double u = 0.0;
  std::vector<std::pair<double, double>> points;  // (x, value)
  std::optional<long> truncation_J;
};

/// One untruncated series per u, one truncated series per (u, J) pair when
/// fixed_J is given (paired with u_values), and the target itself last.
std::vector<CurveSeries> make_curves(const TargetFunction& g, std::span<const double> u_values,
                                     std::span<const double> x_grid,
                                     std::optional<std::span<const long>> fixed_J = std::nullopt,
                                     const QuadratureConfig& cfg = {});

/// Header label,u,J,x,value; J is empty for untruncated series.
void write_curves_csv(std::ostream& os, const std::vector<CurveSeries>& curves);

/// Reference absolute errors for g = t^2 e^{2t}; table 1 is u_n = n,
/// 2 is n^{3/2}, 3 is n^2. Grids are kDefaultXs x kDefaultNs.
struct ReferenceCell {
  int table;
  double x;
  long n;
  double abs_error;
};

std::span<const ReferenceCell> reference_cells();

/// 1, 2 or 3 for rules that match a reference table, otherwise nullopt.
std::optional<int> reference_table_for(const SequenceRule& rule);

struct ReferenceComparison {
  double x;
  long n;
  double computed;
  double reference;
  double rel_error;
  bool passed;
};

/// Compare each table cell that has a reference counterpart.
std::vector<ReferenceComparison> compare_with_reference(const ErrorTable& table, int table_id, double rel_tol = 1e-3);

struct CheckResult {
  std::string name;
  double measured;
  double tolerance;
  bool passed;
  std::string detail;
};

struct VerificationConfig {
  RecurrenceForm recurrence = RecurrenceForm::Corrected;
  unsigned seed = 20240613;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

VerificationReport run_verification_suite(const VerificationConfig& cfg = {});

void write_report(std::ostream& os, const VerificationReport& report);

}  // namespace szd
