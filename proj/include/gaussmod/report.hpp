#pragma once

#include <string>

namespace gaussmod {

enum class ReportKind { Inequality, StrictInequality, Equality };

/// One checked relation lhs ≤ rhs (or lhs < rhs, or lhs = rhs).
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double margin = 0.0;          // rhs − lhs
  double relative_slack = 0.0;  // margin / max(1, |rhs|)
  ReportKind kind = ReportKind::Inequality;
  double tolerance = 0.0;
  bool skipped = false;
  std::string note;
};

inline constexpr double kInequalityAtol = 1e-9;

/// holds ⟺ lhs ≤ rhs + 1e-9·max(1, |rhs|).
InequalityReport make_inequality(std::string name, double lhs, double rhs,
                                 double atol_scale = kInequalityAtol);

/// holds ⟺ lhs < rhs, with no tolerance.
InequalityReport make_strict(std::string name, double lhs, double rhs);

/// holds ⟺ |lhs − rhs| ≤ rtol·|rhs| + 1e-13.
InequalityReport make_equality(std::string name, double lhs, double rhs, double rtol);

/// Placeholder that counts as passing; `note` says why nothing was checked.
InequalityReport make_skipped(std::string name, std::string note);

}  // namespace gaussmod
