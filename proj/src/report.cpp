#include "gaussmod/report.hpp"

#include <algorithm>
#include <cmath>

namespace gaussmod {

namespace {

constexpr double kEqualityFloor = 1e-13;

InequalityReport base(std::string name, double lhs, double rhs, ReportKind kind) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.kind = kind;
  r.margin = rhs - lhs;
  r.relative_slack = r.margin / std::max(1.0, std::abs(rhs));
  return r;
}

}  // namespace

InequalityReport make_inequality(std::string name, double lhs, double rhs, double atol_scale) {
  InequalityReport r = base(std::move(name), lhs, rhs, ReportKind::Inequality);
  r.tolerance = atol_scale * std::max(1.0, std::abs(rhs));
  r.holds = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + r.tolerance;
  return r;
}

InequalityReport make_strict(std::string name, double lhs, double rhs) {
  InequalityReport r = base(std::move(name), lhs, rhs, ReportKind::StrictInequality);
  r.holds = std::isfinite(lhs) && std::isfinite(rhs) && lhs < rhs;
  return r;
}

InequalityReport make_equality(std::string name, double lhs, double rhs, double rtol) {
  InequalityReport r = base(std::move(name), lhs, rhs, ReportKind::Equality);
  r.tolerance = rtol * std::abs(rhs) + kEqualityFloor;
  r.holds = std::isfinite(lhs) && std::isfinite(rhs) && std::abs(lhs - rhs) <= r.tolerance;
  return r;
}

InequalityReport make_skipped(std::string name, std::string note) {
  InequalityReport r;
  r.name = std::move(name);
  r.skipped = true;
  r.note = std::move(note);
  return r;
}

}  // namespace gaussmod
