#pragma once

#include <cmath>

#include <doctest.h>

#include "gaussmod/matops.hpp"

namespace testing {

using gaussmod::CMatrix;
using gaussmod::Complex;
using gaussmod::RMatrix;
using gaussmod::RVector;

inline RMatrix symplectic2() {
  RMatrix j(2, 2);
  j << 0, 1, -1, 0;
  return j;
}

inline RMatrix diag(std::initializer_list<double> values) {
  RVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal().toDenseMatrix();
}

inline CMatrix cdiag(std::initializer_list<double> values) { return diag(values).cast<Complex>(); }

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
