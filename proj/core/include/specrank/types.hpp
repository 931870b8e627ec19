#pragma once

#include <cmath>

#include <Eigen/Core>

namespace specrank {

// Dense row-major storage throughout; comparison matrices are at most a few
// thousand items on a side and usually well filled.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BoolMatrix =
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// A complex vector kept as two real halves.
struct ComplexVector {
  Vector re;
  Vector im;

  Eigen::Index size() const { return re.size(); }
  double squared_norm() const { return re.squaredNorm() + im.squaredNorm(); }
  double norm() const { return std::sqrt(squared_norm()); }
};

// <a, b> = a^H b for complex vectors stored as (re, im) pairs.
struct ComplexScalar {
  double re = 0.0;
  double im = 0.0;
};

inline ComplexScalar inner(const ComplexVector& a, const ComplexVector& b) {
  return {a.re.dot(b.re) + a.im.dot(b.im), a.re.dot(b.im) - a.im.dot(b.re)};
}

}  // namespace specrank
