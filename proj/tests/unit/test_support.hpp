#pragma once

#include <cmath>
#include <random>

#include "specrank/types.hpp"

namespace specrank::testing {

// Anti-symmetric matrix with entries uniform in [-scale, scale], drawn from
// std::mt19937 so tests do not depend on the library's own generator.
inline Matrix random_antisym(Eigen::Index n, unsigned seed, double scale = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      h(i, j) = dist(gen);
      h(j, i) = -h(i, j);
    }
  }
  return h;
}

inline Vector random_vector(Eigen::Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  Vector v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

// |<a, b>| for unit complex vectors.
inline double overlap(const ComplexVector& a, const ComplexVector& b) {
  const ComplexScalar c = inner(a, b);
  return std::hypot(c.re, c.im);
}

}  // namespace specrank::testing
