#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "specrank/eigensolver.hpp"
#include "specrank/ero_model.hpp"
#include "specrank/types.hpp"

namespace specrank {

enum class Method { kUnnormalized, kNormalized };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

// 1-based rank of each item.
using Permutation = std::vector<std::size_t>;

struct SpectralEstimate {
  Method method = Method::kUnnormalized;
  EigenPair eigen;         // eigenvector before rotation
  double theta_hat = 0.0;  // in (-pi, pi]
  Vector score;            // Re(e^{i theta} phi) or D Re(e^{i theta} psi)
  Permutation permutation;
  int sign_used = 1;
};

// Phase that makes the real part of e^{i theta} v orthogonal to the ones
// vector and the imaginary part sum to a non-positive value, which is the
// orientation of the population eigenvector (imaginary part along -1).
// Returns 0 when both sums vanish.
double rotation_angle(const Vector& re, const Vector& im);

// e^{i theta} v.
ComplexVector rotate(const ComplexVector& v, double theta);

// Ascending ranks, 1-based; ties broken by item index.
Permutation ranks_ascending(const Vector& score);

SpectralEstimate rank_unnormalized(const ComparisonMatrix& h,
                                   const SolverOptions& options = {});
SpectralEstimate rank_normalized(const ComparisonMatrix& h,
                                 const SolverOptions& options = {});
SpectralEstimate rank(Method method, const ComparisonMatrix& h,
                      const SolverOptions& options = {});

// Resolves the global sign against a known reference: flips the score and
// reverses the permutation when that strictly lowers the l-infinity gap
// between the normalized vectors. Idempotent.
SpectralEstimate align_sign(SpectralEstimate estimate, const Vector& reference);

// {"method", "theta_hat", "eigenvalue", "score", "permutation"}.
std::string estimate_to_json(const SpectralEstimate& estimate);

}  // namespace specrank
