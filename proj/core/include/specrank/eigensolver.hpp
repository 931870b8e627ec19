#pragma once

#include <cstdint>
#include <vector>

#include "specrank/ero_model.hpp"
#include "specrank/types.hpp"

namespace specrank {

struct SolverOptions {
  // Convergence: ||i A v - value v|| <= tol * value.
  double tol = 1e-10;
  // 0 selects 10 n + 1000.
  int max_iter = 0;
  // Seeds the pseudo-random start vector.
  std::uint64_t seed = 0;
  // Report NoConvergence when the next eigenvalue of i A is within this
  // relative distance of the top one.
  double gap_tol = 1e-8;
  // Deflated power steps spent estimating the next eigenvalue; 0 disables.
  int gap_check_iters = 30;
  bool keep_history = false;
};

// Top eigenpair of i A. `vector` has unit norm; `residual` is the absolute
// ||i A v - value v|| measured on the operator the caller asked about.
struct EigenPair {
  double value = 0.0;
  ComplexVector vector;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;
};

// Top eigenpair of i H for real anti-symmetric H, through the top singular
// triplet of H: if H v = s u and H^T u = s v then i H (v + i u) = s (v + i u).
// Throws kZeroMatrix for H = 0 and NoConvergenceError when the tolerance is
// not met or the top eigenvalue is not separated.
EigenPair top_eigenpair_antisym(const Matrix& h, const SolverOptions& options = {});
EigenPair top_eigenpair_antisym(const ComparisonMatrix& h,
                                const SolverOptions& options = {});

// Top eigenpair of i D^{-1} H, solved on D^{-1/2} H D^{-1/2} and mapped back
// with D^{-1/2}. Throws IsolatedNodeError for a zero degree.
EigenPair top_eigenpair_normalized(const ComparisonMatrix& h,
                                   const SolverOptions& options = {});

// D^{-1/2} H D^{-1/2} with exact anti-symmetry preserved.
Matrix symmetric_normalization(const Matrix& h, const Vector& degree);

// Largest singular value of a general matrix (Lanczos on A^T A).
double spectral_norm(const Matrix& a, double tol = 1e-12, int max_iter = 0,
                     std::uint64_t seed = 0);

// ||i A v - value v|| for complex v.
double eigen_residual(const Matrix& a, const ComplexVector& v, double value);

// Every eigenvalue of i H, sorted descending, from a cyclic Jacobi sweep on
// the real symmetric 2n x 2n embedding [[0, -H], [H, 0]]. Oracle scale only:
// throws kTooLarge when n > 64.
std::vector<double> dense_oracle_spectrum(const Matrix& h);

struct DenseOracleResult {
  std::vector<double> values;  // eigenvalues of i H, descending
  ComplexVector top_vector;    // unit eigenvector for values.front()
};
DenseOracleResult dense_oracle_eigen(const Matrix& h);

}  // namespace specrank
