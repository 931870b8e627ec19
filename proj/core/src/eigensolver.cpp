#include "specrank/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "specrank/errors.hpp"
#include "specrank/rng.hpp"

namespace specrank {
namespace {

constexpr int kMaxRestarts = 8;

Vector random_unit(Eigen::Index n, std::uint64_t seed, std::uint64_t draw) {
  auto engine = make_stream(seed, StreamPurpose::kStartVector, draw);
  Vector v(n);
  for (auto& x : v) x = 2.0 * engine.uniform() - 1.0;
  const double norm = v.norm();
  return norm > 0.0 ? Vector(v / norm) : Vector(Vector::Unit(n, 0));
}

int default_max_iter(Eigen::Index n, int requested) {
  return requested > 0 ? requested : static_cast<int>(10 * n + 1000);
}

// Removes the components along the orthonormal pair (a, b), twice for
// stability.
void project_out(Vector& z, const Vector& a, const Vector& b) {
  for (int pass = 0; pass < 2; ++pass) {
    z -= a.dot(z) * a;
    z -= b.dot(z) * b;
  }
}

// Lower estimate of the largest eigenvalue of i H on the complement of the
// converged top pair. H is normal, so that complement is invariant.
double next_eigenvalue_estimate(const Matrix& h, const Vector& w, const Vector& u,
                                const SolverOptions& options) {
  const Eigen::Index n = h.rows();
  if (n < 3 || options.gap_check_iters <= 0) return 0.0;
  Vector z = random_unit(n, options.seed, kMaxRestarts + 1);
  project_out(z, w, u);
  double norm = z.norm();
  if (!(norm > 0.0)) return 0.0;
  z /= norm;
  double estimate = 0.0;
  for (int it = 0; it < options.gap_check_iters; ++it) {
    const Vector hz = h * z;
    estimate = std::max(estimate, hz.norm());
    Vector next = -(h * hz);
    project_out(next, w, u);
    norm = next.norm();
    if (!(norm > 0.0)) break;
    z = next / norm;
  }
  return estimate;
}

}  // namespace

double eigen_residual(const Matrix& a, const ComplexVector& v, double value) {
  // i A (x + i y) = -A y + i A x.
  const Vector re = -(a * v.im) - value * v.re;
  const Vector im = a * v.re - value * v.im;
  return std::sqrt(re.squaredNorm() + im.squaredNorm());
}

EigenPair top_eigenpair_antisym(const Matrix& h, const SolverOptions& options) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "operator must be square and non-empty");
  }
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "tolerance must be positive");
  }
  const Eigen::Index n = h.rows();
  const double frobenius = h.norm();
  if (frobenius == 0.0) {
    throw Error(ErrorKind::kZeroMatrix, "comparison matrix is identically zero");
  }
  const int max_iter = default_max_iter(n, options.max_iter);
  const double stall = 1e-14 * frobenius;

  EigenPair out;
  std::uint64_t draw = 0;
  Vector w = random_unit(n, options.seed, draw);
  Vector u = h * w;
  double s = u.norm();
  double residual = 0.0;
  bool converged = false;

  int it = 0;
  for (; it < max_iter; ++it) {
    if (s <= stall) {
      // Start landed (numerically) in the null space; draw another.
      if (++draw > kMaxRestarts) {
        throw NoConvergenceError(it, residual, "power iteration stagnated");
      }
      w = random_unit(n, options.seed, draw);
      u = h * w;
      s = u.norm();
      continue;
    }
    u /= s;
    const Vector t = h * u;  // ~ -s w at convergence
    residual = (t + s * w).norm() / std::sqrt(2.0);
    if (options.keep_history) out.residual_history.push_back(residual);
    if (residual <= options.tol * s) {
      converged = true;
      break;
    }
    const double t_norm = t.norm();
    if (!(t_norm > 0.0)) {
      s = 0.0;
      continue;
    }
    w = -t / t_norm;
    u = h * w;
    s = u.norm();
  }
  if (!converged) {
    throw NoConvergenceError(it, residual, "residual above tolerance");
  }

  const double next = next_eigenvalue_estimate(h, w, u, options);
  if (next >= (1.0 - options.gap_tol) * s) {
    throw NoConvergenceError(it, residual,
                             "top eigenvalue is not separated from the next one");
  }

  ComplexVector v{w, u};
  const double norm = v.norm();
  v.re /= norm;
  v.im /= norm;
  out.value = s;
  out.residual = eigen_residual(h, v, s);
  out.vector = std::move(v);
  out.iterations = it + 1;
  return out;
}

EigenPair top_eigenpair_antisym(const ComparisonMatrix& h,
                                const SolverOptions& options) {
  return top_eigenpair_antisym(h.entries, options);
}

Matrix symmetric_normalization(const Matrix& h, const Vector& degree) {
  const Eigen::Index n = h.rows();
  const Vector inv_sqrt = degree.cwiseInverse().cwiseSqrt();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = h(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
      out(i, j) = value;
      out(j, i) = -value;
    }
  }
  return out;
}

EigenPair top_eigenpair_normalized(const ComparisonMatrix& h,
                                   const SolverOptions& options) {
  const Eigen::Index n = h.entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(h.degree[i] > 0.0)) throw IsolatedNodeError(static_cast<std::size_t>(i));
  }
  const Matrix h_sym = symmetric_normalization(h.entries, h.degree);
  EigenPair sym = top_eigenpair_antisym(h_sym, options);

  const Vector inv_sqrt = h.degree.cwiseInverse().cwiseSqrt();
  ComplexVector psi{inv_sqrt.cwiseProduct(sym.vector.re),
                    inv_sqrt.cwiseProduct(sym.vector.im)};
  const double norm = psi.norm();
  psi.re /= norm;
  psi.im /= norm;

  const Matrix h_left = h.degree.cwiseInverse().asDiagonal() * h.entries;
  const double residual = eigen_residual(h_left, psi, sym.value);
  // D^{-1/2} maps the symmetric residual into this one with gain at most
  // sqrt(cond(D)).
  const double condition = h.degree.maxCoeff() / h.degree.minCoeff();
  if (residual > options.tol * sym.value * std::sqrt(condition)) {
    throw NoConvergenceError(sym.iterations, residual,
                             "normalized residual above tolerance");
  }
  sym.vector = std::move(psi);
  sym.residual = residual;
  return sym;
}

double spectral_norm(const Matrix& a, double tol, int max_iter,
                     std::uint64_t seed) {
  const Eigen::Index cols = a.cols();
  if (cols == 0 || a.rows() == 0) return 0.0;
  if (a.norm() == 0.0) return 0.0;
  const int steps = max_iter > 0 ? max_iter
                                 : static_cast<int>(std::min<Eigen::Index>(cols, 300));

  // Lanczos with full reorthogonalization on A^T A.
  std::vector<Vector> basis;
  std::vector<double> alphas;
  std::vector<double> betas;
  Vector q = random_unit(cols, seed, 0);
  double previous = 0.0;
  double estimate = 0.0;
  for (int k = 0; k < steps; ++k) {
    basis.push_back(q);
    Vector z = a.transpose() * (a * q);
    alphas.push_back(q.dot(z));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) z -= b.dot(z) * b;
    }
    const double beta = z.norm();

    const auto m = static_cast<Eigen::Index>(alphas.size());
    const Vector diag = Eigen::Map<const Vector>(alphas.data(), m);
    Vector sub = Vector::Zero(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = betas[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
    ritz.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    estimate = ritz.eigenvalues()(m - 1);
    const double tail = std::abs(beta * ritz.eigenvectors()(m - 1, m - 1));
    if (tail <= tol * estimate ||
        (k > 0 && std::abs(estimate - previous) <= tol * estimate) ||
        beta <= 1e-14 * std::sqrt(std::max(estimate, 0.0)) ||
        static_cast<Eigen::Index>(basis.size()) >= cols) {
      break;
    }
    previous = estimate;
    betas.push_back(beta);
    q = z / beta;
  }
  return std::sqrt(std::max(estimate, 0.0));
}

}  // namespace specrank
