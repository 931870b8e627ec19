#include <algorithm>
#include <cmath>
#include <numeric>

#include "specrank/eigensolver.hpp"
#include "specrank/errors.hpp"

namespace specrank {
namespace {

constexpr Eigen::Index kOracleMaxN = 64;
constexpr int kMaxSweeps = 100;

// Cyclic Jacobi on a dense symmetric matrix: A <- J^T A J until the
// off-diagonal mass vanishes. Converges for every symmetric input.
void jacobi_eigen(Eigen::MatrixXd& a, Eigen::MatrixXd& v) {
  const Eigen::Index m = a.rows();
  v = Eigen::MatrixXd::Identity(m, m);
  const double scale = std::max(a.norm(), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < m; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= 1e-15 * scale) return;
    for (Eigen::Index p = 0; p < m; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
}

}  // namespace

DenseOracleResult dense_oracle_eigen(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "operator must be square");
  }
  const Eigen::Index n = h.rows();
  if (n > kOracleMaxN) {
    throw Error(ErrorKind::kTooLarge, "dense oracle is limited to n <= 64");
  }
  // i H = Hermitian with real part 0 and imaginary part H; its real
  // embedding [[0, -H], [H, 0]] carries every eigenvalue twice, and an
  // eigenvector (x; y) of the embedding maps to x + i y.
  Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  embed.topRightCorner(n, n) = -h;
  embed.bottomLeftCorner(n, n) = h;
  Eigen::MatrixXd vectors;
  jacobi_eigen(embed, vectors);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(2 * n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return embed(a, a) > embed(b, b);
  });

  DenseOracleResult out;
  out.values.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double first = embed(order[2 * k], order[2 * k]);
    const double second = embed(order[2 * k + 1], order[2 * k + 1]);
    out.values.push_back(0.5 * (first + second));
  }
  const Eigen::Index top = order.front();
  out.top_vector.re = vectors.col(top).head(n);
  out.top_vector.im = vectors.col(top).tail(n);
  const double norm = out.top_vector.norm();
  out.top_vector.re /= norm;
  out.top_vector.im /= norm;
  return out;
}

std::vector<double> dense_oracle_spectrum(const Matrix& h) {
  return dense_oracle_eigen(h).values;
}

}  // namespace specrank
