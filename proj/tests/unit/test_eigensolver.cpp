#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "specrank/eigensolver.hpp"
#include "specrank/errors.hpp"
#include "specrank/population.hpp"
#include "test_support.hpp"

using namespace specrank;
using specrank::testing::overlap;
using specrank::testing::random_antisym;

namespace {

Matrix r123_matrix() {
  const Vector r = (Vector(3) << 1, 2, 3).finished();
  return r * Vector::Ones(3).transpose() - Vector::Ones(3) * r.transpose();
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInvalidArgument;
}

ComparisonMatrix random_instance(std::size_t n, std::uint64_t seed, double p = 0.7,
                                 double eta = 0.6) {
  const auto t = make_ground_truth(GroundTruthKind::kUniformGrid, n);
  return sample_comparisons(t, EroParams{n, p, eta, seed}).comparisons;
}

}  // namespace

TEST(Antisym, ZeroMatrixRejected) {
  EXPECT_EQ(kind_of([] { top_eigenpair_antisym(Matrix::Zero(3, 3)); }),
            ErrorKind::kZeroMatrix);
}

TEST(Antisym, RankTwoExample) {
  const auto pair = top_eigenpair_antisym(r123_matrix());
  EXPECT_NEAR(pair.value, std::sqrt(6.0), 1e-10);
  EXPECT_NEAR(pair.vector.norm(), 1.0, 1e-12);
  EXPECT_LE(pair.residual, 1e-10 * pair.value);
}

TEST(Antisym, MatchesDenseOracleSmall) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = random_instance(6, seed);
    const auto pair = top_eigenpair_antisym(h, SolverOptions{.seed = seed});
    const auto oracle = dense_oracle_eigen(h.entries);
    EXPECT_NEAR(pair.value, oracle.values.front(), 1e-8 * oracle.values.front());
    EXPECT_NEAR(overlap(pair.vector, oracle.top_vector), 1.0, 1e-8);
  }
}

TEST(Antisym, ContractOnLargerInstances) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto h = random_instance(200, seed, 0.3, 0.5);
    const auto pair = top_eigenpair_antisym(h, SolverOptions{.seed = seed});
    EXPECT_NEAR(pair.vector.norm(), 1.0, 1e-12);
    EXPECT_LE(pair.residual, 1e-10 * pair.value);
    EXPECT_NEAR(pair.residual, eigen_residual(h.entries, pair.vector, pair.value), 1e-15);
    EXPECT_NEAR(pair.value, spectral_norm(h.entries), 1e-9 * pair.value);
  }
}

TEST(Antisym, PhaseInvariantResidual) {
  const auto h = random_instance(30, 4);
  const auto pair = top_eigenpair_antisym(h);
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (int k = 0; k < 8; ++k) {
    const double t = angle(gen);
    const ComplexVector v{std::cos(t) * pair.vector.re - std::sin(t) * pair.vector.im,
                          std::sin(t) * pair.vector.re + std::cos(t) * pair.vector.im};
    EXPECT_NEAR(eigen_residual(h.entries, v, pair.value), pair.residual, 1e-12);
  }
}

// Two identical 2x2 rotation blocks: the top eigenvalue 1 is doubly degenerate.
TEST(Antisym, DegenerateTopReported) {
  Matrix h = Matrix::Zero(4, 4);
  h(0, 1) = 1;
  h(1, 0) = -1;
  h(2, 3) = 1;
  h(3, 2) = -1;
  EXPECT_EQ(kind_of([&] { top_eigenpair_antisym(h); }), ErrorKind::kNoConvergence);
}

TEST(Antisym, IterationCapReported) {
  const auto h = random_instance(100, 2, 0.5, 0.2);
  try {
    top_eigenpair_antisym(h, SolverOptions{.max_iter = 2});
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergenceError& e) {
    EXPECT_EQ(e.iterations(), 2);
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Antisym, HistoryEndsBelowTolerance) {
  const auto h = random_instance(80, 3);
  const auto pair = top_eigenpair_antisym(h, SolverOptions{.keep_history = true});
  ASSERT_EQ(static_cast<int>(pair.residual_history.size()), pair.iterations);
  EXPECT_LE(pair.residual_history.back(), 1e-10 * pair.value);
  EXPECT_GT(pair.residual_history.front(), pair.residual_history.back());
}

TEST(Antisym, SeedReproducible) {
  const auto h = random_instance(50, 8);
  const auto a = top_eigenpair_antisym(h, SolverOptions{.seed = 5});
  const auto b = top_eigenpair_antisym(h, SolverOptions{.seed = 5});
  EXPECT_EQ(a.vector.re, b.vector.re);
  EXPECT_EQ(a.vector.im, b.vector.im);
  EXPECT_EQ(a.value, b.value);
}

TEST(Antisym, ConcurrentSolvesAgree) {
  const auto h = random_instance(120, 6);
  const auto reference = top_eigenpair_antisym(h);
  std::vector<EigenPair> results(4);
  {
    std::vector<std::jthread> threads;
    for (auto& r : results) {
      threads.emplace_back([&h, &r] { r = top_eigenpair_antisym(h); });
    }
  }
  for (const auto& r : results) {
    EXPECT_EQ(r.value, reference.value);
    EXPECT_EQ(r.vector.re, reference.vector.re);
  }
}

TEST(Normalized, NoiselessMatchesPopulation) {
  const auto t = make_custom_ground_truth((Vector(3) << 1, 2, 3).finished(), 3.0);
  const EroParams params{3, 1.0, 1.0, 0};
  const auto h = sample_comparisons(t, params).comparisons;
  const auto pair = top_eigenpair_normalized(h);
  EXPECT_NEAR(pair.value, population_spectrum(t, params).xi_bar, 1e-9);
}

TEST(Normalized, IsolatedNode) {
  auto h = random_instance(6, 1).entries;
  h.row(2).setZero();
  h.col(2).setZero();
  const auto cm = ComparisonMatrix::from_entries(h);
  try {
    top_eigenpair_normalized(cm);
    FAIL() << "expected IsolatedNode";
  } catch (const IsolatedNodeError& e) {
    EXPECT_EQ(e.node(), 2u);
    EXPECT_EQ(e.kind(), ErrorKind::kIsolatedNode);
  }
}

TEST(Normalized, ResidualAgainstLeftOperator) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = random_instance(6, seed);
    const auto pair = top_eigenpair_normalized(h, SolverOptions{.seed = seed});
    const Matrix left = h.degree.cwiseInverse().asDiagonal() * h.entries;
    EXPECT_LT(eigen_residual(left, pair.vector, pair.value), 1e-8);
    EXPECT_NEAR(pair.vector.norm(), 1.0, 1e-12);
    // The symmetric proxy has the same spectrum.
    const auto oracle = dense_oracle_spectrum(symmetric_normalization(h.entries, h.degree));
    EXPECT_NEAR(pair.value, oracle.front(), 1e-8 * oracle.front());
  }
}

TEST(SymmetricNormalization, ExactAntiSymmetry) {
  const auto h = random_instance(40, 2);
  const Matrix s = symmetric_normalization(h.entries, h.degree);
  EXPECT_TRUE((s + s.transpose()).isZero(0.0));
  const Vector d = h.degree.cwiseInverse().cwiseSqrt();
  EXPECT_LT((s - d.asDiagonal() * h.entries * d.asDiagonal()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DenseOracle, RankTwoSpectrum) {
  const auto values = dense_oracle_spectrum(r123_matrix());
  ASSERT_EQ(values.size(), 3u);
  EXPECT_NEAR(values[0], std::sqrt(6.0), 1e-10);
  EXPECT_NEAR(values[1], 0.0, 1e-10);
  EXPECT_NEAR(values[2], -std::sqrt(6.0), 1e-10);
}

TEST(DenseOracle, ZeroMatrix) {
  for (const double v : dense_oracle_spectrum(Matrix::Zero(4, 4))) EXPECT_EQ(v, 0.0);
}

TEST(DenseOracle, PairedSpectrum) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto values = dense_oracle_spectrum(random_antisym(4 + seed % 13, seed));
    const std::size_t m = values.size();
    for (std::size_t k = 0; k < m; ++k) {
      EXPECT_NEAR(values[k], -values[m - 1 - k], 1e-10);
    }
  }
}

// The Jacobi sweep against Eigen's tridiagonal QR on the same embedding.
TEST(DenseOracle, AgreesWithSelfAdjointSolver) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Eigen::Index n = 3 + seed;
    const Matrix h = random_antisym(n, seed + 100, 3.0);
    Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    embed.topRightCorner(n, n) = -h;
    embed.bottomLeftCorner(n, n) = h;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embed);
    const auto values = dense_oracle_spectrum(h);
    // Embedding eigenvalues are those of i H, each twice; ascending here.
    for (Eigen::Index k = 0; k < n; ++k) {
      EXPECT_NEAR(values[static_cast<std::size_t>(k)],
                  solver.eigenvalues()[2 * n - 1 - 2 * k], 1e-10);
    }
  }
}

TEST(DenseOracle, VectorIsEigenvector) {
  const Matrix h = random_antisym(9, 5);
  const auto result = dense_oracle_eigen(h);
  EXPECT_NEAR(result.top_vector.norm(), 1.0, 1e-12);
  EXPECT_LT(eigen_residual(h, result.top_vector, result.values.front()), 1e-10);
}

TEST(DenseOracle, TooLarge) {
  EXPECT_EQ(kind_of([] { dense_oracle_spectrum(Matrix::Zero(65, 65)); }),
            ErrorKind::kTooLarge);
}

TEST(SpectralNorm, MatchesSvd) {
  std::mt19937 gen(3);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix a(40 + trial, 30);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = dist(gen);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    EXPECT_NEAR(spectral_norm(a), svd.singularValues()[0], 1e-10 * svd.singularValues()[0]);
  }
  EXPECT_EQ(spectral_norm(Matrix::Zero(5, 5)), 0.0);
}

TEST(SpectralNorm, AntisymmetricPairs) {
  // Singular values of anti-symmetric matrices come in equal pairs, which
  // stalls plain power iteration ratios but not the norm itself.
  const Matrix h = random_antisym(60, 9);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
  EXPECT_NEAR(spectral_norm(h), svd.singularValues()[0], 1e-10 * svd.singularValues()[0]);
}
