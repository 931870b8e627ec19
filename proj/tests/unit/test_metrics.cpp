#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "specrank/errors.hpp"
#include "specrank/metrics.hpp"
#include "specrank/ranking.hpp"
#include "test_support.hpp"

using namespace specrank;

namespace {

Permutation random_permutation(std::size_t n, std::mt19937& gen) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{1});
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

// Independent evaluation of R from its definition.
double relative_error_oracle(const Vector& x, const Vector& y) {
  double best = INFINITY;
  for (const double s : {1.0, -1.0}) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(y.norm() / x.norm() * x[i] - s * y[i]));
    }
    best = std::min(best, worst);
  }
  return best / y.cwiseAbs().maxCoeff();
}

std::uint64_t discordant_oracle(const Permutation& a, const Permutation& b) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] < a[j]) != (b[i] < b[j])) ++count;
    }
  }
  return count;
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

}  // namespace

TEST(RelativeError, ZeroForSelfAndScaledCopies) {
  const Vector y = (Vector(4) << 1, -2, 0.5, 3).finished();
  EXPECT_EQ(relative_linf_error(y, y), 0.0);
  for (const double c : {-3.0, 0.25, 10.0}) {
    EXPECT_NEAR(relative_linf_error(c * y, y), 0.0, 1e-15);
  }
}

TEST(RelativeError, OrthogonalBasisVectors) {
  const Vector x = (Vector(2) << 0, 1).finished();
  const Vector y = (Vector(2) << 1, 0).finished();
  EXPECT_DOUBLE_EQ(relative_linf_error(x, y), 1.0);
}

TEST(RelativeError, MatchesOracle) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const Vector x = specrank::testing::random_vector(3 + seed % 30, seed);
    const Vector y = specrank::testing::random_vector(3 + seed % 30, seed + 500);
    const double r = relative_linf_error(x, y);
    EXPECT_NEAR(r, relative_error_oracle(x, y), 1e-12);
    EXPECT_NEAR(r, relative_linf_error(-x, y), 1e-12);
    EXPECT_NEAR(r, relative_linf_error(4.5 * x, y), 1e-12);
    // Bounded via ||.||_inf <= ||.||_2 and ||y||_2 <= sqrt(n) ||y||_inf.
    EXPECT_LE(r, 2 * std::sqrt(static_cast<double>(x.size())) + 1e-12);
  }
}

TEST(RelativeError, Errors) {
  EXPECT_EQ(kind_of([] { relative_linf_error(Vector::Zero(3), Vector::Ones(3)); }),
            ErrorKind::kZeroVector);
  EXPECT_EQ(kind_of([] { relative_linf_error(Vector::Ones(3), Vector::Zero(3)); }),
            ErrorKind::kZeroVector);
  EXPECT_EQ(kind_of([] { relative_linf_error(Vector::Ones(3), Vector::Ones(4)); }),
            ErrorKind::kInvalidArgument);
}

TEST(Displacement, ThreeItemExample) {
  const Permutation a{1, 2, 3}, b{2, 1, 3};
  for (const auto& report : {displacement(a, b), displacement_fast(a, b)}) {
    ASSERT_EQ(report.per_item.size(), 3u);
    EXPECT_DOUBLE_EQ(report.per_item[0], 0.5);
    EXPECT_DOUBLE_EQ(report.per_item[1], 0.5);
    EXPECT_DOUBLE_EQ(report.per_item[2], 0.0);
    EXPECT_DOUBLE_EQ(report.max, 0.5);
    EXPECT_DOUBLE_EQ(report.mean, 1.0 / 3.0);
  }
}

TEST(Displacement, IdentityAndReversal) {
  Permutation id(7), rev(7);
  std::iota(id.begin(), id.end(), std::size_t{1});
  std::iota(rev.rbegin(), rev.rend(), std::size_t{1});
  const auto same = displacement_fast(id, id);
  EXPECT_EQ(same.max, 0.0);
  const auto flipped = displacement_fast(id, rev);
  for (const double v : flipped.per_item) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_DOUBLE_EQ(flipped.mean, 1.0);
}

TEST(Displacement, FastMatchesScanAndIdentities) {
  std::mt19937 gen(17);
  std::uniform_int_distribution<std::size_t> size(3, 200);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = size(gen);
    const auto a = random_permutation(n, gen);
    const auto b = random_permutation(n, gen);
    const auto slow = displacement(a, b);
    const auto fast = displacement_fast(a, b);
    ASSERT_EQ(slow.per_item.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_DOUBLE_EQ(slow.per_item[i], fast.per_item[i]);
      EXPECT_GE(fast.per_item[i], 0.0);
      EXPECT_LE(fast.per_item[i], 1.0);
    }
    EXPECT_DOUBLE_EQ(slow.max, fast.max);
    EXPECT_NEAR(slow.mean, fast.mean, 1e-15);

    // Each discordant pair is counted once at each endpoint.
    const std::uint64_t discordant = discordant_oracle(a, b);
    EXPECT_EQ(discordant_pairs(a, b), discordant);
    const double total =
        std::accumulate(fast.per_item.begin(), fast.per_item.end(), 0.0) * (n - 1);
    EXPECT_NEAR(total, 2.0 * discordant, 1e-9);

    const auto swapped = displacement_fast(b, a);
    EXPECT_EQ(swapped.per_item, fast.per_item);

    // Relabelling items leaves the multiset of displacements unchanged.
    const auto relabel = random_permutation(n, gen);
    Permutation ra(n), rb(n);
    for (std::size_t i = 0; i < n; ++i) {
      ra[relabel[i] - 1] = a[i];
      rb[relabel[i] - 1] = b[i];
    }
    auto x = fast.per_item, y = displacement_fast(ra, rb).per_item;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    EXPECT_EQ(x, y);
  }
}

TEST(Displacement, RejectsNonPermutations) {
  const Permutation ok{1, 2, 3};
  for (const Permutation& bad : {Permutation{1, 1, 3}, Permutation{0, 1, 2},
                                 Permutation{1, 2, 4}, Permutation{1, 2}}) {
    EXPECT_EQ(kind_of([&] { displacement(ok, bad); }), ErrorKind::kNotAPermutation);
    EXPECT_EQ(kind_of([&] { displacement_fast(bad, ok); }), ErrorKind::kNotAPermutation);
  }
  const Permutation single{1};
  EXPECT_EQ(kind_of([&] { displacement_fast(single, single); }),
            ErrorKind::kNotAPermutation);
}

TEST(Kemeny, ConsistentScoreHasNoMismatch) {
  const Vector r = (Vector(4) << 4, 1, 3, 2).finished();
  Matrix h = r * Vector::Ones(4).transpose() - Vector::Ones(4) * r.transpose();
  h(0, 2) = h(2, 0) = 0;
  const auto cm = ComparisonMatrix::from_entries(h);
  EXPECT_EQ(kemeny_mismatch(r, cm), 0);
  // Reversing the score costs 2 at each of the two ordered entries per edge.
  const std::int64_t edges = 5;
  EXPECT_EQ(kemeny_mismatch(-r, cm), 4 * edges);
}

TEST(Kemeny, ZeroMatrixAndTiedScores) {
  const auto empty = ComparisonMatrix::from_entries(Matrix::Zero(3, 3));
  EXPECT_EQ(kemeny_mismatch(Vector::Ones(3), empty), 0);
  const auto h = ComparisonMatrix::from_entries(specrank::testing::random_antisym(5, 3));
  // A constant score disagrees by exactly 1 on every nonzero entry.
  EXPECT_EQ(kemeny_mismatch(Vector::Zero(5), h), 20);
}
