#include "specrank/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "specrank/errors.hpp"

namespace specrank {
namespace {

void check_permutation(std::span<const std::size_t> pi) {
  const std::size_t n = pi.size();
  std::vector<bool> seen(n + 1, false);
  for (const std::size_t rank : pi) {
    if (rank < 1 || rank > n || seen[rank]) {
      throw Error(ErrorKind::kNotAPermutation,
                  "ranks must be a bijection on {1..n}");
    }
    seen[rank] = true;
  }
}

void check_pair(std::span<const std::size_t> pi1, std::span<const std::size_t> pi2) {
  if (pi1.size() != pi2.size()) {
    throw Error(ErrorKind::kNotAPermutation, "permutations differ in length");
  }
  if (pi1.size() < 2) {
    throw Error(ErrorKind::kNotAPermutation, "displacement needs n >= 2");
  }
  check_permutation(pi1);
  check_permutation(pi2);
}

DisplacementReport finish(std::vector<std::size_t> counts) {
  DisplacementReport report;
  const double denom = static_cast<double>(counts.size() - 1);
  report.per_item.reserve(counts.size());
  double total = 0.0;
  for (const std::size_t c : counts) {
    const double rho = static_cast<double>(c) / denom;
    report.per_item.push_back(rho);
    report.max = std::max(report.max, rho);
    total += rho;
  }
  report.mean = total / static_cast<double>(counts.size());
  return report;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

double relative_linf_error(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kInvalidArgument, "vectors differ in length");
  }
  const double x_norm = x.norm();
  const double y_norm = y.norm();
  if (!(x_norm > 0.0) || !(y_norm > 0.0)) {
    throw Error(ErrorKind::kZeroVector, "relative error of a zero vector");
  }
  const Vector scaled = (y_norm / x_norm) * x;
  const double plus = (scaled - y).cwiseAbs().maxCoeff();
  const double minus = (scaled + y).cwiseAbs().maxCoeff();
  return std::min(plus, minus) / y.cwiseAbs().maxCoeff();
}

DisplacementReport displacement(std::span<const std::size_t> pi1,
                                std::span<const std::size_t> pi2) {
  check_pair(pi1, pi2);
  const std::size_t n = pi1.size();
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool before1 = pi1[i] < pi1[j];
      const bool before2 = pi2[i] < pi2[j];
      if (before1 != before2) {
        ++counts[i];
        ++counts[j];
      }
    }
  }
  return finish(std::move(counts));
}

DisplacementReport displacement_fast(std::span<const std::size_t> pi1,
                                     std::span<const std::size_t> pi2) {
  check_pair(pi1, pi2);
  const std::size_t n = pi1.size();
  // Visit items in pi1 order; the Fenwick tree holds pi2 ranks seen so far.
  std::vector<std::size_t> by_rank1(n);
  for (std::size_t i = 0; i < n; ++i) by_rank1[pi1[i] - 1] = i;

  std::vector<std::size_t> tree(n + 1, 0);
  auto add = [&](std::size_t pos) {
    for (; pos <= n; pos += pos & (~pos + 1)) ++tree[pos];
  };
  auto prefix = [&](std::size_t pos) {
    std::size_t total = 0;
    for (; pos > 0; pos -= pos & (~pos + 1)) total += tree[pos];
    return total;
  };

  std::vector<std::size_t> counts(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t item = by_rank1[k];
    const std::size_t r2 = pi2[item];
    // Earlier in pi1 but later in pi2.
    const std::size_t inverted_before = k - prefix(r2);
    // Later in pi1 but earlier in pi2: (r2 - 1) items precede in pi2,
    // prefix(r2) of them were already seen.
    const std::size_t inverted_after = (r2 - 1) - prefix(r2);
    counts[item] = inverted_before + inverted_after;
    add(r2);
  }
  return finish(std::move(counts));
}

std::uint64_t discordant_pairs(std::span<const std::size_t> pi1,
                               std::span<const std::size_t> pi2) {
  check_pair(pi1, pi2);
  const std::size_t n = pi1.size();
  // Inversions of the pi2 ranks listed in pi1 order, by merge sort.
  std::vector<std::size_t> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[pi1[i] - 1] = pi2[i];
  std::vector<std::size_t> buffer(n);
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (seq[a] <= seq[b]) {
          buffer[out++] = seq[a++];
        } else {
          inversions += mid - a;
          buffer[out++] = seq[b++];
        }
      }
      while (a < mid) buffer[out++] = seq[a++];
      while (b < hi) buffer[out++] = seq[b++];
    }
    seq.swap(buffer);
  }
  return inversions;
}

std::int64_t kemeny_mismatch(const Vector& score, const ComparisonMatrix& h) {
  const Eigen::Index n = h.entries.rows();
  if (score.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "score length mismatch");
  }
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double hij = h.entries(i, j);
      if (i == j || hij == 0.0) continue;
      total += std::abs(sign(score[i] - score[j]) - sign(hij));
    }
  }
  return total;
}

}  // namespace specrank
