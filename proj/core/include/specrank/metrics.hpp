#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specrank/ero_model.hpp"
#include "specrank/types.hpp"

namespace specrank {

// min over s in {+1, -1} of || (||y|| / ||x||) x - s y ||_inf / ||y||_inf.
// Throws kZeroVector for a zero input and kInvalidArgument on length mismatch.
double relative_linf_error(const Vector& x, const Vector& y);

struct DisplacementReport {
  std::vector<double> per_item;  // rho_i in [0, 1]
  double max = 0.0;
  double mean = 0.0;
};

// rho_i = #{j : the order of (i, j) differs between pi1 and pi2} / (n - 1),
// by a direct O(n^2) scan. Permutations hold 1-based ranks.
// Throws kNotAPermutation unless both are bijections on {1..n}, n >= 2.
DisplacementReport displacement(std::span<const std::size_t> pi1,
                                std::span<const std::size_t> pi2);

// Same report in O(n log n) with a Fenwick tree over pi2 ranks.
DisplacementReport displacement_fast(std::span<const std::size_t> pi1,
                                     std::span<const std::size_t> pi2);

// Number of unordered pairs ordered differently by the two permutations.
std::uint64_t discordant_pairs(std::span<const std::size_t> pi1,
                               std::span<const std::size_t> pi2);

// sum over ordered pairs (i, j) with H_ij != 0 of
// |sign(score_i - score_j) - sign(H_ij)|, with sign(0) = 0.
std::int64_t kemeny_mismatch(const Vector& score, const ComparisonMatrix& h);

}  // namespace specrank
