#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "specrank/types.hpp"

namespace specrank {

enum class GroundTruthKind { kUniformGrid, kSortedGamma, kCustom };

std::string_view to_string(GroundTruthKind kind);
GroundTruthKind parse_ground_truth_kind(std::string_view text);

// Hidden scores r with their uniform bound M (|r_i| <= M).
struct GroundTruth {
  Vector scores;
  double bound = 0.0;
  GroundTruthKind kind = GroundTruthKind::kCustom;

  std::size_t size() const { return static_cast<std::size_t>(scores.size()); }
};

// uniform-grid: r_k = k for k = 1..n and M = n.
// sorted-gamma: n Gamma(shape, scale) draws sorted ascending, M = max score.
GroundTruth make_ground_truth(GroundTruthKind kind, std::size_t n,
                              double gamma_shape = 1.0,
                              double gamma_scale = 1.0,
                              std::uint64_t seed = 0);

// Validates |r_i| <= M and M > 0.
GroundTruth make_custom_ground_truth(Vector scores, double bound);

struct EroParams {
  std::size_t n = 0;
  double p = 1.0;    // observation probability
  double eta = 1.0;  // probability an observation is clean
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) unless n >= 2, 0 < p <= 1, 0 < eta <= 1.
  void validate() const;
};

struct ComparisonMatrix {
  Matrix entries;  // anti-symmetric H
  Vector degree;   // D_ii = sum_j |H_ij|

  // Computes the degree vector; throws unless `entries` is square and
  // exactly anti-symmetric.
  static ComparisonMatrix from_entries(Matrix entries);

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

// H = signal + noise, and H = X o (Y o (r1^T - 1r^T) + (J - Y) o Z).
struct NoiseDecomposition {
  Matrix signal;       // eta p (r1^T - 1r^T)
  Matrix noise;        // H - signal
  BoolMatrix mask_x;   // observed pairs, symmetric, zero diagonal
  BoolMatrix mask_y;   // clean pairs, symmetric, zero diagonal
  Matrix outliers;     // Z, anti-symmetric, zero diagonal
};

struct EroSample {
  ComparisonMatrix comparisons;
  NoiseDecomposition decomposition;
};

// Each pair i < j is drawn independently from the ERO model using the
// sampling stream of params.seed; the lower triangle is the negated mirror.
EroSample sample_comparisons(const GroundTruth& truth, const EroParams& params);

// eta p (r1^T - 1r^T).
Matrix expected_comparisons(const GroundTruth& truth, const EroParams& params);

// E[D_ii] = p eta sum_j |r_i - r_j| + p (1 - eta)(n - 1) M / 2.
Vector expected_degree(const GroundTruth& truth, const EroParams& params);

// Regenerates H from the masks, outliers and scores; used to audit a
// decomposition.
Matrix assemble_from_masks(const GroundTruth& truth,
                           const NoiseDecomposition& decomposition);

}  // namespace specrank
