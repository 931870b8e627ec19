#include "specrank/ero_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "specrank/errors.hpp"
#include "specrank/rng.hpp"

namespace specrank {

std::string_view to_string(GroundTruthKind kind) {
  switch (kind) {
    case GroundTruthKind::kUniformGrid: return "uniform-grid";
    case GroundTruthKind::kSortedGamma: return "sorted-gamma";
    case GroundTruthKind::kCustom: return "custom";
  }
  return "custom";
}

GroundTruthKind parse_ground_truth_kind(std::string_view text) {
  if (text == "uniform-grid") return GroundTruthKind::kUniformGrid;
  if (text == "sorted-gamma") return GroundTruthKind::kSortedGamma;
  if (text == "custom") return GroundTruthKind::kCustom;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown ground truth kind '" + std::string(text) + "'");
}

GroundTruth make_ground_truth(GroundTruthKind kind, std::size_t n,
                              double gamma_shape, double gamma_scale,
                              std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorKind::kInvalidArgument, "ground truth needs n >= 2");
  }
  GroundTruth truth;
  truth.kind = kind;
  truth.scores.resize(static_cast<Eigen::Index>(n));
  switch (kind) {
    case GroundTruthKind::kUniformGrid:
      for (std::size_t k = 0; k < n; ++k) {
        truth.scores[static_cast<Eigen::Index>(k)] = static_cast<double>(k + 1);
      }
      truth.bound = static_cast<double>(n);
      break;
    case GroundTruthKind::kSortedGamma: {
      if (!(gamma_shape > 0.0) || !(gamma_scale > 0.0)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "gamma shape and scale must be positive");
      }
      auto engine = make_stream(seed, StreamPurpose::kGroundTruth);
      std::gamma_distribution<double> gamma(gamma_shape, gamma_scale);
      for (auto& score : truth.scores) score = gamma(engine);
      std::sort(truth.scores.begin(), truth.scores.end());
      // Gamma scores are unbounded; the realized maximum is the model bound.
      truth.bound = truth.scores.maxCoeff();
      break;
    }
    case GroundTruthKind::kCustom:
      throw Error(ErrorKind::kInvalidArgument,
                  "custom ground truth needs explicit scores");
  }
  return truth;
}

GroundTruth make_custom_ground_truth(Vector scores, double bound) {
  if (scores.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "ground truth needs n >= 2");
  }
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorKind::kInvalidArgument, "score bound must be positive");
  }
  if (!scores.allFinite() || scores.cwiseAbs().maxCoeff() > bound) {
    throw Error(ErrorKind::kInvalidArgument,
                "every score must lie in [-bound, bound]");
  }
  return GroundTruth{std::move(scores), bound, GroundTruthKind::kCustom};
}

void EroParams::validate() const {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n must be >= 2");
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "p must lie in (0, 1]");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eta must lie in (0, 1]");
  }
}

ComparisonMatrix ComparisonMatrix::from_entries(Matrix entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "comparison matrix must be square");
  }
  const Eigen::Index n = entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (entries(i, i) != 0.0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "comparison matrix must have a zero diagonal");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (entries(i, j) != -entries(j, i)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "comparison matrix must be anti-symmetric");
      }
    }
  }
  ComparisonMatrix out;
  out.degree = entries.cwiseAbs().rowwise().sum();
  out.entries = std::move(entries);
  return out;
}

namespace {

void check_sizes(const GroundTruth& truth, const EroParams& params) {
  params.validate();
  if (truth.size() != params.n) {
    throw Error(ErrorKind::kInvalidArgument,
                "ground truth length does not match params.n");
  }
}

}  // namespace

Matrix expected_comparisons(const GroundTruth& truth, const EroParams& params) {
  check_sizes(truth, params);
  const Eigen::Index n = truth.scores.size();
  const double scale = params.eta * params.p;
  Matrix signal(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      signal(i, j) = scale * (truth.scores[i] - truth.scores[j]);
    }
  }
  return signal;
}

EroSample sample_comparisons(const GroundTruth& truth, const EroParams& params) {
  check_sizes(truth, params);
  const Eigen::Index n = truth.scores.size();
  const double bound = truth.bound;
  const auto& r = truth.scores;

  Matrix entries = Matrix::Zero(n, n);
  NoiseDecomposition parts;
  parts.mask_x = BoolMatrix::Constant(n, n, false);
  parts.mask_y = BoolMatrix::Constant(n, n, false);
  parts.outliers = Matrix::Zero(n, n);

  auto engine = make_stream(params.seed, StreamPurpose::kSampling);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // Three draws per pair regardless of outcome keep stream positions fixed.
      const bool observed = engine.uniform() < params.p;
      const bool clean = engine.uniform() < params.eta;
      const double z = bound * (2.0 * engine.uniform() - 1.0);

      parts.mask_x(i, j) = parts.mask_x(j, i) = observed;
      parts.mask_y(i, j) = parts.mask_y(j, i) = clean;
      parts.outliers(i, j) = z;
      parts.outliers(j, i) = -z;

      double value = 0.0;
      if (observed) value = clean ? r[i] - r[j] : z;
      entries(i, j) = value;
      entries(j, i) = -value;
    }
  }

  parts.signal = expected_comparisons(truth, params);
  parts.noise = entries - parts.signal;

  EroSample sample;
  sample.comparisons = ComparisonMatrix::from_entries(std::move(entries));
  sample.decomposition = std::move(parts);
  return sample;
}

Vector expected_degree(const GroundTruth& truth, const EroParams& params) {
  check_sizes(truth, params);
  const Eigen::Index n = truth.scores.size();
  const auto& r = truth.scores;
  const double outlier_part = params.p * (1.0 - params.eta) *
                              static_cast<double>(n - 1) * truth.bound / 2.0;
  Vector degree(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    degree[i] = params.p * params.eta * (r.array() - r[i]).abs().sum() +
                outlier_part;
  }
  return degree;
}

Matrix assemble_from_masks(const GroundTruth& truth,
                           const NoiseDecomposition& parts) {
  const Eigen::Index n = truth.scores.size();
  const auto& r = truth.scores;
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || !parts.mask_x(i, j)) continue;
      h(i, j) = parts.mask_y(i, j) ? r[i] - r[j] : parts.outliers(i, j);
    }
  }
  return h;
}

}  // namespace specrank
