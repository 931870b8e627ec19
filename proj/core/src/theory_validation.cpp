#include "specrank/theory_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specrank/errors.hpp"
#include "specrank/population.hpp"
#include "specrank/rng.hpp"

namespace specrank {
namespace {

double noise_scale(const GroundTruth& truth, const EroParams& params) {
  const double n = static_cast<double>(params.n);
  return truth.bound * std::sqrt(params.p * n * std::log(n));
}

double complex_linf(const ComplexVector& v) {
  return (v.re.array().square() + v.im.array().square()).sqrt().maxCoeff();
}

// min over |beta| = 1 of ||a - beta b||, beta = <b, a> / |<b, a>|.
double aligned_distance(const ComplexVector& a, const ComplexVector& b) {
  const ComplexScalar c = inner(b, a);
  const double mag = std::hypot(c.re, c.im);
  double beta_re = 1.0, beta_im = 0.0;
  if (mag > 0.0) {
    beta_re = c.re / mag;
    beta_im = c.im / mag;
  }
  const Vector dre = a.re - (beta_re * b.re - beta_im * b.im);
  const Vector dim = a.im - (beta_re * b.im + beta_im * b.re);
  return std::sqrt(dre.squaredNorm() + dim.squaredNorm());
}

LemmaCheckResult start(const char* name, double bound_constant) {
  LemmaCheckResult out;
  out.name = name;
  out.bound_constant = bound_constant;
  return out;
}

void record(LemmaCheckResult& out, double ratio) {
  out.ratios.push_back(ratio);
  out.observed_max_ratio = std::max(out.observed_max_ratio, ratio);
}

void finish(LemmaCheckResult& out) {
  out.passed = out.observed_max_ratio <= out.bound_constant;
}

}  // namespace

EroParams trial_params(const EroParams& params, int trial) {
  EroParams out = params;
  out.seed = derive_seed(params.seed, static_cast<std::uint64_t>(trial));
  return out;
}

LemmaCheckResult check_noise_norm(const GroundTruth& truth, const EroParams& params,
                                  int trials, double bound_constant) {
  if (params.n > 2000) {
    throw Error(ErrorKind::kTooLarge, "noise norm check is limited to n <= 2000");
  }
  auto out = start(check_names::kNoiseNorm, bound_constant);
  const double scale = noise_scale(truth, params);
  for (int t = 0; t < trials; ++t) {
    const auto sample = sample_comparisons(truth, trial_params(params, t));
    record(out, spectral_norm(sample.decomposition.noise) / scale);
    ++out.trials;
  }
  finish(out);
  return out;
}

LemmaCheckResult check_row_noise(const GroundTruth& truth, const EroParams& params,
                                 int trials, const Vector& w,
                                 double bound_constant) {
  if (w.size() != static_cast<Eigen::Index>(params.n)) {
    throw Error(ErrorKind::kInvalidArgument, "test vector length mismatch");
  }
  const double w_inf = w.cwiseAbs().maxCoeff();
  if (!(w_inf > 0.0)) throw Error(ErrorKind::kZeroVector, "test vector is zero");
  auto out = start(check_names::kRowNoise, bound_constant);
  const double scale = noise_scale(truth, params) * w_inf;
  for (int t = 0; t < trials; ++t) {
    const auto sample = sample_comparisons(truth, trial_params(params, t));
    const Vector dw = sample.decomposition.noise * w;
    record(out, dw.cwiseAbs().maxCoeff() / scale);
    ++out.trials;
  }
  finish(out);
  return out;
}

LemmaCheckResult check_davis_kahan(const GroundTruth& truth, const EroParams& params,
                                   int trials, double bound_constant,
                                   const SolverOptions& options) {
  auto out = start(check_names::kDavisKahan, bound_constant);
  const auto population = population_spectrum(truth, params);
  for (int t = 0; t < trials; ++t) {
    const EroParams tp = trial_params(params, t);
    const auto sample = sample_comparisons(truth, tp);
    const double noise = spectral_norm(sample.decomposition.noise);
    if (population.sigma_bar <= noise) {
      throw Error(ErrorKind::kOutOfRegime,
                  "trial " + std::to_string(t) +
                      ": noise norm exceeds the population eigenvalue");
    }
    SolverOptions opts = options;
    opts.seed = tp.seed;
    const auto pair = top_eigenpair_antisym(sample.comparisons, opts);
    const double error = aligned_distance(pair.vector, population.phi_bar);
    const double bound = noise / (population.sigma_bar - noise);
    double ratio = 0.0;
    if (bound > 0.0) {
      ratio = error / bound;
    } else if (error > 1e-8) {
      ratio = std::numeric_limits<double>::infinity();
    }
    record(out, ratio);
    out.auxiliary.push_back(error);
    ++out.trials;
  }
  finish(out);
  return out;
}

Matrix leave_one_out_matrix(const EroSample& sample, std::size_t k) {
  const Matrix& h = sample.comparisons.entries;
  if (k >= static_cast<std::size_t>(h.rows())) {
    throw Error(ErrorKind::kInvalidArgument, "leave-one-out index out of range");
  }
  const auto kk = static_cast<Eigen::Index>(k);
  Matrix out = h;
  out.row(kk) = sample.decomposition.signal.row(kk);
  out.col(kk) = sample.decomposition.signal.col(kk);
  return out;
}

LemmaCheckResult leave_one_out_closeness(const GroundTruth& truth,
                                         const EroParams& params,
                                         std::span<const std::size_t> k_indices,
                                         int trials, double bound_constant,
                                         const SolverOptions& options) {
  if (params.n > 500) {
    throw Error(ErrorKind::kTooLarge, "leave-one-out check is limited to n <= 500");
  }
  auto out = start(check_names::kLeaveOneOut, bound_constant);
  const double snr = signal_to_noise(truth, params);
  for (int t = 0; t < trials; ++t) {
    const EroParams tp = trial_params(params, t);
    const auto sample = sample_comparisons(truth, tp);
    SolverOptions opts = options;
    opts.seed = tp.seed;
    const auto full = top_eigenpair_antisym(sample.comparisons, opts);
    for (const std::size_t k : k_indices) {
      const Matrix loo = leave_one_out_matrix(sample, k);
      const auto held = top_eigenpair_antisym(loo, opts);
      const double distance = aligned_distance(full.vector, held.vector);
      out.auxiliary.push_back(distance);
      record(out, distance * snr / complex_linf(held.vector));
    }
    ++out.trials;
  }
  finish(out);
  return out;
}

LemmaCheckResult check_normalized_noise(const GroundTruth& truth,
                                        const EroParams& params, int trials,
                                        double bound_constant) {
  auto out = start(check_names::kNormalizedNoise, bound_constant);
  const auto population = population_spectrum(truth, params);
  const double n = static_cast<double>(params.n);
  const double factor = population.lambda * population.lambda *
                        std::sqrt(params.p * n / std::log(n));
  const Matrix expected_sym =
      symmetric_normalization(expected_comparisons(truth, params), population.d_bar);
  for (int t = 0; t < trials; ++t) {
    const auto sample = sample_comparisons(truth, trial_params(params, t));
    const auto& degree = sample.comparisons.degree;
    if ((degree.array() <= 0.0).any()) {
      ++out.skipped;
      continue;
    }
    const Matrix delta_sym =
        symmetric_normalization(sample.comparisons.entries, degree) - expected_sym;
    const double norm = spectral_norm(delta_sym);
    record(out, norm * factor);
    out.auxiliary.push_back(norm > 0.0 ? population.xi_bar / norm
                                       : std::numeric_limits<double>::infinity());
    ++out.trials;
  }
  finish(out);
  return out;
}

SpectrumCheckResult check_spectrum_structure(const GroundTruth& truth,
                                             const EroParams& params, int trials,
                                             const SolverOptions& options) {
  SpectrumCheckResult out;
  const auto population = population_spectrum(truth, params);
  constexpr double kSlack = 1e-9;
  for (int t = 0; t < trials; ++t) {
    const EroParams tp = trial_params(params, t);
    const auto sample = sample_comparisons(truth, tp);
    const Matrix& h = sample.comparisons.entries;
    const double noise = spectral_norm(sample.decomposition.noise);
    const double scale = std::max(population.sigma_bar, 1.0);

    double sigma = 0.0;
    ComplexVector top;
    if (h.rows() <= 32) {
      const auto oracle = dense_oracle_eigen(h);
      sigma = oracle.values.front();
      top = oracle.top_vector;
      const std::size_t m = oracle.values.size();
      double asym = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        asym = std::max(asym, std::abs(oracle.values[k] + oracle.values[m - 1 - k]));
      }
      ++out.pairing_checked;
      if (asym > 1e-10 * scale) ++out.pairing_violations;
      ++out.interlacing_checked;
      for (std::size_t k = 1; k + 1 < m; ++k) {
        if (std::abs(oracle.values[k]) > noise + kSlack * scale) {
          ++out.interlacing_violations;
          break;
        }
      }
    } else {
      SolverOptions opts = options;
      opts.seed = tp.seed;
      const auto pair = top_eigenpair_antisym(h, opts);
      sigma = pair.value;
      // H is real, so conj(phi) is an eigenvector for -sigma.
      const ComplexVector conj{pair.vector.re, -pair.vector.im};
      ++out.pairing_checked;
      if (eigen_residual(h, conj, -sigma) > 10.0 * pair.residual + 1e-12 * scale) {
        ++out.pairing_violations;
      }
    }
    const double gap = std::abs(sigma - population.sigma_bar);
    if (gap > noise + kSlack * scale) ++out.weyl_violations;
    if (noise > 0.0) out.max_weyl_ratio = std::max(out.max_weyl_ratio, gap / noise);
    ++out.trials;
  }
  return out;
}

}  // namespace specrank
