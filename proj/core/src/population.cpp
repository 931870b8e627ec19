#include "specrank/population.hpp"

#include <cmath>

#include "json.hpp"
#include "specrank/errors.hpp"

namespace specrank {

double signal_to_noise(const GroundTruth& truth, const EroParams& params) {
  params.validate();
  const double n = static_cast<double>(params.n);
  const double alpha = truth.scores.mean();
  const double spread = (truth.scores.array() - alpha).matrix().norm();
  return std::sqrt(params.eta * params.eta * params.p * n / std::log(n)) *
         spread / (std::sqrt(n) * truth.bound);
}

PopulationSpectrum population_spectrum(const GroundTruth& truth,
                                       const EroParams& params) {
  PopulationSpectrum out;
  const Vector& r = truth.scores;
  const Eigen::Index n = r.size();
  const double dn = static_cast<double>(n);
  const double scale = params.eta * params.p;

  out.d_bar = expected_degree(truth, params);  // validates params and sizes

  out.alpha = r.mean();
  const Vector centered = r.array() - out.alpha;
  const double spread = centered.norm();
  if (!(spread > 0.0)) {
    throw Error(ErrorKind::kConstantScores,
                "scores are constant; the signal has no top eigen-direction");
  }
  out.sigma_bar = scale * std::sqrt(dn) * spread;
  out.snr = signal_to_noise(truth, params);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Vector u2 = centered / spread;
  const Vector u1 = Vector::Constant(n, -1.0 / std::sqrt(dn));
  out.phi_bar = {u2 * inv_sqrt2, u1 * inv_sqrt2};
  out.phi_bar2 = {u2 * inv_sqrt2, -u1 * inv_sqrt2};
  out.x_bar_unnorm = out.phi_bar.re;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(out.d_bar[i] > 0.0)) {
      throw Error(ErrorKind::kZeroExpectedDegree,
                  "expected degree of item " + std::to_string(i) + " is zero");
    }
  }
  out.lambda = out.d_bar.minCoeff() / (params.p * dn * truth.bound);

  const Vector inv_d = out.d_bar.cwiseInverse();
  const Vector inv_sqrt_d = inv_d.cwiseSqrt();
  out.gamma = r.dot(inv_d) / inv_d.sum();

  // Singular pair of the symmetrized expectation D^{-1/2} H_bar D^{-1/2}.
  const Vector a = inv_sqrt_d.cwiseProduct((r.array() - out.gamma).matrix());
  const Vector b = inv_sqrt_d;
  out.xi_bar = scale * a.norm() * b.norm();
  const Vector v2 = a / a.norm();
  const Vector v1 = -b / b.norm();

  ComplexVector psi{inv_sqrt_d.cwiseProduct(v2) * inv_sqrt2,
                    inv_sqrt_d.cwiseProduct(v1) * inv_sqrt2};
  const double psi_norm = psi.norm();
  psi.re /= psi_norm;
  psi.im /= psi_norm;
  out.psi_bar = std::move(psi);
  out.x_bar_norm = out.psi_bar.re;
  return out;
}

PopulationResidual verify_population_eigenpair(const PopulationSpectrum& spectrum,
                                               const GroundTruth& truth,
                                               const EroParams& params) {
  const Matrix h_bar = expected_comparisons(truth, params);
  if (!(spectrum.sigma_bar > 0.0)) {
    throw Error(ErrorKind::kConstantScores, "population spectrum is degenerate");
  }
  // i H (a + i b) = -H b + i H a.
  auto residual = [](const Matrix& op, const ComplexVector& v, double value) {
    const Vector re = -(op * v.im) - value * v.re;
    const Vector im = op * v.re - value * v.im;
    return std::sqrt(re.squaredNorm() + im.squaredNorm());
  };
  PopulationResidual out;
  out.unnormalized = residual(h_bar, spectrum.phi_bar, spectrum.sigma_bar);
  const Matrix h_left = spectrum.d_bar.cwiseInverse().asDiagonal() * h_bar;
  out.normalized = residual(h_left, spectrum.psi_bar, spectrum.xi_bar);
  return out;
}

std::string spectrum_to_json(const PopulationSpectrum& spectrum) {
  nlohmann::ordered_json j;
  j["sigma_bar"] = spectrum.sigma_bar;
  j["xi_bar"] = spectrum.xi_bar;
  j["alpha"] = spectrum.alpha;
  j["gamma"] = spectrum.gamma;
  j["lambda"] = spectrum.lambda;
  j["snr"] = spectrum.snr;
  return j.dump();
}

}  // namespace specrank
