#pragma once

#include <string>

#include "specrank/ero_model.hpp"
#include "specrank/types.hpp"

namespace specrank {

// Closed-form spectral structure of the expected matrices E[H] and
// E[D]^{-1} E[H]. Phases follow the canonical convention: the real part of
// phi_bar is proportional to r - alpha 1 and its imaginary part to -1; the
// real part of psi_bar is proportional to D_bar^{-1}(r - gamma 1) and its
// imaginary part to -D_bar^{-1} 1.
struct PopulationSpectrum {
  double sigma_bar = 0.0;  // top eigenvalue of i H_bar
  double xi_bar = 0.0;     // top eigenvalue of i D_bar^{-1} H_bar
  double alpha = 0.0;      // mean score
  double gamma = 0.0;      // D_bar^{-1}-weighted mean score
  double lambda = 0.0;     // min_i D_bar_ii / (p n M)
  double snr = 0.0;
  ComplexVector phi_bar;   // unit eigenvector of i H_bar for sigma_bar
  ComplexVector phi_bar2;  // unit eigenvector for -sigma_bar
  ComplexVector psi_bar;   // unit eigenvector of i D_bar^{-1} H_bar for xi_bar
  Vector d_bar;
  Vector x_bar_unnorm;     // Re phi_bar
  Vector x_bar_norm;       // Re psi_bar
};

// sqrt(eta^2 p n / log n) * ||r - alpha 1|| / (sqrt(n) M).
double signal_to_noise(const GroundTruth& truth, const EroParams& params);

// Throws kConstantScores when r is constant and kZeroExpectedDegree when
// some E[D_ii] vanishes.
PopulationSpectrum population_spectrum(const GroundTruth& truth,
                                       const EroParams& params);

struct PopulationResidual {
  double unnormalized = 0.0;  // ||i H_bar phi_bar - sigma_bar phi_bar||
  double normalized = 0.0;    // ||i D_bar^{-1} H_bar psi_bar - xi_bar psi_bar||
};

// Assembles H_bar explicitly and measures how well the closed forms solve
// the eigen-equations.
PopulationResidual verify_population_eigenpair(const PopulationSpectrum& spectrum,
                                               const GroundTruth& truth,
                                               const EroParams& params);

// JSON object with keys sigma_bar, xi_bar, alpha, gamma, lambda, snr.
std::string spectrum_to_json(const PopulationSpectrum& spectrum);

}  // namespace specrank
