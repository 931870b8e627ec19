#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "specrank/calibration.hpp"
#include "specrank/ero_model.hpp"
#include "specrank/ranking.hpp"
#include "specrank/theory_validation.hpp"

namespace specrank {

// Flat "key = value" configuration. Lists are comma-separated; real lists
// also accept linspace(start, stop, count).
struct ExperimentConfig {
  GroundTruthKind ground_truth = GroundTruthKind::kUniformGrid;
  std::vector<std::size_t> n_values{1000};
  std::vector<double> eta_values{1.0};
  std::vector<double> p_values{1.0};
  int trials = 25;
  std::vector<Method> methods{Method::kUnnormalized, Method::kNormalized};
  std::uint64_t master_seed = 1;
  std::filesystem::path output_dir = "out";
  bool emit_plots = true;
  int workers = 1;
  double gamma_shape = 1.0;
  double gamma_scale = 1.0;
  double tol = 1e-10;
  int max_iter = 0;
  // wall_ms is written as 0 unless set, so records.csv stays reproducible.
  bool record_timing = false;

  // Error-bar figure: uniform grid, unnormalized method, p chosen per SNR.
  std::vector<double> errorbar_snr{0.5, 0.8};
  std::size_t errorbar_n = 200;
  double errorbar_eta = 0.5;
  int errorbar_trials = 25;

  // `validate` subcommand.
  std::filesystem::path calibration = "calibration.txt";
  std::size_t validate_n = 500;
  double validate_p = 0.8;
  double validate_eta = 0.8;
  int validate_trials = 20;
  std::vector<std::size_t> loo_k{1, 250, 500};  // 1-based
  std::size_t spectrum_n = 24;
  std::uint64_t pilot_seed = 20240601;
  int pilot_trials = 40;

  // Throws ConfigError (line 0) when an invariant fails.
  void validate() const;
};

// Relative paths inside the file are resolved against `base_dir`.
ExperimentConfig parse_config(std::istream& in,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrialRecord {
  std::size_t n = 0;
  double p = 0.0;
  double eta = 0.0;
  int trial = 0;
  Method method = Method::kUnnormalized;
  double snr = 0.0;
  double rel_linf = 0.0;
  double rho_max = 0.0;
  double rho_mean = 0.0;
  double sigma_top = 0.0;
  double residual = 0.0;
  int sign = 1;
  std::int64_t wall_ms = 0;
  std::string error;  // empty on success

  bool failed() const { return !error.empty(); }
};

inline constexpr const char* kRecordsHeader =
    "n,p,eta,trial,method,snr,rel_linf,rho_max,rho_mean,sigma_top,residual,"
    "sign,wall_ms,error";

// Records ordered by (n, eta, p, method, trial) in config order. Trials run
// on config.workers threads; the output does not depend on scheduling.
std::vector<TrialRecord> run_sweep(const ExperimentConfig& config);

void write_records(std::ostream& out, const std::vector<TrialRecord>& records);

struct SummaryRow {
  std::size_t n = 0;
  double eta = 0.0;
  double p = 0.0;
  Method method = Method::kUnnormalized;
  double snr = 0.0;
  int count = 0;     // successful trials
  int failures = 0;
  double rel_linf_mean = 0.0, rel_linf_std = 0.0;
  double rho_max_mean = 0.0, rho_max_std = 0.0;
  double rho_mean_mean = 0.0, rho_mean_std = 0.0;
  std::string warning;  // set when every trial of the group failed
};

// Groups by (n, eta, p, method) in first-seen order; std is the sample
// standard deviation (0 for a single record). Throws on empty input.
std::vector<SummaryRow> aggregate(const std::vector<TrialRecord>& records);

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

// SNR / (eta sqrt(p)) for the given ground truth and n.
double snr_coefficient(const GroundTruth& truth);

// Signed per-entry errors x - s x_bar of the unnormalized method over
// `trials` samples, with s the sign minimizing the l-infinity gap.
struct ErrorBarData {
  double snr = 0.0;
  double p = 0.0;
  double eta = 0.0;
  Vector reference;             // x_bar
  std::vector<Vector> errors;   // one per successful trial
};

// Chooses p so the requested SNR is met at errorbar_eta; throws
// kInvalidArgument when that would need p > 1.
ErrorBarData errorbar_experiment(const ExperimentConfig& config, double snr);

struct ExperimentOutput {
  std::vector<TrialRecord> records;
  std::vector<SummaryRow> summary;
  std::vector<std::filesystem::path> files;  // everything written
  std::vector<std::string> warnings;         // figures that were skipped
};

// Writes records.csv, summary.csv and, when enabled, the SVG figures into
// config.output_dir.
ExperimentOutput run_experiment(const ExperimentConfig& config);

struct ValidationReport {
  struct Row {
    LemmaCheckResult result;
    std::size_t n = 0;
    double p = 0.0;
    double eta = 0.0;
  };
  std::vector<Row> checks;
  struct SpectrumRow {
    SpectrumCheckResult result;
    std::size_t n = 0;
  };
  std::vector<SpectrumRow> spectrum;  // validate_n, then spectrum_n

  bool passed() const;
};

// Runs the five lemma checks at (validate_n, validate_p, validate_eta) with
// the calibrated constants, plus the Weyl / pairing / interlacing checks.
ValidationReport run_validation(const ExperimentConfig& config,
                                const Calibration& calibration);

void write_lemma_checks(std::ostream& out, const ValidationReport& report);

// Pilot run with config.pilot_seed. noise_norm and row_noise are fixed at 3
// and davis_kahan at 2; the remaining constants are `margin` times the pilot
// maximum.
Calibration calibrate(const ExperimentConfig& config, double margin = 2.0);

}  // namespace specrank
