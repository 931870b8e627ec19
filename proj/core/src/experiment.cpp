#include "specrank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <thread>
#include <tuple>

#include "specrank/errors.hpp"
#include "specrank/metrics.hpp"
#include "specrank/population.hpp"
#include "specrank/rng.hpp"
#include "specrank/svg_plot.hpp"

namespace specrank {
namespace {

std::string fmt(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Runs task(i) for i in [0, count) on `workers` threads.
template <typename Task>
void parallel_for(std::size_t count, int workers, Task task) {
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

GroundTruth truth_for(const ExperimentConfig& config, std::size_t n) {
  return make_ground_truth(config.ground_truth, n, config.gamma_shape,
                           config.gamma_scale, config.master_seed);
}

SolverOptions solver_options(const ExperimentConfig& config, std::uint64_t seed) {
  SolverOptions opts;
  opts.tol = config.tol;
  opts.max_iter = config.max_iter;
  opts.seed = seed;
  return opts;
}

std::string error_label(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return std::string(to_string(err->kind()));
  }
  return "internal";
}

struct Cell {
  std::size_t n_index, eta_index, p_index;
  PopulationSpectrum population;
  Vector reference_unnorm;
  Vector reference_norm;
};

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (const double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<TrialRecord> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::size_t n_count = config.n_values.size();
  const std::size_t eta_count = config.eta_values.size();
  const std::size_t p_count = config.p_values.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  const std::size_t method_count = config.methods.size();

  std::vector<GroundTruth> truths;
  for (const auto n : config.n_values) truths.push_back(truth_for(config, n));

  std::vector<Cell> cells;
  for (std::size_t ni = 0; ni < n_count; ++ni) {
    for (std::size_t ei = 0; ei < eta_count; ++ei) {
      for (std::size_t pi = 0; pi < p_count; ++pi) {
        EroParams params{config.n_values[ni], config.p_values[pi],
                         config.eta_values[ei], 0};
        Cell cell{ni, ei, pi, population_spectrum(truths[ni], params), {}, {}};
        cell.reference_unnorm = cell.population.x_bar_unnorm;
        cell.reference_norm =
            cell.population.d_bar.cwiseProduct(cell.population.x_bar_norm);
        cells.push_back(std::move(cell));
      }
    }
  }

  // Unit u = cell * trials + trial; every method runs on the same sample.
  const std::size_t units = cells.size() * trials;
  std::vector<TrialRecord> by_unit(units * method_count);
  std::vector<Permutation> truth_ranks;
  for (const auto& t : truths) truth_ranks.push_back(ranks_ascending(t.scores));

  parallel_for(units, config.workers, [&](std::size_t u) {
    const Cell& cell = cells[u / trials];
    const int trial = static_cast<int>(u % trials);
    const GroundTruth& truth = truths[cell.n_index];
    const EroParams params{config.n_values[cell.n_index],
                           config.p_values[cell.p_index],
                           config.eta_values[cell.eta_index],
                           derive_seed(config.master_seed, u)};
    std::optional<EroSample> sample;
    std::string sample_error;
    try {
      sample = sample_comparisons(truth, params);
    } catch (const std::exception& e) {
      sample_error = error_label(e);
    }
    for (std::size_t m = 0; m < method_count; ++m) {
      TrialRecord& rec = by_unit[u * method_count + m];
      rec.n = params.n;
      rec.p = params.p;
      rec.eta = params.eta;
      rec.trial = trial;
      rec.method = config.methods[m];
      rec.snr = cell.population.snr;
      if (!sample) {
        rec.error = sample_error;
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        const Vector& reference = rec.method == Method::kUnnormalized
                                      ? cell.reference_unnorm
                                      : cell.reference_norm;
        const auto estimate = align_sign(
            rank(rec.method, sample->comparisons, solver_options(config, params.seed)),
            reference);
        const auto disp = displacement_fast(truth_ranks[cell.n_index], estimate.permutation);
        rec.rel_linf = relative_linf_error(estimate.score, reference);
        rec.rho_max = disp.max;
        rec.rho_mean = disp.mean;
        rec.sigma_top = estimate.eigen.value;
        rec.residual = estimate.eigen.residual;
        rec.sign = estimate.sign_used;
      } catch (const std::exception& e) {
        rec.error = error_label(e);
      }
      if (config.record_timing) {
        rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      }
    }
  });

  std::vector<TrialRecord> out;
  out.reserve(by_unit.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t m = 0; m < method_count; ++m) {
      for (std::size_t t = 0; t < trials; ++t) {
        out.push_back(std::move(by_unit[(c * trials + t) * method_count + m]));
      }
    }
  }
  return out;
}

void write_records(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << fmt(r.p) << ',' << fmt(r.eta) << ',' << r.trial << ','
        << to_string(r.method) << ',' << fmt(r.snr) << ',';
    if (r.failed()) {
      out << ",,,,,,," << r.error << '\n';
      continue;
    }
    out << fmt(r.rel_linf) << ',' << fmt(r.rho_max) << ',' << fmt(r.rho_mean) << ','
        << fmt(r.sigma_top) << ',' << fmt(r.residual) << ',' << r.sign << ','
        << r.wall_ms << ",\n";
  }
}

std::vector<SummaryRow> aggregate(const std::vector<TrialRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no records to aggregate");
  }
  using Key = std::tuple<std::size_t, double, double, Method>;
  struct Group {
    SummaryRow row;
    std::vector<double> rel, rmax, rmean;
  };
  std::map<Key, std::size_t> index;
  std::vector<Group> groups;
  for (const auto& r : records) {
    const Key key{r.n, r.eta, r.p, r.method};
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      Group g;
      g.row.n = r.n;
      g.row.eta = r.eta;
      g.row.p = r.p;
      g.row.method = r.method;
      g.row.snr = r.snr;
      groups.push_back(std::move(g));
    }
    Group& g = groups[it->second];
    if (r.failed()) {
      ++g.row.failures;
      continue;
    }
    g.rel.push_back(r.rel_linf);
    g.rmax.push_back(r.rho_max);
    g.rmean.push_back(r.rho_mean);
  }
  std::vector<SummaryRow> out;
  for (auto& g : groups) {
    SummaryRow row = g.row;
    row.count = static_cast<int>(g.rel.size());
    if (row.count == 0) {
      row.warning = "all trials failed";
    } else {
      row.rel_linf_mean = mean(g.rel);
      row.rel_linf_std = sample_std(g.rel);
      row.rho_max_mean = mean(g.rmax);
      row.rho_max_std = sample_std(g.rmax);
      row.rho_mean_mean = mean(g.rmean);
      row.rho_mean_std = sample_std(g.rmean);
    }
    out.push_back(std::move(row));
  }
  return out;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,eta,p,method,snr,count,failures,rel_linf_mean,rel_linf_std,"
         "rho_max_mean,rho_max_std,rho_mean_mean,rho_mean_std,warning\n";
  for (const auto& r : rows) {
    out << r.n << ',' << fmt(r.eta) << ',' << fmt(r.p) << ',' << to_string(r.method)
        << ',' << fmt(r.snr) << ',' << r.count << ',' << r.failures << ',';
    if (r.count == 0) {
      out << ",,,,,," << r.warning << '\n';
      continue;
    }
    out << fmt(r.rel_linf_mean) << ',' << fmt(r.rel_linf_std) << ','
        << fmt(r.rho_max_mean) << ',' << fmt(r.rho_max_std) << ','
        << fmt(r.rho_mean_mean) << ',' << fmt(r.rho_mean_std) << ",\n";
  }
}

double snr_coefficient(const GroundTruth& truth) {
  const double n = static_cast<double>(truth.size());
  const double alpha = truth.scores.mean();
  const double spread = (truth.scores.array() - alpha).matrix().norm();
  return spread / (truth.bound * std::sqrt(std::log(n)));
}

ErrorBarData errorbar_experiment(const ExperimentConfig& config, double snr) {
  const GroundTruth truth =
      make_ground_truth(GroundTruthKind::kUniformGrid, config.errorbar_n);
  const double root_p = snr / (config.errorbar_eta * snr_coefficient(truth));
  if (!(root_p > 0.0) || root_p > 1.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "SNR " + fmt(snr) + " needs p > 1 at eta " + fmt(config.errorbar_eta));
  }
  ErrorBarData out;
  out.snr = snr;
  out.eta = config.errorbar_eta;
  out.p = root_p * root_p;
  EroParams params{config.errorbar_n, out.p, out.eta, 0};
  out.reference = population_spectrum(truth, params).x_bar_unnorm;
  const std::uint64_t base = derive_seed(config.master_seed, std::bit_cast<std::uint64_t>(snr));
  for (int t = 0; t < config.errorbar_trials; ++t) {
    params.seed = derive_seed(base, static_cast<std::uint64_t>(t));
    try {
      const auto sample = sample_comparisons(truth, params);
      const Vector x =
          rank_unnormalized(sample.comparisons, solver_options(config, params.seed)).score;
      const Vector keep = x - out.reference;
      const Vector flip = x + out.reference;
      out.errors.push_back(flip.cwiseAbs().maxCoeff() < keep.cwiseAbs().maxCoeff() ? flip
                                                                                   : keep);
    } catch (const Error&) {
      // Failed trials are left out of the figure.
    }
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  ExperimentOutput out;
  out.records = run_sweep(config);
  out.summary = aggregate(out.records);
  std::filesystem::create_directories(config.output_dir);

  const auto write_file = [&](const std::string& name, auto&& writer) {
    const auto path = config.output_dir / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::kIo, "cannot write " + path.string());
    writer(file);
    if (!file) throw Error(ErrorKind::kIo, "write failed for " + path.string());
    out.files.push_back(path);
  };
  write_file("records.csv", [&](std::ostream& f) { write_records(f, out.records); });
  write_file("summary.csv", [&](std::ostream& f) { write_summary(f, out.summary); });
  if (!config.emit_plots) return out;

  for (const auto n : config.n_values) {
    const double coefficient = snr_coefficient(truth_for(config, n));
    const std::string suffix =
        config.n_values.size() > 1 ? "_n" + std::to_string(n) : std::string{};
    for (const auto method : config.methods) {
      for (const auto metric : {SummaryMetric::kRelLinf, SummaryMetric::kRhoMax}) {
        const std::string name = "heatmap_" + std::string(to_string(metric)) + "_" +
                                 std::string(to_string(method)) + suffix + ".svg";
        try {
          emit_heatmap(out.summary, n, method, metric, coefficient,
                       config.output_dir / name);
          out.files.push_back(config.output_dir / name);
        } catch (const Error& e) {
          out.warnings.push_back(name + ": " + e.what());
        }
      }
    }
  }
  for (const double snr : config.errorbar_snr) {
    const std::string name = "errorbar_" + fmt(snr) + ".svg";
    try {
      const auto data = errorbar_experiment(config, snr);
      if (data.errors.empty()) {
        out.warnings.push_back(name + ": every trial failed");
        continue;
      }
      emit_errorbar(data.reference, data.errors, config.output_dir / name,
                    "n=" + std::to_string(config.errorbar_n) + " SNR=" + fmt(snr));
      out.files.push_back(config.output_dir / name);
    } catch (const Error& e) {
      out.warnings.push_back(name + ": " + e.what());
    }
  }
  return out;
}

bool ValidationReport::passed() const {
  for (const auto& row : checks) {
    if (!row.result.passed) return false;
  }
  for (const auto& s : spectrum) {
    if (!s.result.passed()) return false;
  }
  return true;
}

namespace {

struct CheckPlan {
  GroundTruth truth;
  EroParams params;
  Vector w;
  std::vector<std::size_t> loo_k;  // 0-based
};

CheckPlan make_plan(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  CheckPlan plan{truth_for(config, config.validate_n),
                 EroParams{config.validate_n, config.validate_p, config.validate_eta, seed},
                 Vector::Ones(static_cast<Eigen::Index>(config.validate_n)) /
                     std::sqrt(static_cast<double>(config.validate_n)),
                 {}};
  for (const auto k : config.loo_k) plan.loo_k.push_back(k - 1);
  return plan;
}

std::vector<LemmaCheckResult> run_lemma_checks(const ExperimentConfig& config,
                                               const CheckPlan& plan, int trials,
                                               const auto& constant) {
  const auto opts = solver_options(config, plan.params.seed);
  return {
      check_noise_norm(plan.truth, plan.params, trials, constant(check_names::kNoiseNorm)),
      check_row_noise(plan.truth, plan.params, trials, plan.w,
                      constant(check_names::kRowNoise)),
      check_davis_kahan(plan.truth, plan.params, trials,
                        constant(check_names::kDavisKahan), opts),
      leave_one_out_closeness(plan.truth, plan.params, plan.loo_k, trials,
                              constant(check_names::kLeaveOneOut), opts),
      check_normalized_noise(plan.truth, plan.params, trials,
                             constant(check_names::kNormalizedNoise)),
  };
}

}  // namespace

ValidationReport run_validation(const ExperimentConfig& config,
                                const Calibration& calibration) {
  const CheckPlan plan = make_plan(config, config.master_seed);
  ValidationReport report;
  const auto results = run_lemma_checks(
      config, plan, config.validate_trials,
      [&](const char* name) { return calibration.constant(name); });
  for (const auto& r : results) {
    report.checks.push_back({r, plan.params.n, plan.params.p, plan.params.eta});
  }
  const auto opts = solver_options(config, plan.params.seed);
  report.spectrum.push_back(
      {check_spectrum_structure(plan.truth, plan.params, config.validate_trials, opts),
       plan.params.n});
  const GroundTruth small = truth_for(config, config.spectrum_n);
  EroParams small_params = plan.params;
  small_params.n = config.spectrum_n;
  report.spectrum.push_back(
      {check_spectrum_structure(small, small_params, config.validate_trials, opts),
       small_params.n});
  return report;
}

void write_lemma_checks(std::ostream& out, const ValidationReport& report) {
  out << "check,n,p,eta,trials,skipped,observed_max_ratio,bound_constant,passed\n";
  for (const auto& row : report.checks) {
    const auto& r = row.result;
    out << r.name << ',' << row.n << ',' << fmt(row.p) << ',' << fmt(row.eta) << ','
        << r.trials << ',' << r.skipped << ',' << fmt(r.observed_max_ratio) << ','
        << fmt(r.bound_constant) << ',' << (r.passed ? "true" : "false") << '\n';
  }
  // Structural checks report violation counts against a bound of 0.
  const auto structural = [&](const char* name, std::size_t n, int checked,
                              int violations) {
    if (checked == 0) return;
    const auto& first = report.checks.empty() ? ValidationReport::Row{} : report.checks[0];
    out << name << ',' << n << ',' << fmt(first.p) << ',' << fmt(first.eta) << ','
        << checked << ",0," << violations << ",0,"
        << (violations == 0 ? "true" : "false") << '\n';
  };
  for (const auto& row : report.spectrum) {
    const auto& s = row.result;
    const std::size_t n = row.n;
    structural("weyl_containment", n, s.trials, s.weyl_violations);
    structural("spectrum_pairing", n, s.pairing_checked, s.pairing_violations);
    structural("eigenvalue_interlacing", n, s.interlacing_checked,
               s.interlacing_violations);
  }
}

Calibration calibrate(const ExperimentConfig& config, double margin) {
  const CheckPlan plan = make_plan(config, config.pilot_seed);
  const auto results =
      run_lemma_checks(config, plan, config.pilot_trials, [](const char*) {
        return std::numeric_limits<double>::infinity();
      });
  const std::map<std::string, double> fixed{{check_names::kNoiseNorm, 3.0},
                                            {check_names::kRowNoise, 3.0},
                                            {check_names::kDavisKahan, 2.0}};
  Calibration out;
  for (const auto& r : results) {
    const auto it = fixed.find(r.name);
    const double constant =
        it != fixed.end() ? it->second : margin * r.observed_max_ratio;
    out.set(r.name, {constant, config.pilot_seed, config.pilot_trials});
  }
  return out;
}

}  // namespace specrank
