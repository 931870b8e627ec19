// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "specrank/calibration.hpp"
#include "specrank/eigensolver.hpp"
#include "specrank/errors.hpp"
#include "specrank/experiment.hpp"
#include "specrank/metrics.hpp"
#include "specrank/population.hpp"
#include "specrank/ranking.hpp"
#include "specrank_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace specrank;

namespace {

// Tolerances.
constexpr double kNoiselessRelLinf = 1e-8;
constexpr double kNoiselessSeconds = 5.0;
constexpr double kReproRelTol = 0.15;
constexpr double kReproRhoTol = 0.10;
constexpr double kSlopeLo = -1.35;
constexpr double kSlopeHi = -0.65;
constexpr double kMaxDecayConstant = 2.0;
constexpr double kOracleRelTol = 1e-8;
constexpr double kPopulationRelTol = 1e-8;
constexpr double kSeparationShare = 0.70;

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<SummaryRow> sweep_summary(const ExperimentConfig& config) {
  return aggregate(run_sweep(config));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

Outcome noiseless_exactness() {
  Outcome o{true, {}, {}};
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0, worst_rho = 0.0;
  for (const std::size_t n : {10, 100, 1000}) {
    const auto truth = make_ground_truth(GroundTruthKind::kUniformGrid, n);
    const EroParams params{n, 1.0, 1.0, 1};
    const auto h = sample_comparisons(truth, params).comparisons;
    const auto pop = population_spectrum(truth, params);
    const Permutation target = ranks_ascending(truth.scores);
    for (const auto method : {Method::kUnnormalized, Method::kNormalized}) {
      const Vector reference = method == Method::kUnnormalized
                                   ? pop.x_bar_unnorm
                                   : Vector(pop.d_bar.cwiseProduct(pop.x_bar_norm));
      const auto est = align_sign(rank(method, h), reference);
      const double rel = relative_linf_error(est.score, reference);
      const double rho = displacement_fast(est.permutation, target).max;
      worst = std::max(worst, rel);
      worst_rho = std::max(worst_rho, rho);
      o.pass = o.pass && rel < kNoiselessRelLinf && rho == 0.0;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = o.pass && seconds < kNoiselessSeconds;
  o.detail = fmt("max rel_linf %.2e, max rho %.2f, %.2f s", worst, worst_rho, seconds);
  return o;
}

Outcome quantitative_reproduction() {
  const std::size_t n = 1000;
  const double eta = 0.5;
  const auto truth = make_ground_truth(GroundTruthKind::kUniformGrid, n);
  const double coef = snr_coefficient(truth);
  const std::vector<double> snrs{0.5, 0.8, 1.7};
  const std::vector<double> want_rel{0.8, 0.5, 0.2};
  const std::vector<double> want_rho{0.4, 0.3, 0.15};

  ExperimentConfig c;
  c.n_values = {n};
  c.eta_values = {eta};
  c.p_values.clear();
  for (const double s : snrs) c.p_values.push_back(std::pow(s / (eta * coef), 2));
  c.trials = 25;
  c.methods = {Method::kUnnormalized};
  c.master_seed = 2;
  c.workers = workers();
  const auto start = std::chrono::steady_clock::now();
  const auto rows = sweep_summary(c);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Outcome o{true, {}, {}};
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool ok = r.failures == 0 && std::abs(r.rel_linf_mean - want_rel[i]) <= kReproRelTol &&
                    std::abs(r.rho_max_mean - want_rho[i]) <= kReproRhoTol;
    o.pass = o.pass && ok;
    detail += fmt("SNR %.2f (p %.3f): R %.3f, rho %.3f; ", r.snr, r.p, r.rel_linf_mean,
                  r.rho_max_mean);
  }
  o.detail = detail + fmt("%.0f s", seconds);
  return o;
}

// Mean R against SNR on one slice of the (eta, p) plane.
struct DecayFit {
  std::vector<double> snr, mean_r;
  double slope = 0.0;
  double constant = 0.0;  // max R * SNR
};

DecayFit decay_fit(std::vector<double> eta_values, std::vector<double> p_values) {
  ExperimentConfig c;
  c.n_values = {500};
  c.eta_values = std::move(eta_values);
  c.p_values = std::move(p_values);
  c.trials = 25;
  c.methods = {Method::kUnnormalized};
  c.master_seed = 3;
  c.workers = workers();
  DecayFit fit;
  for (const auto& row : sweep_summary(c)) {
    fit.snr.push_back(row.snr);
    fit.mean_r.push_back(row.rel_linf_mean);
    fit.constant = std::max(fit.constant, row.rel_linf_mean * row.snr);
  }
  fit.slope = loglog_slope(fit.snr, fit.mean_r);
  return fit;
}

// SNR cannot exceed about 2.59 on the n = 500 uniform grid, so the sweep
// covers the reachable range on the eta = 1/2 slice, away from the noiseless
// corner p = eta = 1 where R collapses faster than any power law.
Outcome decay_rate() {
  const auto truth = make_ground_truth(GroundTruthKind::kUniformGrid, 500);
  const double coef = snr_coefficient(truth);
  const double eta = 0.5;
  const double s_hi = eta * coef;
  std::vector<double> p;
  for (int i = 0; i < 8; ++i) {
    const double s = 0.5 * std::pow(s_hi / 0.5, i / 7.0);
    p.push_back(std::min(1.0, std::pow(s / s_hi, 2)));
  }
  const auto main = decay_fit({eta}, p);

  Outcome o;
  o.pass = main.slope >= kSlopeLo && main.slope <= kSlopeHi &&
           main.constant < kMaxDecayConstant;
  o.detail = fmt("eta 0.5, SNR %.2f..%.2f: slope %.3f, C %.3f", main.snr.front(),
                 main.snr.back(), main.slope, main.constant);

  // Same law on the p = 1 slice, which reaches the top of the range.
  std::vector<double> etas;
  for (int i = 0; i < 8; ++i) etas.push_back(0.5 * std::pow(2.3 / 0.5, i / 7.0) / coef);
  const auto full = decay_fit(etas, {1.0});
  o.notes.push_back(fmt("p 1, SNR %.2f..%.2f: slope %.3f, C %.3f (informational)",
                        full.snr.front(), full.snr.back(), full.slope, full.constant));
  return o;
}

Outcome oracle_equivalence() {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<std::size_t> size(2, 16);
  std::uniform_real_distribution<double> prob(0.5, 1.0);
  int checked = 0, bad = 0;
  double worst_value = 0.0, worst_overlap = 0.0;
  while (checked < 200) {
    const std::size_t n = size(gen);
    const auto truth = make_ground_truth(GroundTruthKind::kSortedGamma, n, 1.0, 1.0, gen());
    const auto h = sample_comparisons(truth, EroParams{n, prob(gen), prob(gen), gen()}).comparisons;
    if (h.entries.isZero(0.0)) continue;
    const auto oracle = dense_oracle_eigen(h.entries);
    // Skip instances whose top eigenvalue is numerically degenerate.
    if (oracle.values.size() > 1 &&
        oracle.values[0] - oracle.values[1] < 1e-6 * oracle.values[0]) {
      continue;
    }
    ++checked;
    try {
      const auto pair = top_eigenpair_antisym(h);
      const double value_err = std::abs(pair.value - oracle.values[0]) / oracle.values[0];
      const ComplexScalar c = inner(pair.vector, oracle.top_vector);
      const double overlap_err = std::abs(std::hypot(c.re, c.im) - 1.0);
      worst_value = std::max(worst_value, value_err);
      worst_overlap = std::max(worst_overlap, overlap_err);
      if (value_err > kOracleRelTol || overlap_err > kOracleRelTol) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  return {bad == 0,
          fmt("%d instances, %d mismatches, max value err %.1e, max |1 - overlap| %.1e",
              checked, bad, worst_value, worst_overlap),
          {}};
}

Outcome population_consistency() {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<std::size_t> size(3, 60);
  std::uniform_real_distribution<double> prob(0.05, 1.0);
  std::normal_distribution<double> normal;
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = size(gen);
    Vector r(static_cast<Eigen::Index>(n));
    for (auto& x : r) x = normal(gen);
    const auto truth = make_custom_ground_truth(r, r.cwiseAbs().maxCoeff());
    const EroParams params{n, prob(gen), prob(gen), 0};
    const auto s = population_spectrum(truth, params);
    const auto res = verify_population_eigenpair(s, truth, params);
    const Vector dx = s.d_bar.cwiseProduct(s.x_bar_norm);
    const Vector centered = (r.array() - s.gamma).matrix();
    const double scale = dx.dot(centered) / centered.squaredNorm();
    const double prop = (dx - scale * centered).norm() / dx.norm();
    worst = std::max({worst, res.unnormalized / s.sigma_bar, res.normalized / s.xi_bar, prop});
    if (res.unnormalized >= kPopulationRelTol * s.sigma_bar ||
        res.normalized >= kPopulationRelTol * s.xi_bar || prop >= kPopulationRelTol) {
      ++bad;
    }
  }
  return {bad == 0, fmt("50 configurations, %d failures, max relative residual %.1e", bad, worst),
          {}};
}

Outcome lemma_suites() {
  const fs::path data = SPECRANK_DATA_DIR;
  const auto config = load_config(data / "validate.cfg");
  const auto calibration = Calibration::load(data / "calibration.txt");
  const auto report = run_validation(config, calibration);
  Outcome o;
  o.pass = report.passed() && config.validate_n == 500 && config.validate_trials >= 20;
  std::string detail;
  for (const auto& row : report.checks) {
    o.pass = o.pass && row.result.trials >= 20;
    detail += fmt("%s %.3f/%.3f; ", row.result.name.c_str(), row.result.observed_max_ratio,
                  row.result.bound_constant);
  }
  for (const auto& row : report.spectrum) {
    detail += fmt("spectrum n=%zu weyl %d/%d pairing %d/%d; ", row.n,
                  row.result.trials - row.result.weyl_violations, row.result.trials,
                  row.result.pairing_checked - row.result.pairing_violations,
                  row.result.pairing_checked);
  }
  o.detail = detail;
  return o;
}

Outcome metric_oracles() {
  std::mt19937 gen(6);
  std::uniform_int_distribution<std::size_t> size(3, 200);
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = size(gen);
    Permutation a(n), b(n);
    std::iota(a.begin(), a.end(), std::size_t{1});
    std::iota(b.begin(), b.end(), std::size_t{1});
    std::shuffle(a.begin(), a.end(), gen);
    std::shuffle(b.begin(), b.end(), gen);
    // Definitional scan, independent of the library.
    std::vector<double> expected(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && (a[i] < a[j]) != (b[i] < b[j])) ++count;
      }
      expected[i] = static_cast<double>(count) / static_cast<double>(n - 1);
    }
    if (displacement_fast(a, b).per_item != expected || displacement(a, b).per_item != expected) {
      ++bad;
    }
  }
  const Permutation p1{1, 2, 3}, p2{2, 1, 3};
  const auto table = displacement_fast(p1, p2).per_item;
  const bool table_ok = table == std::vector<double>{0.5, 0.5, 0.0};
  return {bad == 0 && table_ok,
          fmt("100 random pairs, %d mismatches; n=3 table %s", bad, table_ok ? "exact" : "wrong"),
          {}};
}

// Grid cells with p < 0.2 on the sorted-gamma truth.
Outcome qualitative_separation() {
  ExperimentConfig c;
  c.ground_truth = GroundTruthKind::kSortedGamma;
  c.n_values = {1000};
  c.eta_values = {0.2, 0.4, 0.6, 0.8, 1.0};
  c.p_values = {0.05, 0.1, 0.15};
  c.trials = 25;
  c.master_seed = 8;
  c.workers = workers();
  const auto rows = sweep_summary(c);
  int cells = 0, wins = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const auto& un = rows[i];
    const auto& no = rows[i + 1];
    if (un.method != Method::kUnnormalized || no.method != Method::kNormalized) {
      return {false, "unexpected summary order", {}};
    }
    ++cells;
    if (no.count > 0 && (un.count == 0 || no.rel_linf_mean < un.rel_linf_mean)) ++wins;
  }
  const double share = cells ? static_cast<double>(wins) / cells : 0.0;
  return {share >= kSeparationShare,
          fmt("normalized better on %d/%d cells (%.0f%%)", wins, cells, 100 * share), {}};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "specrank_acceptance_determinism";
  fs::remove_all(root);
  const fs::path cfg = fs::path(SPECRANK_DATA_DIR) / "quick.cfg";
  std::string records[2];
  for (int k = 0; k < 2; ++k) {
    const std::string out = (root / std::to_string(k)).string();
    const std::string w = k == 0 ? "1" : std::to_string(workers());
    const char* argv[] = {"specrank", "run", "--config", cfg.c_str(), "--out", out.c_str(),
                          "--seed", "17", "--workers", w.c_str(), "--no-plots"};
    std::ostringstream sink;
    if (cli_main(static_cast<int>(std::size(argv)), argv, sink, sink) != kExitOk) {
      return {false, "run failed: " + sink.str(), {}};
    }
    records[k] = slurp(root / std::to_string(k) / "records.csv");
  }
  fs::remove_all(root);
  const bool same = !records[0].empty() && records[0] == records[1];
  return {same, fmt("%zu bytes, %s", records[0].size(), same ? "identical" : "different"), {}};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"noiseless exactness", noiseless_exactness},
      {"reference error levels", quantitative_reproduction},
      {"decay rate", decay_rate},
      {"oracle equivalence", oracle_equivalence},
      {"population self-consistency", population_consistency},
      {"lemma suites", lemma_suites},
      {"metric oracles", metric_oracles},
      {"qualitative separation", qualitative_separation},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    for (const auto& note : o.notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
