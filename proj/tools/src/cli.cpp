#include "specrank_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "specrank/calibration.hpp"
#include "specrank/errors.hpp"
#include "specrank/experiment.hpp"
#include "specrank/ranking.hpp"

namespace specrank {
namespace {

struct CommonFlags {
  std::string config_positional;
  std::string config_flag;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool no_plots = false;
};

void add_common(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("config-file", flags.config_positional, "Experiment config file");
  cmd.add_option("--config", flags.config_flag, "Experiment config file");
  cmd.add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", flags.out_dir, "Output directory");
  cmd.add_option("--seed", flags.seed, "Master seed (overrides the config)");
  cmd.add_flag("--no-plots", flags.no_plots, "Skip SVG output");
}

// Flag > SPECRANK_OUT > config file.
ExperimentConfig load_with_overrides(const CommonFlags& flags) {
  const std::string& path =
      flags.config_flag.empty() ? flags.config_positional : flags.config_flag;
  if (path.empty()) throw ConfigError(0, "no config file given");
  if (!flags.config_flag.empty() && !flags.config_positional.empty() &&
      flags.config_flag != flags.config_positional) {
    throw ConfigError(0, "config given twice with different paths");
  }
  ExperimentConfig config = load_config(path);
  if (flags.workers) config.workers = *flags.workers;
  if (flags.seed) config.master_seed = *flags.seed;
  if (flags.no_plots) config.emit_plots = false;
  if (const char* env = std::getenv("SPECRANK_OUT"); env != nullptr && *env != '\0') {
    config.output_dir = env;
  }
  if (flags.out_dir) config.output_dir = *flags.out_dir;
  config.validate();
  return config;
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  writer(file);
  if (!file) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

int run_command(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const auto config = load_with_overrides(flags);
  const auto result = run_experiment(config);
  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.failed() ? 1 : 0;
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  out << result.records.size() << " records (" << failed << " failed) written to "
      << config.output_dir.string() << '\n';
  return kExitOk;
}

int validate_command(const CommonFlags& flags, const std::string& calibration_path,
                     std::ostream& out) {
  const auto config = load_with_overrides(flags);
  const auto calibration =
      Calibration::load(calibration_path.empty() ? config.calibration
                                                     : std::filesystem::path(calibration_path));
  const auto report = run_validation(config, calibration);
  std::filesystem::create_directories(config.output_dir);
  write_file(config.output_dir / "lemma_checks.csv",
             [&](std::ostream& f) { write_lemma_checks(f, report); });
  write_lemma_checks(out, report);
  return report.passed() ? kExitOk : kExitLemmaFailed;
}

int calibrate_command(const CommonFlags& flags, double margin, std::ostream& out) {
  const auto config = load_with_overrides(flags);
  const auto calibration = calibrate(config, margin);
  std::filesystem::create_directories(config.output_dir);
  const auto today = std::chrono::year_month_day{
      std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now())};
  std::ostringstream text;
  text << "# pilot " << static_cast<int>(today.year()) << '-'
       << std::setfill('0') << std::setw(2) << static_cast<unsigned>(today.month()) << '-'
       << std::setw(2) << static_cast<unsigned>(today.day()) << std::setfill(' ')
       << ": " << to_string(config.ground_truth) << " n=" << config.validate_n
       << " p=" << config.validate_p << " eta=" << config.validate_eta
       << " margin=" << margin << '\n'
       << "# noise_norm, row_noise and davis_kahan are fixed thresholds; the\n"
       << "# others are margin x the pilot maximum.\n";
  calibration.write(text);
  write_file(config.output_dir / "calibration.txt",
             [&](std::ostream& f) { f << text.str(); });
  out << text.str();
  return kExitOk;
}

int demo_command(std::ostream& out) {
  const auto truth = make_ground_truth(GroundTruthKind::kUniformGrid, 10);
  const auto sample = sample_comparisons(truth, EroParams{10, 1.0, 1.0, 0});
  for (const auto method : {Method::kUnnormalized, Method::kNormalized}) {
    const auto estimate = rank(method, sample.comparisons);
    out << to_string(method) << ':';
    for (const auto r : estimate.permutation) out << ' ' << r;
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral ranking from noisy pairwise comparisons"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "Run a parameter sweep");
  add_common(*run, run_flags);

  CommonFlags validate_flags;
  std::string calibration_path;
  auto* validate = app.add_subcommand("validate", "Run the concentration checks");
  add_common(*validate, validate_flags);
  validate->add_option("--calibration", calibration_path,
                       "Calibration file (overrides the config)");

  CommonFlags calibrate_flags;
  double margin = 2.0;
  auto* calib = app.add_subcommand("calibrate", "Pilot run that writes calibration.txt");
  add_common(*calib, calibrate_flags);
  calib->add_option("--margin", margin, "Safety factor on pilot maxima")
      ->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("demo", "Noiseless n=10 smoke test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_command(run_flags, out, err);
    if (*validate) return validate_command(validate_flags, calibration_path, out);
    if (*calib) return calibrate_command(calibrate_flags, margin, out);
    if (*demo) return demo_command(out);
  } catch (const ConfigError& e) {
    err << "config error";
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace specrank
