#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "specrank/errors.hpp"
#include "specrank/experiment.hpp"

namespace specrank {
namespace {

std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(line, "expected a number, got '" + std::string(s) + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view s, std::size_t line) {
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(line, "expected an integer, got '" + std::string(s) + "'");
  }
  return value;
}

bool parse_bool(std::string_view s, std::size_t line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(line, "expected a boolean, got '" + std::string(s) + "'");
}

std::vector<double> parse_reals(std::string_view s, std::size_t line) {
  constexpr std::string_view kLinspace = "linspace(";
  if (s.starts_with(kLinspace)) {
    if (!s.ends_with(")")) throw ConfigError(line, "unterminated linspace(");
    const auto args =
        split(s.substr(kLinspace.size(), s.size() - kLinspace.size() - 1), ',');
    if (args.size() != 3) {
      throw ConfigError(line, "linspace takes (start, stop, count)");
    }
    const double a = parse_real(args[0], line);
    const double b = parse_real(args[1], line);
    const auto count = parse_int<int>(args[2], line);
    if (count < 1) throw ConfigError(line, "linspace count must be >= 1");
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
      out.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
    }
    return out;
  }
  std::vector<double> out;
  for (const auto item : split(s, ',')) out.push_back(parse_real(item, line));
  return out;
}

std::vector<std::size_t> parse_sizes(std::string_view s, std::size_t line) {
  std::vector<std::size_t> out;
  for (const auto item : split(s, ',')) {
    out.push_back(parse_int<std::size_t>(item, line));
  }
  return out;
}

std::filesystem::path resolve(std::string_view s, const std::filesystem::path& base) {
  std::filesystem::path path{std::string(s)};
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(0, what);
}

bool in_unit_interval(double x) { return x > 0.0 && x <= 1.0; }

}  // namespace

void ExperimentConfig::validate() const {
  require(trials >= 1, "trials must be >= 1");
  require(!n_values.empty() && !eta_values.empty() && !p_values.empty(),
          "n, eta and p lists must be nonempty");
  require(!methods.empty(), "methods must be nonempty");
  for (const auto n : n_values) require(n >= 2, "every n must be >= 2");
  for (const double v : eta_values) require(in_unit_interval(v), "eta must lie in (0, 1]");
  for (const double v : p_values) require(in_unit_interval(v), "p must lie in (0, 1]");
  require(workers >= 1, "workers must be >= 1");
  require(gamma_shape > 0.0 && gamma_scale > 0.0, "gamma parameters must be positive");
  require(tol > 0.0, "tol must be positive");
  require(max_iter >= 0, "max_iter must be >= 0");
  require(errorbar_n >= 2 && errorbar_n <= 500, "errorbar_n must lie in [2, 500]");
  require(in_unit_interval(errorbar_eta), "errorbar_eta must lie in (0, 1]");
  require(errorbar_trials >= 1, "errorbar_trials must be >= 1");
  for (const double s : errorbar_snr) require(s > 0.0, "errorbar_snr must be positive");
  require(validate_n >= 2 && validate_n <= 500, "validate_n must lie in [2, 500]");
  require(in_unit_interval(validate_p) && in_unit_interval(validate_eta),
          "validate_p and validate_eta must lie in (0, 1]");
  require(validate_trials >= 1 && pilot_trials >= 1, "trial counts must be >= 1");
  require(spectrum_n >= 2 && spectrum_n <= 32, "spectrum_n must lie in [2, 32]");
  for (const auto k : loo_k) {
    require(k >= 1 && k <= validate_n, "loo_k entries must lie in [1, validate_n]");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  using Setter = std::function<void(std::string_view, std::size_t)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"ground_truth",
       [&](std::string_view v, std::size_t line) {
         try {
           c.ground_truth = parse_ground_truth_kind(v);
         } catch (const Error& e) {
           throw ConfigError(line, e.what());
         }
         if (c.ground_truth == GroundTruthKind::kCustom) {
           throw ConfigError(line, "custom ground truth cannot be sampled");
         }
       }},
      {"n", [&](std::string_view v, std::size_t line) { c.n_values = parse_sizes(v, line); }},
      {"eta", [&](std::string_view v, std::size_t line) { c.eta_values = parse_reals(v, line); }},
      {"p", [&](std::string_view v, std::size_t line) { c.p_values = parse_reals(v, line); }},
      {"trials", [&](std::string_view v, std::size_t line) { c.trials = parse_int<int>(v, line); }},
      {"methods",
       [&](std::string_view v, std::size_t line) {
         c.methods.clear();
         for (const auto item : split(v, ',')) {
           try {
             c.methods.push_back(parse_method(item));
           } catch (const Error& e) {
             throw ConfigError(line, e.what());
           }
         }
       }},
      {"master_seed",
       [&](std::string_view v, std::size_t line) {
         c.master_seed = parse_int<std::uint64_t>(v, line);
       }},
      {"output_dir",
       [&](std::string_view v, std::size_t) { c.output_dir = resolve(v, base_dir); }},
      {"emit_plots",
       [&](std::string_view v, std::size_t line) { c.emit_plots = parse_bool(v, line); }},
      {"workers", [&](std::string_view v, std::size_t line) { c.workers = parse_int<int>(v, line); }},
      {"gamma_shape",
       [&](std::string_view v, std::size_t line) { c.gamma_shape = parse_real(v, line); }},
      {"gamma_scale",
       [&](std::string_view v, std::size_t line) { c.gamma_scale = parse_real(v, line); }},
      {"tol", [&](std::string_view v, std::size_t line) { c.tol = parse_real(v, line); }},
      {"max_iter",
       [&](std::string_view v, std::size_t line) { c.max_iter = parse_int<int>(v, line); }},
      {"record_timing",
       [&](std::string_view v, std::size_t line) { c.record_timing = parse_bool(v, line); }},
      {"errorbar_snr",
       [&](std::string_view v, std::size_t line) {
         c.errorbar_snr = v.empty() ? std::vector<double>{} : parse_reals(v, line);
       }},
      {"errorbar_n",
       [&](std::string_view v, std::size_t line) {
         c.errorbar_n = parse_int<std::size_t>(v, line);
       }},
      {"errorbar_eta",
       [&](std::string_view v, std::size_t line) { c.errorbar_eta = parse_real(v, line); }},
      {"errorbar_trials",
       [&](std::string_view v, std::size_t line) {
         c.errorbar_trials = parse_int<int>(v, line);
       }},
      {"calibration",
       [&](std::string_view v, std::size_t) { c.calibration = resolve(v, base_dir); }},
      {"validate_n",
       [&](std::string_view v, std::size_t line) {
         c.validate_n = parse_int<std::size_t>(v, line);
       }},
      {"validate_p",
       [&](std::string_view v, std::size_t line) { c.validate_p = parse_real(v, line); }},
      {"validate_eta",
       [&](std::string_view v, std::size_t line) { c.validate_eta = parse_real(v, line); }},
      {"validate_trials",
       [&](std::string_view v, std::size_t line) {
         c.validate_trials = parse_int<int>(v, line);
       }},
      {"loo_k", [&](std::string_view v, std::size_t line) { c.loo_k = parse_sizes(v, line); }},
      {"spectrum_n",
       [&](std::string_view v, std::size_t line) {
         c.spectrum_n = parse_int<std::size_t>(v, line);
       }},
      {"pilot_seed",
       [&](std::string_view v, std::size_t line) {
         c.pilot_seed = parse_int<std::uint64_t>(v, line);
       }},
      {"pilot_trials",
       [&](std::string_view v, std::size_t line) {
         c.pilot_trials = parse_int<int>(v, line);
       }},
  };

  std::set<std::string, std::less<>> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line, "expected 'key = value'");
    }
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError(line, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.emplace(key).second) {
      throw ConfigError(line, "duplicate key '" + std::string(key) + "'");
    }
    it->second(value, line);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file " + path.string());
  return parse_config(in, path.parent_path());
}

}  // namespace specrank
