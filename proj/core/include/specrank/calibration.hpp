#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace specrank {

// Threshold for one empirical bound check, with the pilot run that fixed it.
struct CalibrationEntry {
  double constant = 0.0;
  std::uint64_t pilot_seed = 0;
  int pilot_trials = 0;
};

// Flat text: one "check_name constant pilot_seed pilot_trials" per line;
// '#' starts a comment.
class Calibration {
 public:
  static Calibration parse(std::istream& in);
  static Calibration load(const std::filesystem::path& path);

  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

  bool contains(const std::string& name) const;
  // Throws ConfigError when the check is missing.
  const CalibrationEntry& at(const std::string& name) const;
  double constant(const std::string& name) const { return at(name).constant; }
  void set(const std::string& name, CalibrationEntry entry);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, CalibrationEntry> entries_;
};

}  // namespace specrank
