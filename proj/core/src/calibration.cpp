#include "specrank/calibration.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "specrank/errors.hpp"

namespace specrank {

Calibration Calibration::parse(std::istream& in) {
  Calibration out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    CalibrationEntry entry;
    if (!(fields >> entry.constant >> entry.pilot_seed >> entry.pilot_trials)) {
      throw ConfigError(line_no,
                        "expected 'check_name constant pilot_seed pilot_trials'");
    }
    std::string extra;
    if (fields >> extra) throw ConfigError(line_no, "trailing field '" + extra + "'");
    if (out.entries_.count(name)) throw ConfigError(line_no, "duplicate check '" + name + "'");
    out.entries_[name] = entry;
  }
  return out;
}

Calibration Calibration::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open calibration file " + path.string());
  return parse(in);
}

void Calibration::write(std::ostream& out) const {
  for (const auto& [name, entry] : entries_) {
    char buf[32];
    const auto end = std::to_chars(buf, buf + sizeof buf, entry.constant).ptr;
    out << name << ' ' << std::string_view(buf, end) << ' ' << entry.pilot_seed << ' '
        << entry.pilot_trials << '\n';
  }
}

void Calibration::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write(out);
}

bool Calibration::contains(const std::string& name) const {
  return entries_.count(name) != 0;
}

const CalibrationEntry& Calibration::at(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw ConfigError(0, "calibration has no entry for '" + name + "'");
  }
  return it->second;
}

void Calibration::set(const std::string& name, CalibrationEntry entry) {
  entries_[name] = entry;
}

std::vector<std::string> Calibration::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

}  // namespace specrank
