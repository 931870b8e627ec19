#include "specrank/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "specrank/errors.hpp"

namespace specrank {
namespace {

constexpr std::array<char, 4> kMagic = {'E', 'R', 'O', '1'};

void put_u64(std::ostream& out, std::uint64_t value) {
  std::array<char, 8> bytes;
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((value >> (8 * b)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw Error(ErrorKind::kIo, "truncated ERO1 header");
  std::uint64_t value = 0;
  for (int b = 7; b >= 0; --b) value = (value << 8) | bytes[b];
  return value;
}

std::string format_double(double value) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kIo, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

void write_matrix_binary(std::ostream& out, const Matrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "ERO1 stores square matrices only");
  }
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, static_cast<std::uint64_t>(matrix.rows()));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      put_u64(out, std::bit_cast<std::uint64_t>(matrix(i, j)));
    }
  }
  if (!out) throw Error(ErrorKind::kIo, "failed writing ERO1 stream");
}

Matrix read_matrix_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(ErrorKind::kIo, "missing ERO1 magic");
  const std::uint64_t n = get_u64(in);
  if (n > (std::uint64_t{1} << 20)) {
    throw Error(ErrorKind::kIo, "ERO1 dimension is implausibly large");
  }
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix matrix(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      matrix(i, j) = std::bit_cast<double>(get_u64(in));
    }
  }
  return matrix;
}

void save_matrix_binary(const std::filesystem::path& path, const Matrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  write_matrix_binary(out, matrix);
}

Matrix load_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_matrix_binary(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& matrix) {
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(matrix(i, j));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    for (auto field : split_commas(line)) row.push_back(parse_double(field));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::kIo, "ragged CSV matrix");
    }
    rows.push_back(std::move(row));
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
  Matrix matrix(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) matrix(i, j) = rows[i][j];
  }
  return matrix;
}

void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth) {
  out << "index,score\n";
  for (Eigen::Index k = 0; k < truth.scores.size(); ++k) {
    out << k << ',' << format_double(truth.scores[k]) << '\n';
  }
}

GroundTruth read_ground_truth_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "index,score" && line != "index,score\r")) {
    throw Error(ErrorKind::kIo, "ground truth CSV must start with 'index,score'");
  }
  std::vector<double> scores;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_commas(line);
    if (fields.size() != 2) throw Error(ErrorKind::kIo, "expected 'index,score' row");
    const auto index = static_cast<std::size_t>(parse_double(fields[0]));
    if (index != scores.size()) throw Error(ErrorKind::kIo, "indices must be 0..n-1 in order");
    scores.push_back(parse_double(fields[1]));
  }
  Vector r = Eigen::Map<Vector>(scores.data(), static_cast<Eigen::Index>(scores.size()));
  const double bound = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  return make_custom_ground_truth(std::move(r), bound);
}

}  // namespace specrank
