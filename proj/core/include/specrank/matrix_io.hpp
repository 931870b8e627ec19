#pragma once

#include <filesystem>
#include <iosfwd>

#include "specrank/ero_model.hpp"
#include "specrank/types.hpp"

namespace specrank {

// Binary container: magic "ERO1", little-endian u64 n, then n*n
// little-endian IEEE-754 doubles in row-major order.
void write_matrix_binary(std::ostream& out, const Matrix& matrix);
Matrix read_matrix_binary(std::istream& in);
void save_matrix_binary(const std::filesystem::path& path, const Matrix& matrix);
Matrix load_matrix_binary(const std::filesystem::path& path);

// One row per line, comma separated, printed with round-trip precision.
void write_matrix_csv(std::ostream& out, const Matrix& matrix);
Matrix read_matrix_csv(std::istream& in);

// Header "index,score", one row per item (0-based index). The bound is not
// stored; readers take max |score| unless told otherwise.
void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth);
GroundTruth read_ground_truth_csv(std::istream& in);

}  // namespace specrank
