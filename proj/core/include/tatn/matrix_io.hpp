#pragma once

#include <iosfwd>
#include <string>

#include "tatn/matrix.hpp"

namespace tatn {

/// Matrix serialization for test vectors, in two interchangeable forms:
///
/// CSV: one row per line, '.' decimal separator, 17 significant digits
/// (round-trips binary64 exactly).
///
/// Binary: magic "TATN", u32 little-endian rows, u32 little-endian cols,
/// then rows*cols IEEE-754 binary64 little-endian values, row-major.

void write_matrix_csv(const Matrix& m, std::ostream& out);
void write_matrix_csv(const Matrix& m, const std::string& path);
Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_csv(const std::string& path);

void write_matrix_binary(const Matrix& m, std::ostream& out);
void write_matrix_binary(const Matrix& m, const std::string& path);
Matrix read_matrix_binary(std::istream& in);
Matrix read_matrix_binary(const std::string& path);

}  // namespace tatn
