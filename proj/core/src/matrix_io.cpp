#include "tatn/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tatn {

namespace {

constexpr char kMagic[4] = {'T', 'A', 'T', 'N'};

void put_u32_le(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {
      static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
      static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw std::runtime_error("matrix read: truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes.data(), 8);
}

double get_f64_le(std::istream& in) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), 8);
  if (!in) throw std::runtime_error("matrix read: truncated payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("matrix write: format failure");
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw std::runtime_error("matrix read: bad CSV number '" + std::string(token) + "'");
  return v;
}

}  // namespace

void write_matrix_csv(const Matrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t row_cols = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::string_view token(line.data() + start, end - start);
      // trim spaces and a trailing \r
      while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
        token.remove_prefix(1);
      while (!token.empty() &&
             (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
        token.remove_suffix(1);
      values.push_back(parse_double(token));
      ++row_cols;
      if (end == line.size()) break;
      start = end + 1;
    }
    if (rows == 0) {
      cols = row_cols;
    } else if (row_cols != cols) {
      throw std::runtime_error("matrix read: ragged CSV rows");
    }
    ++rows;
  }
  if (rows == 0) throw std::runtime_error("matrix read: empty CSV");
  return Matrix(rows, cols, std::move(values));
}

void write_matrix_binary(const Matrix& m, std::ostream& out) {
  out.write(kMagic, 4);
  put_u32_le(out, static_cast<std::uint32_t>(m.rows()));
  put_u32_le(out, static_cast<std::uint32_t>(m.cols()));
  for (double v : m.data()) put_f64_le(out, v);
  if (!out) throw std::runtime_error("matrix write: stream failure");
}

Matrix read_matrix_binary(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("matrix read: bad magic (expected TATN)");
  const std::uint32_t rows = get_u32_le(in);
  const std::uint32_t cols = get_u32_le(in);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < static_cast<std::size_t>(rows) * cols; ++i)
    values.push_back(get_f64_le(in));
  return Matrix(rows, cols, std::move(values));
}

namespace {

template <typename Fn>
void with_ofstream(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  fn(out);
}

template <typename Fn>
Matrix with_ifstream(const std::string& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return fn(in);
}

}  // namespace

void write_matrix_csv(const Matrix& m, const std::string& path) {
  with_ofstream(path, [&](std::ostream& out) { write_matrix_csv(m, out); });
}

Matrix read_matrix_csv(const std::string& path) {
  return with_ifstream(path, [](std::istream& in) { return read_matrix_csv(in); });
}

void write_matrix_binary(const Matrix& m, const std::string& path) {
  with_ofstream(path, [&](std::ostream& out) { write_matrix_binary(m, out); });
}

Matrix read_matrix_binary(const std::string& path) {
  return with_ifstream(path, [](std::istream& in) { return read_matrix_binary(in); });
}

}  // namespace tatn
