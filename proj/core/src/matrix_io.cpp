#include "phaseop/matrix_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace phaseop {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

void write_matrix(std::ostream& out, const FockOperator& op) {
  out << kMatrixFormatTag << ' ' << op.dim() << ' ' << op.dim() << '\n';
  for (const auto& e : op.entries()) out << format_double(e.real()) << ' ' << format_double(e.imag()) << '\n';
}

std::string format_matrix(const FockOperator& op) {
  std::ostringstream s;
  write_matrix(s, op);
  return s.str();
}

namespace {

double parse_double(const std::string& token) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw std::runtime_error("matrix file: bad number '" + token + "'");
  }
  return v;
}

}  // namespace

FockOperator read_matrix(std::istream& in) {
  std::string magic, version;
  std::size_t rows = 0, cols = 0;
  if (!(in >> magic >> version >> rows >> cols) || magic + " " + version != kMatrixFormatTag) {
    throw std::runtime_error("matrix file: missing 'phaseop-matrix v1' header");
  }
  if (rows != cols || rows == 0) throw std::runtime_error("matrix file: operator must be square and non-empty");
  FockOperator op(rows);
  std::string re, im;
  for (std::size_t n = 0; n < rows; ++n)
    for (std::size_t m = 0; m < cols; ++m) {
      if (!(in >> re >> im)) throw std::runtime_error("matrix file: truncated entry list");
      op(n, m) = cplx(parse_double(re), parse_double(im));
    }
  return op;
}

}  // namespace phaseop
