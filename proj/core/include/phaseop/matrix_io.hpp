#pragma once

#include <iosfwd>
#include <string>

#include "phaseop/fock.hpp"

namespace phaseop {

// "phaseop-matrix v1" text format:
//   phaseop-matrix v1 <rows> <cols>
//   <re> <im>            (rows*cols lines, row-major, 17 significant digits)
inline constexpr const char* kMatrixFormatTag = "phaseop-matrix v1";

void write_matrix(std::ostream& out, const FockOperator& op);
std::string format_matrix(const FockOperator& op);
FockOperator read_matrix(std::istream& in);

// Locale-independent shortest-exact formatting with 17 significant digits.
std::string format_double(double value);

}  // namespace phaseop
