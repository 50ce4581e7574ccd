#pragma once

// Plain-text matrices: a "rows cols" header line, then row-major
// whitespace-separated entries. Complex entries are written "a+bi".

#include <iosfwd>
#include <string>

#include "gaussmod/matops.hpp"

namespace gaussmod::io {

CMatrix read_matrix(std::istream& in);
CMatrix read_matrix_file(const std::string& path);

/// Throws Parse when an entry has a nonzero imaginary part.
RMatrix read_real_matrix(std::istream& in);
RMatrix read_real_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const RMatrix& m);
void write_matrix(std::ostream& out, const CMatrix& m);
void write_matrix_file(const std::string& path, const RMatrix& m);

/// %.17g, round-trip exact.
std::string format_double(double x);

Complex parse_complex(const std::string& token);

}  // namespace gaussmod::io
