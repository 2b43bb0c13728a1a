#pragma once

#include <iosfwd>
#include <string>

#include "rmlab/types.hpp"

namespace rmlab {

// Text matrix format:
//
//   <rows> <cols> real|complex
//   <row-major entries, whitespace separated>
//
// Complex entries are written "a+bi" / "a-bi"; every number is printed with
// 17 significant digits, so write -> read is exact.

struct MatrixFile {
  ComplexMatrix data;
  bool is_complex = true;
};

MatrixFile read_matrix(std::istream& in, const std::string& source = "<matrix>");
MatrixFile read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const ComplexMatrix& m, bool as_complex = true);
void write_matrix_file(const std::string& path, const ComplexMatrix& m, bool as_complex = true);

/// A vector file is a matrix file with one row or one column.
ComplexVector read_vector_file(const std::string& path);

/// "a+bi" parsing and printing; a bare real "a" parses with zero imaginary part.
Complex parse_complex(const std::string& token);
std::string format_complex(Complex z);
std::string format_double(double x);

}  // namespace rmlab
