#include "rmlab/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace rmlab {

namespace {

double parse_number(std::string_view text, const std::string& token) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(),
          "malformed number '" + token + "'");
  require(std::isfinite(value), "non-finite entry '" + token + "'");
  return value;
}

}  // namespace

Complex parse_complex(const std::string& token) {
  require(!token.empty(), "empty matrix entry");
  if (token.back() != 'i') return {parse_number(token, token), 0.0};
  const std::string_view body(token.data(), token.size() - 1);
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_number(body, token)};
  return {parse_number(body.substr(0, split), token), parse_number(body.substr(split), token)};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

MatrixFile read_matrix(std::istream& in, const std::string& source) {
  long long rows = -1, cols = -1;
  std::string field;
  require(static_cast<bool>(in >> rows >> cols >> field), source + ": malformed header (expected 'rows cols real|complex')");
  require(rows >= 0 && cols >= 0, source + ": negative dimensions");
  require(field == "real" || field == "complex", source + ": field must be 'real' or 'complex'");
  MatrixFile out;
  out.is_complex = field == "complex";
  out.data.resize(rows, cols);
  std::string token;
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      require(static_cast<bool>(in >> token), source + ": expected " + std::to_string(rows * cols) + " entries");
      try {
        const Complex z = out.is_complex ? parse_complex(token) : Complex(parse_number(token, token), 0.0);
        out.data(i, j) = z;
      } catch (const DomainError& e) {
        throw DomainError(source + ": " + e.what());
      }
    }
  }
  require(!(in >> token), source + ": trailing data after " + std::to_string(rows * cols) + " entries");
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open matrix file '" + path + "'");
  return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m, bool as_complex) {
  out << m.rows() << ' ' << m.cols() << ' ' << (as_complex ? "complex" : "real") << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      if (as_complex) {
        out << format_complex(m(i, j));
      } else {
        require(m(i, j).imag() == 0.0, "write_matrix: complex entry in a real matrix");
        out << format_double(m(i, j).real());
      }
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m, bool as_complex) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write matrix file '" + path + "'");
  write_matrix(out, m, as_complex);
  require(static_cast<bool>(out), "write failed for '" + path + "'");
}

ComplexVector read_vector_file(const std::string& path) {
  const MatrixFile f = read_matrix_file(path);
  require(f.data.rows() == 1 || f.data.cols() == 1, path + ": a vector file needs one row or one column");
  return f.data.cols() == 1 ? ComplexVector(f.data.col(0)) : ComplexVector(f.data.row(0).transpose());
}

}  // namespace rmlab
