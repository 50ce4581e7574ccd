#include "gaussmod/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gaussmod::io {

namespace {

double parse_real(std::string_view s, const std::string& token) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, "bad matrix entry '" + token + "'");
  }
  return value;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open matrix file " + path);
  return in;
}

}  // namespace

Complex parse_complex(const std::string& token) {
  std::string_view s(token);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty matrix entry");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, token), 0.0};
  s.remove_suffix(1);
  // The split is the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(s, token)};
  return {parse_real(s.substr(0, split), token), parse_real(s.substr(split), token)};
}

CMatrix read_matrix(std::istream& in) {
  long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(ErrorKind::Parse, "matrix header must be 'rows cols'");
  }
  CMatrix m(rows, cols);
  std::string token;
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      if (!(in >> token)) throw Error(ErrorKind::Parse, "matrix file ends early");
      m(i, j) = parse_complex(token);
    }
  }
  if (in >> token) throw Error(ErrorKind::Parse, "trailing data after matrix entries");
  return m;
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_matrix(in);
}

RMatrix read_real_matrix(std::istream& in) {
  const CMatrix m = read_matrix(in);
  if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorKind::Parse, "expected a real matrix");
  }
  return m.real();
}

RMatrix read_real_matrix_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_real_matrix(in);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix(std::ostream& out, const RMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_double(m(i, j));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      out << (j ? " " : "") << format_double(z.real()) << (std::signbit(z.imag()) ? "" : "+")
          << format_double(z.imag()) << 'i';
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const RMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write matrix file " + path);
  write_matrix(out, m);
}

}  // namespace gaussmod::io
