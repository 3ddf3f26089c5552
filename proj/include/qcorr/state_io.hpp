#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

// Text interchange format. Lines whose first non-blank character is '#' are
// comments and may appear anywhere; blank lines are ignored.
//
//   density file:  <dims line>  then d_tot rows of d_tot "re im" pairs
//   vector file:   "vec"  then <dims line>  then d_tot rows of one "re im" pair
//
// The dims line holds whitespace-separated subsystem dimensions, each >= 2.
// Numbers are printed with 17 significant digits so a save/load round trip
// is bit exact.

namespace detail {

struct LineReader {
  std::istream& in;
  std::string path;
  std::size_t line_no = 0;

  // next content line (comments/blanks skipped); false at EOF
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      out = raw;
      return true;
    }
    return false;
  }
};

inline double parse_number(const std::string& token, const std::string& path,
                           std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError(path, line_no, "non-numeric token '" + token + "'");
  }
  if (used != token.size()) {
    throw ParseError(path, line_no, "non-numeric token '" + token + "'");
  }
  return value;
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string t;
  while (is >> t) tokens.push_back(t);
  return tokens;
}

inline std::vector<std::size_t> parse_dims_line(const std::string& line, const std::string& path,
                                                std::size_t line_no) {
  std::vector<std::size_t> dims;
  for (const auto& tok : tokenize(line)) {
    const double v = parse_number(tok, path, line_no);
    if (v != static_cast<double>(static_cast<long long>(v)) || v < 2.0) {
      throw ParseError(path, line_no, "subsystem dimension '" + tok + "' is not an integer >= 2");
    }
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.empty()) throw ParseError(path, line_no, "empty dims line");
  return dims;
}

inline std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct ParsedFile {
  bool is_vector = false;
  std::vector<std::size_t> dims;
  std::vector<cdouble> entries;  // row-major matrix body, or amplitudes
};

inline ParsedFile parse_stream(std::istream& in, const std::string& path) {
  LineReader reader{in, path};
  std::string line;
  if (!reader.next(line)) throw ParseError(path, reader.line_no + 1, "empty file");

  ParsedFile out;
  auto head = tokenize(line);
  if (head.size() == 1 && head[0] == "vec") {
    out.is_vector = true;
    if (!reader.next(line)) {
      throw ParseError(path, reader.line_no + 1, "missing dims line after 'vec' header");
    }
  }
  out.dims = parse_dims_line(line, path, reader.line_no);

  std::size_t d = 1;
  for (std::size_t dk : out.dims) d *= dk;
  const std::size_t per_row = out.is_vector ? 2 : 2 * d;

  out.entries.reserve(out.is_vector ? d : d * d);
  for (std::size_t row = 0; row < d; ++row) {
    if (!reader.next(line)) {
      throw ParseError(path, reader.line_no + 1,
                       "unexpected end of file: expected " + std::to_string(d) + " rows, got " +
                           std::to_string(row));
    }
    const auto tokens = tokenize(line);
    if (tokens.size() != per_row) {
      throw ParseError(path, reader.line_no,
                       "row " + std::to_string(row + 1) + ": expected " + std::to_string(per_row) +
                           " numbers for dims-declared dimension " + std::to_string(d) + ", got " +
                           std::to_string(tokens.size()));
    }
    for (std::size_t t = 0; t < tokens.size(); t += 2) {
      const double re = parse_number(tokens[t], path, reader.line_no);
      const double im = parse_number(tokens[t + 1], path, reader.line_no);
      out.entries.emplace_back(re, im);
    }
  }
  if (reader.next(line)) {
    throw ParseError(path, reader.line_no, "trailing content after matrix body");
  }
  return out;
}

}  // namespace detail

/// Shape-checked but not invariant-checked density file contents, for
/// diagnostics that report residuals instead of refusing.
struct RawDensityFile {
  std::vector<std::size_t> dims;
  ComplexMatrix mat;
};

inline RawDensityFile load_density_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  auto parsed = detail::parse_stream(in, path);
  if (parsed.is_vector) {
    throw ParseError(path, 1, "file carries a 'vec' header, expected a density matrix");
  }
  std::size_t d = 1;
  for (std::size_t dk : parsed.dims) d *= dk;
  return RawDensityFile{std::move(parsed.dims), ComplexMatrix(d, d, std::move(parsed.entries))};
}

/// Parse and validate a density-matrix file. Parse failures carry the line
/// number; invariant violations carry the measured residual.
inline DensityMatrix load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  auto parsed = detail::parse_stream(in, path);
  if (parsed.is_vector) {
    throw ParseError(path, 1, "file carries a 'vec' header, expected a density matrix");
  }
  std::size_t d = 1;
  for (std::size_t dk : parsed.dims) d *= dk;
  try {
    return DensityMatrix(ComplexMatrix(d, d, std::move(parsed.entries)), std::move(parsed.dims));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

/// Parse a state-vector ("vec" header) file; checks normalization.
inline std::pair<std::vector<cdouble>, std::vector<std::size_t>> load_state_vector(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  auto parsed = detail::parse_stream(in, path);
  if (!parsed.is_vector) {
    throw ParseError(path, 1, "expected a 'vec' header for a state-vector file");
  }
  double norm_sq = 0.0;
  for (const auto& a : parsed.entries) norm_sq += std::norm(a);
  const double res = std::abs(std::sqrt(norm_sq) - 1.0);
  if (res > 1e-10) {
    throw ValidationError(path + ": state vector norm residual " + detail::fmt_residual(res) +
                          " exceeds 1e-10");
  }
  return {std::move(parsed.entries), std::move(parsed.dims)};
}

inline void save_density(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  for (std::size_t k = 0; k < rho.dims().size(); ++k) {
    out << (k ? " " : "") << rho.dims()[k];
  }
  out << "\n";
  const std::size_t d = rho.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const cdouble e = rho.matrix()(i, j);
      out << (j ? " " : "") << detail::fmt17(e.real()) << " " << detail::fmt17(e.imag());
    }
    out << "\n";
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

inline void save_state_vector(const std::vector<cdouble>& psi,
                              const std::vector<std::size_t>& dims, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "vec\n";
  for (std::size_t k = 0; k < dims.size(); ++k) out << (k ? " " : "") << dims[k];
  out << "\n";
  for (const auto& a : psi) {
    out << detail::fmt17(a.real()) << " " << detail::fmt17(a.imag()) << "\n";
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace qcorr
