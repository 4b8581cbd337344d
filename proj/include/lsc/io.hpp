#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "lsc/board.hpp"
#include "lsc/latin.hpp"
#include "lsc/stochastic.hpp"

namespace lsc::io {

namespace detail {

inline long long read_int(std::istream& in, const char* what) {
  long long v;
  if (!(in >> v)) throw ParseError(std::string("expected ") + what);
  return v;
}

inline double read_real(std::istream& in, const char* what) {
  double v;
  if (!(in >> v)) throw ParseError(std::string("expected ") + what);
  return v;
}

}  // namespace detail

/// Canonical text form: "d n" then one cell per line, lexicographic order.
/// Reading back a canonical file and rewriting it is byte-identical.
inline void write_lsc(std::ostream& out, const Lsc& l) {
  out << l.d() << ' ' << l.n() << '\n';
  for (const Cell& c : l.rooks()) {
    for (int j = 0; j < c.dim(); ++j) out << (j ? " " : "") << c.coords[j];
    out << '\n';
  }
}

struct RawLsc {
  BoardShape shape;
  std::vector<Cell> cells;
};

/// Parses an LSC file without validating the rook placement; cell order in
/// the input is irrelevant.
inline RawLsc read_lsc_raw(std::istream& in) {
  int d = static_cast<int>(detail::read_int(in, "dimension"));
  int n = static_cast<int>(detail::read_int(in, "order"));
  BoardShape shape(n, d);
  RawLsc raw{shape, {}};
  const int64_t rooks = shape.rook_capacity();
  raw.cells.reserve(static_cast<size_t>(rooks));
  for (int64_t r = 0; r < rooks; ++r) {
    Cell c(std::vector<int>(static_cast<size_t>(d)));
    for (int j = 0; j < d; ++j)
      c.coords[j] = static_cast<int>(detail::read_int(in, "cell coordinate"));
    raw.cells.push_back(std::move(c));
  }
  long long extra;
  if (in >> extra) throw ParseError("trailing data after the rook list");
  return raw;
}

inline Lsc read_lsc(std::istream& in) {
  RawLsc raw = read_lsc_raw(in);
  return Lsc(raw.shape, std::move(raw.cells));
}

/// "n" then n rows of n symbols.
inline void write_latin_square(std::ostream& out, const LatinSquare& q) {
  out << q.n() << '\n';
  for (int i = 1; i <= q.n(); ++i) {
    for (int j = 1; j <= q.n(); ++j) out << (j > 1 ? " " : "") << q.at(i, j);
    out << '\n';
  }
}

inline LatinSquare read_latin_square(std::istream& in) {
  int n = static_cast<int>(detail::read_int(in, "order"));
  if (n < 1) throw ParseError("order must be >= 1");
  std::vector<int> g;
  g.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n * n; ++i)
    g.push_back(static_cast<int>(detail::read_int(in, "symbol")));
  return LatinSquare(n, std::move(g));
}

/// "d n" then n^d reals, row-major with the last axis fastest, printed so a
/// round trip reproduces every double bit-exactly.
inline void write_tensor(std::ostream& out, const StochasticTensor& t) {
  out << t.d() << ' ' << t.n() << '\n';
  char buf[64];
  const auto& v = t.values();
  for (size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    out << buf << ((i + 1) % static_cast<size_t>(t.n()) == 0 ? '\n' : ' ');
  }
}

inline StochasticTensor read_tensor(std::istream& in, double tol = 1e-10) {
  int d = static_cast<int>(detail::read_int(in, "dimension"));
  int n = static_cast<int>(detail::read_int(in, "order"));
  BoardShape shape(n, d);
  const int64_t cells = lsc::detail::tensor_cells(shape);  // size guard before any allocation
  std::vector<double> v;
  v.reserve(static_cast<size_t>(cells));
  for (int64_t i = 0; i < cells; ++i) v.push_back(detail::read_real(in, "tensor entry"));
  return StochasticTensor(shape, std::move(v), tol);
}

}  // namespace lsc::io
