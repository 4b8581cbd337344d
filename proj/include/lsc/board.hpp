#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "lsc/errors.hpp"

namespace lsc {

using std::int64_t;
using std::uint64_t;

// Desk-scale guard: boards beyond 2^48 cells are rejected outright.
inline constexpr int64_t kMaxBoardCells = int64_t{1} << 48;

namespace detail {

inline int64_t pow_or_throw(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kMaxBoardCells / base)
      throw SizeLimitError("board exceeds 2^48 cells");
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Cube board of order n and dimension d: n^d cells, coordinates 1..n per axis.
struct BoardShape {
  int n;
  int d;

  BoardShape(int order, int dim) : n(order), d(dim) {
    if (order < 1) throw DomainError("board order must be >= 1");
    if (dim < 2) throw DomainError("board dimension must be >= 2");
    detail::pow_or_throw(order, dim);
  }

  int64_t cell_count() const { return detail::pow_or_throw(n, d); }
  int64_t rook_capacity() const { return detail::pow_or_throw(n, d - 1); }

  bool operator==(const BoardShape&) const = default;
};

/// One board position: a d-tuple with entries in 1..n.
struct Cell {
  std::vector<int> coords;

  Cell() = default;
  explicit Cell(std::vector<int> c) : coords(std::move(c)) {}
  Cell(std::initializer_list<int> c) : coords(c) {}

  int dim() const { return static_cast<int>(coords.size()); }
  int coord(int axis) const { return coords[axis - 1]; }  // axes are 1-based

  auto operator<=>(const Cell&) const = default;
};

inline int hamming_distance(const Cell& a, const Cell& b) {
  if (a.dim() != b.dim())
    throw DimensionError("hamming_distance on tuples of different length");
  int d = 0;
  for (int i = 0; i < a.dim(); ++i)
    if (a.coords[i] != b.coords[i]) ++d;
  return d;
}

/// Row-major flat index, last axis fastest.
inline int64_t cell_index(const BoardShape& shape, const Cell& c) {
  int64_t idx = 0;
  for (int i = 0; i < shape.d; ++i) idx = idx * shape.n + (c.coords[i] - 1);
  return idx;
}

/// Visits every coordinate tuple of the box [lo_i, hi_i] in lexicographic
/// order. Any empty axis range means no tuples at all.
template <class F>
inline void for_each_tuple(const std::vector<int>& lo, const std::vector<int>& hi, F&& fn) {
  const int m = static_cast<int>(lo.size());
  for (int i = 0; i < m; ++i)
    if (hi[i] < lo[i]) return;
  std::vector<int> cur(lo);
  for (;;) {
    fn(static_cast<const std::vector<int>&>(cur));
    int a = m - 1;
    while (a >= 0) {
      if (cur[a] < hi[a]) {
        ++cur[a];
        break;
      }
      cur[a] = lo[a];
      --a;
    }
    if (a < 0) break;
  }
}

/// A file with too few or too many rooks. `file` carries the fixed
/// coordinates with a 0 placeholder on the free axis.
struct FileViolation {
  int axis;  // 1-based
  Cell file;
  int count;
};

struct ValidationResult {
  bool ok;
  std::vector<FileViolation> violations;
};

namespace detail {

// Per-axis strides for addressing files: the free axis gets weight 0, the
// remaining axes a mixed-radix base-n code.
inline std::vector<int64_t> file_strides(const BoardShape& shape, int axis0) {
  std::vector<int64_t> s(shape.d, 0);
  int64_t w = 1;
  for (int j = shape.d - 1; j >= 0; --j) {
    if (j == axis0) continue;
    s[j] = w;
    w *= shape.n;
  }
  return s;
}

inline int64_t file_key(const std::vector<int64_t>& strides, const Cell& c) {
  int64_t k = 0;
  for (size_t j = 0; j < strides.size(); ++j) k += strides[j] * (c.coords[j] - 1);
  return k;
}

inline Cell file_from_key(const BoardShape& shape, int axis0, int64_t key) {
  Cell c(std::vector<int>(shape.d, 0));
  for (int j = shape.d - 1; j >= 0; --j) {
    if (j == axis0) continue;
    c.coords[j] = static_cast<int>(key % shape.n) + 1;
    key /= shape.n;
  }
  return c;
}

}  // namespace detail

/// Checks the non-attacking property: ok iff there are exactly n^(d-1) rooks
/// and every file holds exactly one. Violations are reported per file,
/// ordered by axis then by file position.
inline ValidationResult validate_lsc(const BoardShape& shape, const std::vector<Cell>& rooks) {
  for (const Cell& c : rooks) {
    if (c.dim() != shape.d)
      throw DimensionError("cell has " + std::to_string(c.dim()) +
                           " coordinates on a " + std::to_string(shape.d) +
                           "-dimensional board");
    for (int v : c.coords)
      if (v < 1 || v > shape.n)
        throw CoordinateError("cell coordinate " + std::to_string(v) +
                              " outside 1.." + std::to_string(shape.n));
  }

  ValidationResult res;
  const int64_t files = shape.rook_capacity();
  std::vector<int> counts;
  for (int a = 0; a < shape.d; ++a) {
    counts.assign(static_cast<size_t>(files), 0);
    const auto strides = detail::file_strides(shape, a);
    for (const Cell& c : rooks) ++counts[detail::file_key(strides, c)];
    for (int64_t k = 0; k < files; ++k)
      if (counts[k] != 1)
        res.violations.push_back({a + 1, detail::file_from_key(shape, a, k), counts[k]});
  }
  res.ok = res.violations.empty();
  return res;
}

/// A d-dimensional Latin Super Cube: n^(d-1) pairwise non-attacking rooks.
/// Rooks are kept in canonical lexicographic order (this defines equality
/// and serialization) plus one lookup table per axis mapping each file to
/// the coordinate of its unique rook.
class Lsc {
 public:
  Lsc(BoardShape shape, std::vector<Cell> rooks) : shape_(shape), rooks_(std::move(rooks)) {
    auto res = validate_lsc(shape_, rooks_);
    if (!res.ok) {
      const auto& v = res.violations.front();
      std::string pos;
      for (int j = 0; j < shape_.d; ++j)
        pos += (j ? "," : "") + (j + 1 == v.axis ? std::string(".") : std::to_string(v.file.coords[j]));
      throw LatinError("not a valid LSC: file (" + pos + ") holds " +
                       std::to_string(v.count) + " rooks (" +
                       std::to_string(res.violations.size()) + " bad files total)");
    }
    std::sort(rooks_.begin(), rooks_.end());
    build_tables();
  }

  const BoardShape& shape() const { return shape_; }
  int n() const { return shape_.n; }
  int d() const { return shape_.d; }
  const std::vector<Cell>& rooks() const { return rooks_; }

  /// Coordinate (on `axis`, 1-based) of the unique rook in the file through
  /// `c` along that axis; c's own coordinate on `axis` is ignored.
  int rook_coord_in_file(int axis, const Cell& c) const {
    return file_rook_[axis - 1][detail::file_key(strides_[axis - 1], c)];
  }

  bool operator==(const Lsc& o) const { return shape_ == o.shape_ && rooks_ == o.rooks_; }

 private:
  void build_tables() {
    strides_.resize(shape_.d);
    file_rook_.resize(shape_.d);
    for (int a = 0; a < shape_.d; ++a) {
      strides_[a] = detail::file_strides(shape_, a);
      file_rook_[a].assign(static_cast<size_t>(shape_.rook_capacity()), 0);
      for (const Cell& c : rooks_)
        file_rook_[a][detail::file_key(strides_[a], c)] = c.coords[a];
    }
  }

  BoardShape shape_;
  std::vector<Cell> rooks_;
  std::vector<std::vector<int64_t>> strides_;
  std::vector<std::vector<int>> file_rook_;
};

/// Canonical fixture: rook at (e_1,...,e_d) iff e_1+...+e_d = offset (mod n).
/// Satisfies the Latin property for every n, d.
inline Lsc cyclic_lsc(const BoardShape& shape, int offset = 0) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(shape.rook_capacity()));
  std::vector<int> lo(shape.d - 1, 1), hi(shape.d - 1, shape.n);
  for_each_tuple(lo, hi, [&](const std::vector<int>& head) {
    int64_t s = 0;
    for (int v : head) s += v;
    int r = static_cast<int>(((offset - s) % shape.n + shape.n) % shape.n);
    Cell c(head);
    c.coords.push_back(r == 0 ? shape.n : r);
    cells.push_back(std::move(c));
  });
  return Lsc(shape, std::move(cells));
}

/// Deterministic splittable generator; hand-rolled so seeded sweeps are
/// reproducible across standard libraries.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t bound) { return next() % bound; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Uniform permutation of 1..n as a lookup table: perm[old-1] = new.
inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1))]);
  return p;
}

/// Relabels layers: on axis a, coordinate v becomes perms[a-1][v-1].
/// Layer permutations are Latin transformations, so the result validates.
inline Lsc apply_axis_permutations(const Lsc& l, const std::vector<std::vector<int>>& perms) {
  if (static_cast<int>(perms.size()) != l.d())
    throw DimensionError("need one permutation per axis");
  for (const auto& p : perms) {
    if (static_cast<int>(p.size()) != l.n())
      throw DimensionError("permutation length differs from board order");
    std::vector<char> seen(static_cast<size_t>(l.n()) + 1, 0);
    for (int v : p) {
      if (v < 1 || v > l.n() || seen[v]) throw DomainError("not a permutation of 1..n");
      seen[v] = 1;
    }
  }
  std::vector<Cell> cells;
  cells.reserve(l.rooks().size());
  for (const Cell& c : l.rooks()) {
    Cell m(std::vector<int>(c.dim()));
    for (int j = 0; j < c.dim(); ++j) m.coords[j] = perms[j][c.coords[j] - 1];
    cells.push_back(std::move(m));
  }
  return Lsc(l.shape(), std::move(cells));
}

/// Independent uniformly-seeded layer permutation on every axis.
inline Lsc random_latin_transform(const Lsc& l, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<int>> perms;
  perms.reserve(static_cast<size_t>(l.d()));
  for (int a = 0; a < l.d(); ++a) perms.push_back(random_permutation(l.n(), rng));
  return apply_axis_permutations(l, perms);
}

}  // namespace lsc
