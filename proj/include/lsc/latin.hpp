#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lsc/board.hpp"

namespace lsc {

/// n x n grid over symbols 1..n with the Latin property; equivalently the
/// triple set {(i, j, grid(i,j))} where every pairwise Hamming distance
/// between triples is at least 2.
class LatinSquare {
 public:
  LatinSquare(int n, std::vector<int> grid) : n_(n), grid_(std::move(grid)) {
    if (n_ < 1) throw DomainError("square order must be >= 1");
    if (static_cast<int>(grid_.size()) != n_ * n_)
      throw DimensionError("grid size differs from n*n");
    std::vector<char> seen;
    for (int i = 1; i <= n_; ++i) {
      seen.assign(static_cast<size_t>(n_) + 1, 0);
      for (int j = 1; j <= n_; ++j) {
        int s = at(i, j);
        if (s < 1 || s > n_ || seen[s])
          throw LatinError("row " + std::to_string(i) + " breaks the Latin property");
        seen[s] = 1;
      }
    }
    for (int j = 1; j <= n_; ++j) {
      seen.assign(static_cast<size_t>(n_) + 1, 0);
      for (int i = 1; i <= n_; ++i) {
        int s = at(i, j);
        if (seen[s])
          throw LatinError("column " + std::to_string(j) + " breaks the Latin property");
        seen[s] = 1;
      }
    }
  }

  static LatinSquare cyclic(int n) {
    std::vector<int> g(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[static_cast<size_t>(i) * n + j] = (i + j) % n + 1;
    return LatinSquare(n, std::move(g));
  }

  /// Rebuilds a square from its triple set; every cell must be covered once.
  static LatinSquare from_triples(int n, const std::vector<std::array<int, 3>>& triples) {
    if (static_cast<int>(triples.size()) != n * n)
      throw LatinError("triple set does not cover the square");
    std::vector<int> g(static_cast<size_t>(n) * n, 0);
    for (const auto& t : triples) {
      for (int v : t)
        if (v < 1 || v > n) throw CoordinateError("triple entry outside 1..n");
      int& cell = g[static_cast<size_t>(t[0] - 1) * n + (t[1] - 1)];
      if (cell != 0) throw LatinError("triple set assigns a cell twice");
      cell = t[2];
    }
    return LatinSquare(n, std::move(g));
  }

  int n() const { return n_; }
  int at(int row, int col) const { return grid_[static_cast<size_t>(row - 1) * n_ + (col - 1)]; }
  const std::vector<int>& grid() const { return grid_; }

  std::vector<std::array<int, 3>> triples() const {
    std::vector<std::array<int, 3>> t;
    t.reserve(static_cast<size_t>(n_) * n_);
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) t.push_back({i, j, at(i, j)});
    return t;
  }

  bool operator==(const LatinSquare&) const = default;

 private:
  int n_;
  std::vector<int> grid_;
};

/// The six uniform permutations of triple roles (i,j,k), named by where the
/// original roles land. ijk is the identity.
enum class CoordPerm { ijk, jki, kij, jik, ikj, kji };

inline constexpr std::array<CoordPerm, 6> kConjugateOrder = {
    CoordPerm::ijk, CoordPerm::jki, CoordPerm::kij,
    CoordPerm::jik, CoordPerm::ikj, CoordPerm::kji};

inline constexpr const char* label(CoordPerm p) {
  switch (p) {
    case CoordPerm::ijk: return "ijk";
    case CoordPerm::jki: return "jki";
    case CoordPerm::kij: return "kij";
    case CoordPerm::jik: return "jik";
    case CoordPerm::ikj: return "ikj";
    case CoordPerm::kji: return "kji";
  }
  return "";
}

namespace detail {

// selector[m] = which original role sits at position m of the new triple
inline constexpr std::array<int, 3> selector(CoordPerm p) {
  switch (p) {
    case CoordPerm::ijk: return {0, 1, 2};
    case CoordPerm::jki: return {1, 2, 0};
    case CoordPerm::kij: return {2, 0, 1};
    case CoordPerm::jik: return {1, 0, 2};
    case CoordPerm::ikj: return {0, 2, 1};
    case CoordPerm::kji: return {2, 1, 0};
  }
  return {0, 1, 2};
}

}  // namespace detail

/// Q(...) with triple roles permuted; e.g. jik is the transpose.
inline LatinSquare conjugate(const LatinSquare& q, CoordPerm p) {
  const auto sel = detail::selector(p);
  std::vector<std::array<int, 3>> out;
  out.reserve(static_cast<size_t>(q.n()) * q.n());
  for (const auto& t : q.triples()) out.push_back({t[sel[0]], t[sel[1]], t[sel[2]]});
  return LatinSquare::from_triples(q.n(), out);
}

/// {Q(i,j,k), Q(j,k,i), Q(k,i,j)} -- the cyclic role permutations.
inline std::vector<LatinSquare> primary_conjugates(const LatinSquare& q) {
  return {conjugate(q, CoordPerm::ijk), conjugate(q, CoordPerm::jki),
          conjugate(q, CoordPerm::kij)};
}

/// {Q(j,i,k), Q(i,k,j), Q(k,j,i)} -- the transpositions.
inline std::vector<LatinSquare> secondary_conjugates(const LatinSquare& q) {
  return {conjugate(q, CoordPerm::jik), conjugate(q, CoordPerm::ikj),
          conjugate(q, CoordPerm::kji)};
}

/// Rook at (i,j,k) iff grid(i,j) = k. Right-handed frame throughout; there
/// is no left-handed mode.
inline Lsc compose(const LatinSquare& q) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(q.n()) * q.n());
  for (int i = 1; i <= q.n(); ++i)
    for (int j = 1; j <= q.n(); ++j) cells.push_back(Cell{i, j, q.at(i, j)});
  return Lsc(BoardShape(q.n(), 3), std::move(cells));
}

/// Inverse of compose: grid(i,j) = the z-coordinate of the rook in file (i,j,.).
inline LatinSquare project(const Lsc& l) {
  if (l.d() != 3) throw DimensionError("projection is defined for 3-LSCs");
  std::vector<int> g(static_cast<size_t>(l.n()) * l.n());
  for (const Cell& c : l.rooks())
    g[static_cast<size_t>(c.coords[0] - 1) * l.n() + (c.coords[1] - 1)] = c.coords[2];
  return LatinSquare(l.n(), std::move(g));
}

namespace detail {

template <class F>
inline Lsc map_cells(const Lsc& l, F&& f) {
  std::vector<Cell> cells;
  cells.reserve(l.rooks().size());
  for (const Cell& c : l.rooks()) cells.push_back(f(c));
  return Lsc(l.shape(), std::move(cells));
}

}  // namespace detail

/// Bottom-face rotation: cell (i,j,k) moves to (j, n+1-i, k).
inline Lsc face_rotation(const Lsc& l) {
  if (l.d() != 3) throw DimensionError("face rotation is defined for 3-LSCs");
  const int n = l.n();
  return detail::map_cells(l, [n](const Cell& c) {
    return Cell{c.coords[1], n + 1 - c.coords[0], c.coords[2]};
  });
}

/// Layers on every axis permuted in reverse order (central symmetry):
/// (i,j,k) -> (n+1-i, n+1-j, n+1-k). An involution.
inline Lsc reverse_all_layers(const Lsc& l) {
  if (l.d() != 3) throw DimensionError("reverse_all_layers is defined for 3-LSCs");
  const int n = l.n();
  return detail::map_cells(l, [n](const Cell& c) {
    return Cell{n + 1 - c.coords[0], n + 1 - c.coords[1], n + 1 - c.coords[2]};
  });
}

/// One rotational position of the cube as a signed coordinate permutation:
/// new coordinate a is old coordinate src[a], reversed when flip[a] is set.
/// `word` is the generator sequence that reaches it (R = bottom-face
/// rotation, X = roll of a side face onto the bottom), applied left to right.
struct Orientation {
  std::array<int, 3> src;
  std::array<bool, 3> flip;
  std::string word;

  Cell apply(const Cell& c, int n) const {
    Cell out(std::vector<int>(3));
    for (int a = 0; a < 3; ++a) {
      int v = c.coords[src[a]];
      out.coords[a] = flip[a] ? n + 1 - v : v;
    }
    return out;
  }

  /// this after `first` (apply `first`, then this).
  Orientation after(const Orientation& first) const {
    Orientation o;
    for (int a = 0; a < 3; ++a) {
      o.src[a] = first.src[src[a]];
      o.flip[a] = flip[a] != first.flip[src[a]];
    }
    o.word = first.word + word;
    return o;
  }

  bool same_map(const Orientation& o) const { return src == o.src && flip == o.flip; }
};

/// The 24 rotations of the cube, generated breadth-first from the identity
/// by R and X. Index 0 is the identity; the table order is fixed.
inline const std::vector<Orientation>& orientation_table() {
  static const std::vector<Orientation> table = [] {
    const Orientation rot_r{{1, 0, 2}, {false, true, false}, "R"};
    const Orientation rot_x{{0, 2, 1}, {false, false, true}, "X"};
    std::vector<Orientation> found{Orientation{{0, 1, 2}, {false, false, false}, ""}};
    for (size_t head = 0; head < found.size(); ++head) {
      for (const Orientation* g : {&rot_r, &rot_x}) {
        Orientation next = g->after(found[head]);
        bool known = false;
        for (const auto& o : found)
          if (o.same_map(next)) {
            known = true;
            break;
          }
        if (!known) found.push_back(std::move(next));
      }
    }
    return found;
  }();
  return table;
}

inline Lsc apply_orientation(const Lsc& l, const Orientation& o) {
  if (l.d() != 3) throw DimensionError("orientations are defined for 3-LSCs");
  const int n = l.n();
  return detail::map_cells(l, [&o, n](const Cell& c) { return o.apply(c, n); });
}

/// Bottom-face projection of every rotational position of the cube, in
/// orientation-table order. Entry 0 equals project(l).
inline std::vector<LatinSquare> all_orientation_projections(const Lsc& l) {
  std::vector<LatinSquare> out;
  out.reserve(orientation_table().size());
  for (const auto& o : orientation_table()) out.push_back(project(apply_orientation(l, o)));
  return out;
}

/// Projections onto the three faces meeting at the origin, each read in its
/// right-handed frame: the triple (i,j,k) read as (i,j,k), (j,k,i), (k,i,j).
/// For l = compose(Q) these are exactly the primary conjugates of Q.
inline std::vector<LatinSquare> origin_face_projections(const Lsc& l) {
  if (l.d() != 3) throw DimensionError("projection is defined for 3-LSCs");
  std::vector<std::array<int, 3>> t1, t2, t3;
  for (const Cell& c : l.rooks()) {
    int i = c.coords[0], j = c.coords[1], k = c.coords[2];
    t1.push_back({i, j, k});
    t2.push_back({j, k, i});
    t3.push_back({k, i, j});
  }
  return {LatinSquare::from_triples(l.n(), t1), LatinSquare::from_triples(l.n(), t2),
          LatinSquare::from_triples(l.n(), t3)};
}

/// Geometric route to the secondary conjugates: reverse the layers on every
/// axis, re-frame at the far vertex (swap the first two axes and reverse
/// all three), then take the three origin-face projections. For
/// l = compose(Q) the results are Q(j,i,k), Q(i,k,j), Q(k,j,i).
inline std::vector<LatinSquare> reversed_origin_face_projections(const Lsc& l) {
  const int n = l.n();
  Lsc reversed = reverse_all_layers(l);
  Lsc reframed = detail::map_cells(reversed, [n](const Cell& c) {
    return Cell{n + 1 - c.coords[1], n + 1 - c.coords[0], n + 1 - c.coords[2]};
  });
  return origin_face_projections(reframed);
}

inline constexpr int kIsotopySearchMaxOrder = 5;

/// True iff some row/column/symbol permutation triple maps q1 onto q2.
/// The search fixes a symbol permutation and the image of q1's first row,
/// derives the column permutation those force, and checks the remaining
/// rows; this covers every isotopy. Exhaustive guard at n <= 5.
inline bool is_isotopic(const LatinSquare& q1, const LatinSquare& q2) {
  if (q1.n() != q2.n()) throw DimensionError("isotopy requires equal orders");
  const int n = q1.n();
  if (n > kIsotopySearchMaxOrder)
    throw SizeLimitError("isotopy search is guarded at order <= 5");
  if (n == 1) return true;

  std::map<std::vector<int>, int> q2_rows;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> row(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) row[j - 1] = q2.at(i, j);
    q2_rows.emplace(std::move(row), i);
  }

  std::vector<int> sym(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) sym[s] = s + 1;  // sym[old-1] = new
  do {
    for (int r = 1; r <= n; ++r) {
      // column of each symbol in q2's row r
      std::vector<int> col_of(static_cast<size_t>(n) + 1);
      for (int j = 1; j <= n; ++j) col_of[q2.at(r, j)] = j;
      // beta forced by mapping q1's first row onto row r
      std::vector<int> beta(static_cast<size_t>(n) + 1);
      for (int j = 1; j <= n; ++j) beta[j] = col_of[sym[q1.at(1, j) - 1]];

      bool all_found = true;
      std::vector<int> row(static_cast<size_t>(n));
      for (int i = 1; i <= n && all_found; ++i) {
        for (int j = 1; j <= n; ++j) row[beta[j] - 1] = sym[q1.at(i, j) - 1];
        all_found = q2_rows.contains(row);
      }
      if (all_found) return true;
    }
  } while (std::next_permutation(sym.begin(), sym.end()));
  return false;
}

/// True iff q2 is isotopic to some conjugate of q1 (same main class).
inline bool is_paratopic(const LatinSquare& q1, const LatinSquare& q2) {
  for (CoordPerm p : kConjugateOrder)
    if (is_isotopic(conjugate(q1, p), q2)) return true;
  return false;
}

namespace detail {

inline bool fill_square(int n, int pos, std::vector<int>& g, std::vector<std::vector<char>>& row_used,
                        std::vector<std::vector<char>>& col_used, SplitMix64& rng) {
  if (pos == n * n) return true;
  const int r = pos / n, c = pos % n;
  auto order = random_permutation(n, rng);
  for (int s : order) {
    if (row_used[r][s] || col_used[c][s]) continue;
    row_used[r][s] = col_used[c][s] = 1;
    g[static_cast<size_t>(pos)] = s;
    if (fill_square(n, pos + 1, g, row_used, col_used, rng)) return true;
    row_used[r][s] = col_used[c][s] = 0;
  }
  g[static_cast<size_t>(pos)] = 0;
  return false;
}

}  // namespace detail

/// Seeded random Latin square by randomized backtracking. Not a uniform
/// sampler; a fixture generator that reaches every main class.
inline LatinSquare random_latin_square(int n, SplitMix64& rng) {
  std::vector<int> g(static_cast<size_t>(n) * n, 0);
  std::vector<std::vector<char>> row_used(n, std::vector<char>(static_cast<size_t>(n) + 1, 0));
  std::vector<std::vector<char>> col_used(n, std::vector<char>(static_cast<size_t>(n) + 1, 0));
  detail::fill_square(n, 0, g, row_used, col_used, rng);
  return LatinSquare(n, std::move(g));
}

inline LatinSquare random_latin_square(int n, uint64_t seed) {
  SplitMix64 rng(seed);
  return random_latin_square(n, rng);
}

}  // namespace lsc
