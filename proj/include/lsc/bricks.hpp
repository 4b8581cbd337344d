#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lsc/board.hpp"

namespace lsc {

/// Closed coordinate interval on one axis. An empty edge (length 0) is
/// stored as hi == lo-1; that is the explicit marker for degenerate bricks.
struct AxisInterval {
  int lo;
  int hi;
  int length() const { return hi - lo + 1; }
  bool contains(int v) const { return lo <= v && v <= hi; }
  auto operator<=>(const AxisInterval&) const = default;
};

/// Axis-aligned box of cells. All partition/counting analysis runs on these.
class Brick {
 public:
  Brick(BoardShape shape, std::vector<AxisInterval> intervals)
      : shape_(shape), ivals_(std::move(intervals)) {
    if (static_cast<int>(ivals_.size()) != shape_.d)
      throw DimensionError("brick needs one interval per axis");
    for (const auto& iv : ivals_) {
      bool nonempty = 1 <= iv.lo && iv.lo <= iv.hi && iv.hi <= shape_.n;
      bool empty = iv.hi == iv.lo - 1 && iv.lo >= 1 && iv.lo <= shape_.n + 1;
      if (!nonempty && !empty)
        throw CoordinateError("interval " + std::to_string(iv.lo) + ":" +
                              std::to_string(iv.hi) + " outside 1.." +
                              std::to_string(shape_.n));
    }
  }

  /// Origin-anchored brick with the given edge lengths (0 allowed).
  static Brick from_sizes(BoardShape shape, const std::vector<int>& sizes) {
    std::vector<AxisInterval> iv;
    iv.reserve(sizes.size());
    for (int e : sizes) iv.push_back({1, e});
    return Brick(shape, std::move(iv));
  }

  static Brick full(BoardShape shape) {
    return Brick(shape, std::vector<AxisInterval>(static_cast<size_t>(shape.d),
                                                  AxisInterval{1, shape.n}));
  }

  const BoardShape& shape() const { return shape_; }
  const std::vector<AxisInterval>& intervals() const { return ivals_; }
  const AxisInterval& interval(int axis) const { return ivals_[axis - 1]; }
  int edge(int axis) const { return ivals_[axis - 1].length(); }

  std::vector<int> edges() const {
    std::vector<int> e;
    e.reserve(ivals_.size());
    for (const auto& iv : ivals_) e.push_back(iv.length());
    return e;
  }

  bool anchored_at_origin() const {
    for (const auto& iv : ivals_)
      if (iv.lo != 1) return false;
    return true;
  }

  bool contains(const Cell& c) const {
    for (size_t j = 0; j < ivals_.size(); ++j)
      if (!ivals_[j].contains(c.coords[j])) return false;
    return true;
  }

  std::vector<int> lo() const {
    std::vector<int> v;
    for (const auto& iv : ivals_) v.push_back(iv.lo);
    return v;
  }
  std::vector<int> hi() const {
    std::vector<int> v;
    for (const auto& iv : ivals_) v.push_back(iv.hi);
    return v;
  }

  bool operator==(const Brick&) const = default;

 private:
  BoardShape shape_;
  std::vector<AxisInterval> ivals_;
};

inline int64_t volume(const Brick& b) {
  int64_t v = 1;
  for (const auto& iv : b.intervals()) v *= iv.length();
  return v;
}

/// Volume divided by the edge on `axis`; 0 for a zero edge.
inline int64_t area(const Brick& b, int axis) {
  if (axis < 1 || axis > b.shape().d) throw CoordinateError("axis out of range");
  if (b.edge(axis) == 0) return 0;
  return volume(b) / b.edge(axis);
}

/// Taxicab diameter: sum of edge lengths.
inline int diameter(const Brick& b) {
  int s = 0;
  for (const auto& iv : b.intervals()) s += iv.length();
  return s;
}

/// Hamming distance from a brick to a cell, O(d): the number of axes on
/// which the coordinate falls outside the brick's interval.
inline int cell_to_brick_distance(const Brick& b, const Cell& c) {
  if (c.dim() != b.shape().d) throw DimensionError("cell/brick dimension mismatch");
  int dist = 0;
  for (size_t j = 0; j < b.intervals().size(); ++j)
    if (!b.intervals()[j].contains(c.coords[j])) ++dist;
  return dist;
}

/// Hamming distance between two bricks, O(d): axes with disjoint intervals.
inline int brick_distance(const Brick& t, const Brick& u) {
  if (t.shape() != u.shape()) throw DimensionError("bricks on different boards");
  int dist = 0;
  for (int j = 0; j < t.shape().d; ++j) {
    const auto& a = t.intervals()[j];
    const auto& b = u.intervals()[j];
    if (a.hi < b.lo || b.hi < a.lo) ++dist;
  }
  return dist;
}

/// General product subsystem <E_1,...,E_d>; input form for normalization.
struct Subsystem {
  BoardShape shape;
  std::vector<std::vector<int>> sets;  // per axis, sorted unique, nonempty

  Subsystem(BoardShape s, std::vector<std::vector<int>> es)
      : shape(s), sets(std::move(es)) {
    if (static_cast<int>(sets.size()) != shape.d)
      throw DimensionError("subsystem needs one set per axis");
    for (auto& e : sets) {
      if (e.empty()) throw DomainError("subsystem set must be nonempty");
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      if (e.front() < 1 || e.back() > shape.n)
        throw CoordinateError("subsystem element outside 1..n");
    }
  }

  bool contains(const Cell& c) const {
    for (int j = 0; j < shape.d; ++j)
      if (!std::binary_search(sets[j].begin(), sets[j].end(), c.coords[j]))
        return false;
    return true;
  }
};

/// Visible means every E_i is already an interval.
inline bool is_visible(const Subsystem& s) {
  for (const auto& e : s.sets)
    if (e.back() - e.front() != static_cast<int>(e.size()) - 1) return false;
  return true;
}

struct NormalizedSubsystem {
  Brick brick;                          // |E_1| x ... x |E_d| at the origin
  std::vector<std::vector<int>> perms;  // per axis: perm[old-1] = new
};

/// Order-preserving relabeling per axis: elements of E_i go to 1..|E_i|,
/// the complement to |E_i|+1..n. Layer permutations only, so applying the
/// perms to any LSC keeps it valid.
inline NormalizedSubsystem normalize_to_origin(const Subsystem& s) {
  const int n = s.shape.n;
  std::vector<std::vector<int>> perms;
  std::vector<int> sizes;
  for (const auto& e : s.sets) {
    std::vector<int> p(static_cast<size_t>(n), 0);
    int next = 1;
    for (int v : e) p[v - 1] = next++;
    for (int v = 1; v <= n; ++v)
      if (p[v - 1] == 0) p[v - 1] = next++;
    perms.push_back(std::move(p));
    sizes.push_back(static_cast<int>(e.size()));
  }
  return {Brick::from_sizes(s.shape, sizes), std::move(perms)};
}

struct BrickClass {
  bool real = false;        // every edge in 1..n-1
  bool n_brick = false;     // at least one edge of length n
  bool n2_brick = false;    // at least two edges of length n
  bool axis = false;        // exactly one edge of length n
  bool degenerate = false;  // some edge of length 0
  bool large = false;       // some pair of edges sums above n
};

inline BrickClass classify(const Brick& b) {
  BrickClass f;
  const int n = b.shape().n;
  int full = 0;
  bool any_zero = false, all_real = true;
  const auto e = b.edges();
  for (int v : e) {
    if (v == n) ++full;
    if (v == 0) any_zero = true;
    if (v < 1 || v >= n) all_real = false;
  }
  for (size_t i = 0; i < e.size() && !f.large; ++i)
    for (size_t j = i + 1; j < e.size(); ++j)
      if (e[i] + e[j] > n) {
        f.large = true;
        break;
      }
  f.degenerate = any_zero;
  f.real = all_real;
  f.n_brick = full >= 1;
  f.n2_brick = full >= 2;
  f.axis = full == 1;
  return f;
}

/// The (d-1)-dimensional subspace H_axis(coord) as a brick.
inline Brick subspace(const BoardShape& shape, int axis, int coord) {
  if (axis < 1 || axis > shape.d) throw CoordinateError("axis out of range");
  if (coord < 1 || coord > shape.n) throw CoordinateError("coordinate out of range");
  std::vector<AxisInterval> iv(static_cast<size_t>(shape.d), AxisInterval{1, shape.n});
  iv[axis - 1] = {coord, coord};
  return Brick(shape, std::move(iv));
}

/// The partition of the board generated by an origin-anchored brick T_0:
/// for each subset I of the axes with e_i < n, brick T_I takes the
/// complementary interval [e_i+1, n] on the axes in I. Masks are bitmasks
/// over all d axes (bit i-1 = axis i flipped), listed in increasing order.
class Partition {
 public:
  explicit Partition(Brick t0) : origin_(std::move(t0)) {
    if (!origin_.anchored_at_origin())
      throw DomainError("partition requires an origin-anchored brick; normalize first");
    const auto& shape = origin_.shape();
    std::vector<int> flip_axes;
    for (int a = 1; a <= shape.d; ++a)
      if (origin_.edge(a) < shape.n) flip_axes.push_back(a);
    k_ = static_cast<int>(flip_axes.size());

    for (uint64_t sub = 0; sub < (uint64_t{1} << k_); ++sub) {
      uint32_t mask = 0;
      std::vector<AxisInterval> iv(origin_.intervals());
      for (int t = 0; t < k_; ++t) {
        if (!(sub >> t & 1)) continue;
        int a = flip_axes[t];
        mask |= uint32_t{1} << (a - 1);
        iv[a - 1] = {origin_.edge(a) + 1, shape.n};
      }
      bricks_.emplace_back(mask, Brick(shape, std::move(iv)));
    }
    std::sort(bricks_.begin(), bricks_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  const Brick& origin() const { return origin_; }
  int flip_axis_count() const { return k_; }
  size_t size() const { return bricks_.size(); }

  const std::vector<std::pair<uint32_t, Brick>>& bricks() const { return bricks_; }

  static int distance_of(uint32_t mask) { return std::popcount(mask); }

  const Brick& brick(uint32_t mask) const {
    auto it = std::lower_bound(bricks_.begin(), bricks_.end(), mask,
                               [](const auto& e, uint32_t m) { return e.first < m; });
    if (it == bricks_.end() || it->first != mask)
      throw DomainError("no partition brick for this mask");
    return it->second;
  }

 private:
  Brick origin_;
  int k_ = 0;
  std::vector<std::pair<uint32_t, Brick>> bricks_;
};

inline Partition partition_from(const Brick& t0) { return Partition(t0); }

/// Bricks of the partition at distance exactly r from T_0 (mask order).
inline std::vector<Brick> hamming_sphere(const Partition& p, int r) {
  std::vector<Brick> out;
  for (const auto& [mask, b] : p.bricks())
    if (Partition::distance_of(mask) == r) out.push_back(b);
  return out;
}

/// Flips exactly one axis of an origin-anchored brick; together they tile
/// an n-brick along that axis.
inline Brick auxiliary(const Brick& t0, int axis) {
  if (!t0.anchored_at_origin()) throw DomainError("auxiliary requires an origin-anchored brick");
  if (axis < 1 || axis > t0.shape().d) throw CoordinateError("axis out of range");
  std::vector<AxisInterval> iv(t0.intervals());
  iv[axis - 1] = {t0.edge(axis) + 1, t0.shape().n};
  return Brick(t0.shape(), std::move(iv));
}

/// The unique partition brick at distance d: every axis flipped. Only real
/// bricks have one (otherwise no cell reaches distance d).
inline Brick remote_mate(const Brick& t0) {
  if (!t0.anchored_at_origin()) throw DomainError("remote_mate requires an origin-anchored brick");
  if (!classify(t0).real)
    throw DomainError("remote mate exists only for real bricks");
  std::vector<AxisInterval> iv(t0.intervals());
  for (int a = 1; a <= t0.shape().d; ++a) iv[a - 1] = {t0.edge(a) + 1, t0.shape().n};
  return Brick(t0.shape(), std::move(iv));
}

}  // namespace lsc
