#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lsc/bricks.hpp"
#include "lsc/rational.hpp"

namespace lsc {

/// Exact number of rooks inside a brick. Counts by walking the files of the
/// brick along its longest edge and testing the per-file rook coordinate,
/// so the work is V(b)/max_edge, never a cell enumeration.
inline int64_t rook_count(const Lsc& l, const Brick& b) {
  if (l.shape() != b.shape()) throw DimensionError("LSC and brick on different boards");
  int best_axis = 1;
  for (int a = 2; a <= l.d(); ++a)
    if (b.edge(a) > b.edge(best_axis)) best_axis = a;
  if (b.edge(best_axis) == 0) return 0;

  std::vector<int> lo = b.lo(), hi = b.hi();
  lo[best_axis - 1] = hi[best_axis - 1] = 1;  // fixed dummy; files ignore this axis
  const AxisInterval target = b.interval(best_axis);
  int64_t count = 0;
  for_each_tuple(lo, hi, [&](const std::vector<int>& tuple) {
    Cell c(tuple);
    if (target.contains(l.rook_coord_in_file(best_axis, c))) ++count;
  });
  return count;
}

/// Rook count of a general (not necessarily visible) subsystem.
inline int64_t rook_count(const Lsc& l, const Subsystem& s) {
  if (l.shape() != s.shape) throw DimensionError("LSC and subsystem on different boards");
  int64_t count = 0;
  for (const Cell& c : l.rooks())
    if (s.contains(c)) ++count;
  return count;
}

/// df(X) = V(X)/n - c, exact.
inline Rat deflection(const Lsc& l, const Brick& b) {
  return Rat(volume(b), l.n()) - Rat(rook_count(l, b));
}

/// Predicted rook count of a partition brick at distance k from T_0:
/// V_k/n - (-1)^k (V_0/n - c_0).
inline Rat predict_count(int64_t c0, int64_t v0, int64_t vk, int k, int n) {
  if (n < 1) throw DomainError("order must be >= 1");
  Rat df0 = Rat(v0, n) - Rat(c0);
  Rat signed_df0 = (k % 2 == 0) ? df0 : -df0;
  return Rat(vk, n) - signed_df0;
}

/// One partition brick checked against the distribution/deflection laws.
struct BrickReport {
  uint32_t mask;   // which axes are flipped relative to T_0
  int distance;    // |mask| = Hamming distance from T_0
  Brick brick;
  int64_t volume;
  int64_t count;
  Rat density;     // c/V, zero for empty bricks
  Rat deflection;  // V/n - c
  Rat predicted;   // from c_0, V_0, V_k, k, n only
  bool match;      // count equals prediction and deflection alternates
};

/// Checks every brick of the partition generated by T_0. Mismatches are
/// reported, not raised; on a valid LSC every report matches.
inline std::vector<BrickReport> verify_distribution(const Lsc& l, const Brick& t0) {
  Partition part(t0);
  const int64_t v0 = volume(t0);
  const int64_t c0 = rook_count(l, t0);
  const Rat df0 = Rat(v0, l.n()) - Rat(c0);

  std::vector<BrickReport> out;
  out.reserve(part.size());
  for (const auto& [mask, brick] : part.bricks()) {
    const int k = Partition::distance_of(mask);
    const int64_t vk = volume(brick);
    const int64_t ck = rook_count(l, brick);
    const Rat pred = predict_count(c0, v0, vk, k, l.n());
    const Rat df = Rat(vk, l.n()) - Rat(ck);
    const Rat want_df = (k % 2 == 0) ? df0 : -df0;
    out.push_back({mask, k, brick, vk, ck,
                   vk > 0 ? Rat(ck, vk) : Rat(0),
                   df, pred, Rat(ck) == pred && df == want_df});
  }
  return out;
}

/// C(n,k) by Pascal's triangle; exact for n <= 64.
inline int64_t binomial(int n, int k) {
  if (n < 0 || n > 64) throw DomainError("binomial supported for 0 <= n <= 64");
  if (k < 0 || k > n) return 0;
  std::vector<int64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<int64_t> next(static_cast<size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

/// Terms k*(-1)^k*C(d,k) for k = 0..d.
inline std::vector<long long> binomial_alternating_terms(int d) {
  std::vector<long long> terms;
  terms.reserve(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    __int128 t = static_cast<__int128>(k) * binomial(d, k);
    if (k % 2 == 1) t = -t;
    if (t > INT64_MAX || t < INT64_MIN)
      throw std::overflow_error("alternating term exceeds 64 bits");
    terms.push_back(static_cast<long long>(t));
  }
  return terms;
}

/// Sum k*(-1)^k*C(d,k); zero for every d >= 2.
inline long long binomial_alternating_moment(int d) {
  if (d < 0 || d > 64) throw DomainError("moment supported for 0 <= d <= 64");
  __int128 sum = 0;
  for (int k = 0; k <= d; ++k) {
    __int128 t = static_cast<__int128>(k) * binomial(d, k);
    sum += (k % 2 == 1) ? -t : t;
  }
  if (sum > INT64_MAX || sum < INT64_MIN)
    throw std::overflow_error("moment exceeds 64 bits");
  return static_cast<long long>(sum);
}

/// Rook distances from T_0 summed over the whole LSC, brute force, with the
/// closed form and the per-sphere counts to compare against.
struct DistanceReport {
  std::vector<int64_t> rook_counts;     // s_0..s_d (brute force per rook)
  std::vector<int64_t> sphere_volumes;  // V(S_0)..V(S_d)
  int64_t h;                            // sum k * s_k
  int64_t h_closed_form;                // n^(d-2) * sum (n - e_i)
  bool spheres_match;                   // s_k = V(S_k)/n - #bricks_k*(-1)^k*df(T_0)
  bool match;                           // h equals closed form and spheres match
};

inline DistanceReport distance_sum(const Lsc& l, const Brick& t0) {
  const int n = l.n(), d = l.d();
  Partition part(t0);

  DistanceReport rep;
  rep.rook_counts.assign(static_cast<size_t>(d) + 1, 0);
  rep.sphere_volumes.assign(static_cast<size_t>(d) + 1, 0);
  std::vector<int64_t> bricks_at(static_cast<size_t>(d) + 1, 0);
  for (const auto& [mask, brick] : part.bricks()) {
    rep.sphere_volumes[Partition::distance_of(mask)] += volume(brick);
    ++bricks_at[Partition::distance_of(mask)];
  }
  for (const Cell& c : l.rooks()) ++rep.rook_counts[cell_to_brick_distance(t0, c)];

  rep.h = 0;
  for (int k = 0; k <= d; ++k) rep.h += k * rep.rook_counts[k];

  int64_t ndm2 = 1;
  for (int i = 0; i < d - 2; ++i) ndm2 *= n;
  int64_t edge_gap = 0;
  for (int a = 1; a <= d; ++a) edge_gap += n - t0.edge(a);
  rep.h_closed_form = ndm2 * edge_gap;

  const Rat df0 = Rat(volume(t0), n) - Rat(rook_count(l, t0));
  rep.spheres_match = true;
  for (int k = 0; k <= d; ++k) {
    Rat want = Rat(rep.sphere_volumes[k], n) -
               Rat(bricks_at[k]) * ((k % 2 == 0) ? df0 : -df0);
    if (Rat(rep.rook_counts[k]) != want) rep.spheres_match = false;
  }
  rep.match = rep.h == rep.h_closed_form && rep.spheres_match;
  return rep;
}

/// Ry(T_0) = a + b - n for a real 2-dimensional brick; equals c_0 - c_2 in
/// every 2-LSC.
inline int ryser_number(const Brick& t0) {
  if (t0.shape().d != 2) throw DomainError("Ryser number is defined for d = 2");
  if (!classify(t0).real) throw DomainError("Ryser number is defined for real bricks");
  return t0.edge(1) + t0.edge(2) - t0.shape().n;
}

/// cap(n,a,b,c) = n^2 - (a+b+c)n + (ab+bc+ca); the exact value of c_0+c_3,
/// also correct for the degenerate cases c = 0 and c = n.
inline int64_t capacity(int64_t n, int64_t a, int64_t b, int64_t c) {
  return n * n - (a + b + c) * n + (a * b + b * c + c * a);
}

/// Balanced / stuffed check for a remote brick couple.
struct RbcVerdict {
  int dim;               // 2 or 3
  int64_t count_origin;  // c_0
  int64_t count_remote;  // c_2 (d=2) or c_3 (d=3)
  int64_t expected;      // Ryser number for c_0-c_2, capacity for c_0+c_3
  bool ok;
  bool layers_balanced;  // d=3: every layer RBC on every axis is balanced
};

inline RbcVerdict check_rbc(const Lsc& l, const Brick& t0) {
  if (l.shape() != t0.shape()) throw DimensionError("LSC and brick on different boards");
  const int n = l.n(), d = l.d();
  if (d != 2 && d != 3) throw DomainError("RBC checks are defined for d = 2 and d = 3");
  if (!t0.anchored_at_origin() || !classify(t0).real)
    throw DomainError("RBC checks need an origin-anchored real brick");

  RbcVerdict v{};
  v.dim = d;
  v.count_origin = rook_count(l, t0);
  v.count_remote = rook_count(l, remote_mate(t0));
  v.layers_balanced = true;

  if (d == 2) {
    v.expected = ryser_number(t0);
    v.ok = v.count_origin - v.count_remote == v.expected;
    return v;
  }

  v.expected = capacity(n, t0.edge(1), t0.edge(2), t0.edge(3));
  v.ok = v.count_origin + v.count_remote == v.expected;

  // every layer of the cube carries a balanced 2-dimensional RBC
  for (int pin = 1; pin <= 3 && v.layers_balanced; ++pin) {
    const int ax1 = pin == 1 ? 2 : 1;
    const int ax2 = pin == 3 ? 2 : 3;
    const int ry = t0.edge(ax1) + t0.edge(ax2) - n;
    for (int z = 1; z <= n; ++z) {
      std::vector<AxisInterval> origin_side(3), remote_side(3);
      origin_side[pin - 1] = remote_side[pin - 1] = {z, z};
      origin_side[ax1 - 1] = {1, t0.edge(ax1)};
      origin_side[ax2 - 1] = {1, t0.edge(ax2)};
      remote_side[ax1 - 1] = {t0.edge(ax1) + 1, n};
      remote_side[ax2 - 1] = {t0.edge(ax2) + 1, n};
      int64_t c0 = rook_count(l, Brick(l.shape(), origin_side));
      int64_t c2 = rook_count(l, Brick(l.shape(), remote_side));
      if (c0 - c2 != ry) {
        v.layers_balanced = false;
        break;
      }
    }
  }
  return v;
}

/// T_0 and T_3 (the leafs) joined by the axis n-brick T_1b u T_2bc. The
/// three pairwise unions are n-bricks, which yields the capacity identity
/// without the distribution machinery.
struct HingeDecomposition {
  Brick leaf_origin;   // T_0
  Brick axis_near;     // T_1b, adjacent to T_0
  Brick axis_far;      // T_2bc, adjacent to T_3
  Brick leaf_remote;   // T_3
  Brick axis_brick;    // T_1b u T_2bc; exactly one edge of size n
  Brick union_origin;  // T_0 u T_1b
  Brick union_remote;  // T_3 u T_2bc
  int64_t capacity_via_volumes;  // [V(T0)+V(T1b)]/n + [V(T3)+V(T2bc)]/n - [V(T1b)+V(T2bc)]/n
  bool volume_identity;          // V(T0)+V(T3) = V(u origin) + V(u remote) - V(axis brick)
};

inline HingeDecomposition hinge(const Brick& t0, int flip_axis = 2, int full_axis = 3) {
  if (t0.shape().d != 3) throw DomainError("hinges are defined for d = 3");
  if (classify(t0).degenerate) throw DomainError("hinge needs a non-degenerate brick");
  if (!t0.anchored_at_origin() || !classify(t0).real)
    throw DomainError("hinge needs an origin-anchored real brick");
  if (flip_axis < 1 || flip_axis > 3 || full_axis < 1 || full_axis > 3 || flip_axis == full_axis)
    throw CoordinateError("hinge needs two distinct axes in 1..3");

  const int n = t0.shape().n;
  auto flipped = [&](std::vector<int> axes) {
    std::vector<AxisInterval> iv(t0.intervals());
    for (int a : axes) iv[a - 1] = {t0.edge(a) + 1, n};
    return Brick(t0.shape(), std::move(iv));
  };
  int rest_axis = 6 - flip_axis - full_axis;

  Brick t1b = flipped({flip_axis});
  Brick t2bc = flipped({flip_axis, full_axis});
  Brick t3 = flipped({1, 2, 3});

  auto with_full = [&](const Brick& base, int axis) {
    std::vector<AxisInterval> iv(base.intervals());
    iv[axis - 1] = {1, n};
    return Brick(t0.shape(), std::move(iv));
  };
  Brick axis_brick = with_full(t1b, full_axis);
  Brick union_origin = with_full(t0, flip_axis);
  Brick union_remote = with_full(t3, rest_axis);

  int64_t cap = (volume(t0) + volume(t1b)) / n + (volume(t3) + volume(t2bc)) / n -
                (volume(t1b) + volume(t2bc)) / n;
  bool vol_id = volume(t0) + volume(t3) ==
                volume(union_origin) + volume(union_remote) - volume(axis_brick);
  return {t0, t1b, t2bc, t3, axis_brick, union_origin, union_remote, cap, vol_id};
}

/// c_0 + c_3 recomputed from actual rook counts of the three n-brick unions.
struct HingeRookCheck {
  int64_t direct;      // rook_count(T_0) + rook_count(T_3)
  int64_t via_unions;  // count(T0 u T1b) + count(T3 u T2bc) - count(T1b u T2bc)
  bool ok;
};

inline HingeRookCheck hinge_rook_identity(const Lsc& l, const HingeDecomposition& h) {
  int64_t direct = rook_count(l, h.leaf_origin) + rook_count(l, h.leaf_remote);
  int64_t via = rook_count(l, h.union_origin) + rook_count(l, h.union_remote) -
                rook_count(l, h.axis_brick);
  return {direct, via, direct == via};
}

/// Real brick sizes whose volume is divisible by n, i.e. the only candidates
/// for standard density. Empty for prime n: no real Hamming brick of
/// standard density exists then.
inline std::vector<std::vector<int>> standard_density_real_brick_sizes(int n, int d) {
  std::vector<std::vector<int>> out;
  if (n <= 1) return out;
  std::vector<int> lo(static_cast<size_t>(d), 1), hi(static_cast<size_t>(d), n - 1);
  for_each_tuple(lo, hi, [&](const std::vector<int>& sizes) {
    int64_t v = 1;
    for (int e : sizes) v *= e;
    if (v % n == 0) out.push_back(sizes);
  });
  return out;
}

}  // namespace lsc
