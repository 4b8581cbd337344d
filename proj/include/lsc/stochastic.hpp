#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lsc/analysis.hpp"

namespace lsc {

// Tensors materialize all n^d entries, so they get a tighter size guard
// than rook placements.
inline constexpr int64_t kMaxTensorCells = int64_t{1} << 24;

namespace detail {

inline int64_t tensor_cells(const BoardShape& shape) {
  int64_t cells = shape.cell_count();
  if (cells > kMaxTensorCells)
    throw SizeLimitError("tensor exceeds 2^24 cells");
  return cells;
}

// Walks every file along `axis` (0-based) and hands (base_index, stride) to
// the callback; entry j of the file lives at base_index + j*stride.
template <class F>
inline void for_each_file(const BoardShape& shape, int axis, F&& fn) {
  int64_t stride = 1;
  for (int j = shape.d - 1; j > axis; --j) stride *= shape.n;
  std::vector<int> lo(static_cast<size_t>(shape.d), 1);
  std::vector<int> hi(static_cast<size_t>(shape.d), shape.n);
  hi[axis] = 1;
  for_each_tuple(lo, hi, [&](const std::vector<int>& tuple) {
    fn(cell_index(shape, Cell(tuple)), stride);
  });
}

}  // namespace detail

/// d-fold stochastic tensor: n^d non-negative reals with every file summing
/// to 1 within `tol`. Row-major storage, last axis fastest.
class StochasticTensor {
 public:
  StochasticTensor(BoardShape shape, std::vector<double> values, double tol = 1e-10)
      : shape_(shape), v_(std::move(values)), tol_(tol) {
    if (static_cast<int64_t>(v_.size()) != detail::tensor_cells(shape_))
      throw DimensionError("tensor needs n^d values");
    for (double x : v_)
      if (!(x >= 0.0)) throw DomainError("tensor entries must be non-negative");
    double dev = max_file_deviation();
    if (dev > tol_)
      throw DomainError("file sums deviate from 1 by " + std::to_string(dev) +
                        " (tolerance " + std::to_string(tol_) + ")");
  }

  const BoardShape& shape() const { return shape_; }
  int n() const { return shape_.n; }
  int d() const { return shape_.d; }
  const std::vector<double>& values() const { return v_; }
  double tolerance() const { return tol_; }

  double at(const Cell& c) const { return v_[static_cast<size_t>(cell_index(shape_, c))]; }

  double max_file_deviation() const {
    double worst = 0.0;
    for (int a = 0; a < shape_.d; ++a) {
      detail::for_each_file(shape_, a, [&](int64_t base, int64_t stride) {
        double s = 0.0;
        for (int j = 0; j < shape_.n; ++j) s += v_[static_cast<size_t>(base + j * stride)];
        worst = std::max(worst, std::abs(s - 1.0));
      });
    }
    return worst;
  }

 private:
  BoardShape shape_;
  std::vector<double> v_;
  double tol_;
};

/// Characteristic (0/1) tensor of a rook placement; exactly stochastic.
inline StochasticTensor from_lsc(const Lsc& l) {
  std::vector<double> v(static_cast<size_t>(detail::tensor_cells(l.shape())), 0.0);
  for (const Cell& c : l.rooks()) v[static_cast<size_t>(cell_index(l.shape(), c))] = 1.0;
  return StochasticTensor(l.shape(), std::move(v), 0.0);
}

/// Sum of the entries inside a brick.
inline double mass(const StochasticTensor& t, const Brick& b) {
  if (t.shape() != b.shape()) throw DimensionError("tensor and brick on different boards");
  double s = 0.0;
  for_each_tuple(b.lo(), b.hi(), [&](const std::vector<int>& tuple) {
    s += t.at(Cell(tuple));
  });
  return s;
}

struct SinkhornResult {
  StochasticTensor tensor;
  double residual;  // max file-sum deviation actually achieved
  int sweeps;
};

/// Iterative proportional fitting: cycles over the d axis directions,
/// rescaling every file along one axis to sum 1, until the largest file-sum
/// deviation drops below eps.
inline SinkhornResult normalize_to_stochastic(const BoardShape& shape, std::vector<double> raw,
                                              double eps = 1e-10, int max_sweeps = 10000) {
  if (static_cast<int64_t>(raw.size()) != detail::tensor_cells(shape))
    throw DimensionError("tensor needs n^d values");
  for (double x : raw)
    if (!(x > 0.0)) throw DomainError("normalization needs strictly positive entries");

  auto deviation = [&]() {
    double worst = 0.0;
    for (int a = 0; a < shape.d; ++a) {
      detail::for_each_file(shape, a, [&](int64_t base, int64_t stride) {
        double s = 0.0;
        for (int j = 0; j < shape.n; ++j) s += raw[static_cast<size_t>(base + j * stride)];
        worst = std::max(worst, std::abs(s - 1.0));
      });
    }
    return worst;
  };

  double dev = deviation();
  int sweeps = 0;
  while (dev > eps) {
    if (sweeps >= max_sweeps)
      throw ConvergenceError("file sums still off by " + std::to_string(dev) + " after " +
                                 std::to_string(max_sweeps) + " sweeps",
                             dev);
    for (int a = 0; a < shape.d; ++a) {
      detail::for_each_file(shape, a, [&](int64_t base, int64_t stride) {
        double s = 0.0;
        for (int j = 0; j < shape.n; ++j) s += raw[static_cast<size_t>(base + j * stride)];
        for (int j = 0; j < shape.n; ++j) raw[static_cast<size_t>(base + j * stride)] /= s;
      });
    }
    ++sweeps;
    dev = deviation();
  }
  return {StochasticTensor(shape, std::move(raw), eps == 0.0 ? 0.0 : eps), dev, sweeps};
}

struct StochasticRow {
  uint32_t mask;
  int64_t volume;
  double mass;
  double predicted;
  double error;
};

struct StochasticCheck {
  std::vector<StochasticRow> rows;
  double max_abs_error;
  // d=2: distance of c_2 - c_0 from the nearest integer; d=3: of c_0 + c_3.
  // 0 when T_0 is not a real brick of matching dimension.
  double remote_integrality_error;
};

/// The distribution law with masses in place of rook counts. The volume part
/// of the prediction is integral (any LSC witnesses n | V_k - (-1)^k V_0),
/// so it is computed in exact integer arithmetic and the only rounding left
/// is one multiply-add on the measured mass.
inline StochasticCheck verify_distribution_stochastic(const StochasticTensor& t, const Brick& t0) {
  Partition part(t0);
  const int n = t.n();
  const int64_t v0 = volume(t0);
  const double m0 = mass(t, t0);

  StochasticCheck check{};
  check.max_abs_error = 0.0;
  for (const auto& [mask, brick] : part.bricks()) {
    const int k = Partition::distance_of(mask);
    const int sign = (k % 2 == 0) ? 1 : -1;
    const int64_t vk = volume(brick);
    const double volume_part = static_cast<double>(vk - sign * v0) / n;
    const double predicted = volume_part + sign * m0;
    const double actual = mass(t, brick);
    const double err = std::abs(actual - predicted);
    check.rows.push_back({mask, vk, actual, predicted, err});
    check.max_abs_error = std::max(check.max_abs_error, err);
  }

  check.remote_integrality_error = 0.0;
  if ((t.d() == 2 || t.d() == 3) && classify(t0).real) {
    double x = t.d() == 2 ? mass(t, remote_mate(t0)) - m0
                          : m0 + mass(t, remote_mate(t0));
    check.remote_integrality_error = std::abs(x - std::round(x));
  }
  return check;
}

/// Exactly stochastic tensor over rationals; the exact route for convex
/// combinations of permutation cubes.
class RationalTensor {
 public:
  RationalTensor(BoardShape shape, std::vector<Rat> values)
      : shape_(shape), v_(std::move(values)) {
    if (static_cast<int64_t>(v_.size()) != detail::tensor_cells(shape_))
      throw DimensionError("tensor needs n^d values");
    for (const Rat& x : v_)
      if (x < Rat(0)) throw DomainError("tensor entries must be non-negative");
    for (int a = 0; a < shape_.d; ++a) {
      bool ok = true;
      detail::for_each_file(shape_, a, [&](int64_t base, int64_t stride) {
        Rat s(0);
        for (int j = 0; j < shape_.n; ++j) s = s + v_[static_cast<size_t>(base + j * stride)];
        if (s != Rat(1)) ok = false;
      });
      if (!ok) throw DomainError("file sums must be exactly 1");
    }
  }

  const BoardShape& shape() const { return shape_; }
  const Rat& at(const Cell& c) const { return v_[static_cast<size_t>(cell_index(shape_, c))]; }

 private:
  BoardShape shape_;
  std::vector<Rat> v_;
};

/// sum w_i * indicator(cube_i); exactly stochastic whenever the weights are
/// non-negative and sum to 1.
inline RationalTensor convex_combination(const std::vector<Lsc>& cubes,
                                         const std::vector<Rat>& weights) {
  if (cubes.empty() || cubes.size() != weights.size())
    throw DimensionError("need one weight per cube");
  Rat total(0);
  for (const Rat& w : weights) {
    if (w < Rat(0)) throw DomainError("weights must be non-negative");
    total = total + w;
  }
  if (total != Rat(1)) throw DomainError("weights must sum to exactly 1");
  const BoardShape shape = cubes.front().shape();
  for (const Lsc& l : cubes)
    if (l.shape() != shape) throw DimensionError("cubes on different boards");

  std::vector<Rat> v(static_cast<size_t>(detail::tensor_cells(shape)), Rat(0));
  for (size_t i = 0; i < cubes.size(); ++i)
    for (const Cell& c : cubes[i].rooks()) {
      auto idx = static_cast<size_t>(cell_index(shape, c));
      v[idx] = v[idx] + weights[i];
    }
  return RationalTensor(shape, std::move(v));
}

inline Rat mass(const RationalTensor& t, const Brick& b) {
  if (t.shape() != b.shape()) throw DimensionError("tensor and brick on different boards");
  Rat s(0);
  for_each_tuple(b.lo(), b.hi(), [&](const std::vector<int>& tuple) {
    s = s + t.at(Cell(tuple));
  });
  return s;
}

struct RationalDistributionCheck {
  bool identity_exact;   // every partition brick mass equals the prediction
  bool remote_integral;  // c_2 - c_0 (d=2) / c_0 + c_3 (d=3) is an integer
};

inline RationalDistributionCheck verify_distribution_exact(const RationalTensor& t,
                                                           const Brick& t0) {
  Partition part(t0);
  const int n = t.shape().n;
  const int64_t v0 = volume(t0);
  const Rat m0 = mass(t, t0);

  RationalDistributionCheck check{true, true};
  for (const auto& [mask, brick] : part.bricks()) {
    const int k = Partition::distance_of(mask);
    Rat df0 = Rat(v0, n) - m0;
    Rat predicted = Rat(volume(brick), n) - ((k % 2 == 0) ? df0 : -df0);
    if (mass(t, brick) != predicted) check.identity_exact = false;
  }
  if ((t.shape().d == 2 || t.shape().d == 3) && classify(t0).real) {
    Rat x = t.shape().d == 2 ? mass(t, remote_mate(t0)) - m0
                             : m0 + mass(t, remote_mate(t0));
    check.remote_integral = x.is_integer();
  }
  return check;
}

}  // namespace lsc
