#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsc/stochastic.hpp"
#include "oracles.hpp"

using namespace lsc;

namespace {

std::vector<double> random_positive(int64_t count, SplitMix64& rng) {
  std::vector<double> v(static_cast<size_t>(count));
  for (double& x : v) x = 0.05 + rng.unit();
  return v;
}

std::vector<Lsc> random_cubes(int n, int how_many, SplitMix64& rng) {
  std::vector<Lsc> cubes;
  Lsc base = cyclic_lsc(BoardShape(n, 3));
  for (int i = 0; i < how_many; ++i) cubes.push_back(random_latin_transform(base, rng.next()));
  return cubes;
}

// random non-negative rationals summing to exactly 1
std::vector<Rat> random_weights(size_t count, SplitMix64& rng) {
  std::vector<int64_t> parts(count);
  int64_t total = 0;
  for (auto& p : parts) {
    p = 1 + static_cast<int64_t>(rng.below(97));
    total += p;
  }
  std::vector<Rat> w;
  w.reserve(count);
  for (int64_t p : parts) w.emplace_back(p, total);
  return w;
}

}  // namespace

TEST_CASE("indicator tensor of a placement") {
  StochasticTensor t = from_lsc(Lsc(BoardShape(2, 2), {Cell{1, 1}, Cell{2, 2}}));
  CHECK(t.values() == std::vector<double>{1, 0, 0, 1});
  CHECK(t.tolerance() == 0.0);
  CHECK(t.max_file_deviation() == 0.0);
}

TEST_CASE("tensor validation") {
  BoardShape shape(2, 2);
  CHECK_THROWS_AS(StochasticTensor(shape, {1, 0, 0}), DimensionError);
  CHECK_THROWS_AS(StochasticTensor(shape, {1, -0.5, 0, 1}), DomainError);
  CHECK_THROWS_AS(StochasticTensor(shape, {0.9, 0, 0, 1}), DomainError);
  CHECK_NOTHROW(StochasticTensor(shape, {0.5, 0.5, 0.5, 0.5}));
}

TEST_CASE("mass sums entries over a brick") {
  BoardShape shape(4, 3);
  StochasticTensor uniform(shape, std::vector<double>(64, 0.25));
  CHECK(mass(uniform, Brick::from_sizes(shape, {2, 3, 1})) == doctest::Approx(6.0 / 4));
  CHECK(mass(uniform, Brick::full(shape)) == doctest::Approx(16.0));

  Lsc l = random_latin_transform(cyclic_lsc(shape), 5);
  StochasticTensor ind = from_lsc(l);
  SplitMix64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<AxisInterval> iv;
    for (int a = 0; a < 3; ++a) {
      int lo = 1 + static_cast<int>(rng.below(4));
      int hi = lo + static_cast<int>(rng.below(static_cast<uint64_t>(4 - lo + 1)));
      iv.push_back({lo, hi});
    }
    Brick b(shape, iv);
    CHECK(mass(ind, b) == static_cast<double>(rook_count(l, b)));
  }
}

TEST_CASE("sinkhorn normalization") {
  BoardShape shape(4, 2);
  SplitMix64 rng(91);

  // already stochastic: returned unchanged with zero residual
  std::vector<double> half(16, 0.25);
  auto fixed = normalize_to_stochastic(shape, half);
  CHECK(fixed.sweeps == 0);
  CHECK(fixed.residual == 0.0);
  CHECK(fixed.tensor.values() == half);

  // uniform raw input lands on the uniform tensor
  auto uni = normalize_to_stochastic(shape, std::vector<double>(16, 3.7));
  for (double x : uni.tensor.values()) CHECK(x == doctest::Approx(0.25));

  // random positive matrices converge to the requested tolerance
  for (int trial = 0; trial < 10; ++trial) {
    auto res = normalize_to_stochastic(shape, random_positive(16, rng), 1e-10);
    CHECK(res.residual < 1e-10);
    CHECK(res.tensor.max_file_deviation() < 1e-10);
  }

  CHECK_THROWS_AS(normalize_to_stochastic(shape, std::vector<double>(16, 0.0)), DomainError);
  try {
    normalize_to_stochastic(shape, random_positive(16, rng), 1e-12, 0);
    CHECK(false);
  } catch (const ConvergenceError& e) {
    CHECK(e.residual > 1e-12);
  }
}

TEST_CASE("distribution check is exact on permutation tensors") {
  // n = 3 exercises volumes that are not exactly representable over n
  for (int n : {2, 3, 4, 6}) {
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, 3)), 17);
    StochasticTensor t = from_lsc(l);
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        auto check = verify_distribution_stochastic(t, Brick::from_sizes(t.shape(), {a, b, n}));
        CHECK(check.max_abs_error == 0.0);
      }
    auto real_check = verify_distribution_stochastic(
        t, Brick::from_sizes(t.shape(), {1, std::max(1, n - 1), std::max(1, n / 2)}));
    CHECK(real_check.max_abs_error == 0.0);
    CHECK(real_check.remote_integrality_error == 0.0);
  }
}

TEST_CASE("distribution check on the uniform tensor") {
  // order 4: entries 1/4 are exact binary fractions, the check is exact
  BoardShape shape4(4, 2);
  StochasticTensor uniform4(shape4, std::vector<double>(16, 0.25));
  CHECK(verify_distribution_stochastic(uniform4, Brick::from_sizes(shape4, {2, 3})).max_abs_error ==
        0.0);

  // order 5: entries 1/5 round, leaving only summation noise
  BoardShape shape5(5, 2);
  StochasticTensor uniform5(shape5, std::vector<double>(25, 0.2), 1e-14);
  CHECK(verify_distribution_stochastic(uniform5, Brick::from_sizes(shape5, {2, 3})).max_abs_error <
        1e-14);
}

TEST_CASE("distribution check on sinkhorn-normalized matrices") {
  SplitMix64 rng(92);
  for (int n : {4, 6}) {
    BoardShape shape(n, 2);
    for (int trial = 0; trial < 5; ++trial) {
      auto res = normalize_to_stochastic(shape, random_positive(shape.cell_count(), rng), 1e-10);
      const double budget = std::pow(2.0, shape.d) * shape.rook_capacity() * 1e-10;
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
          auto check = verify_distribution_stochastic(res.tensor, Brick::from_sizes(shape, {a, b}));
          CHECK(check.max_abs_error <= budget);
          CHECK(check.max_abs_error <= 1e-8);
          CHECK(check.remote_integrality_error <= 1e-8);
        }
    }
  }
}

TEST_CASE("rational tensor construction guards") {
  SplitMix64 rng(93);
  auto cubes = random_cubes(3, 2, rng);
  CHECK_THROWS_AS(convex_combination(cubes, {Rat(1, 2), Rat(1, 3)}), DomainError);
  CHECK_THROWS_AS(convex_combination(cubes, {Rat(3, 2), Rat(-1, 2)}), DomainError);
  CHECK_THROWS_AS(convex_combination(cubes, {Rat(1)}), DimensionError);
  CHECK_NOTHROW(convex_combination(cubes, {Rat(1, 2), Rat(1, 2)}));
}

TEST_CASE("a single cube combination reproduces rook counts") {
  SplitMix64 rng(94);
  auto cubes = random_cubes(4, 1, rng);
  RationalTensor t = convex_combination(cubes, {Rat(1)});
  Brick b = Brick::from_sizes(BoardShape(4, 3), {2, 3, 2});
  CHECK(mass(t, b) == Rat(rook_count(cubes[0], b)));
}

TEST_CASE("exact distribution identity for convex combinations of cubes") {
  SplitMix64 rng(95);
  for (int n : {2, 3, 4, 5, 6}) {
    auto cubes = random_cubes(n, 1 + static_cast<int>(rng.below(8)), rng);
    RationalTensor t = convex_combination(cubes, random_weights(cubes.size(), rng));
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<int> sizes;
      for (int a = 0; a < 3; ++a) sizes.push_back(1 + static_cast<int>(rng.below(n)));
      auto check = verify_distribution_exact(t, Brick::from_sizes(BoardShape(n, 3), sizes));
      CHECK(check.identity_exact);
      CHECK(check.remote_integral);
    }
  }
}

TEST_CASE("doubly stochastic combinations keep c2 - c0 integral") {
  SplitMix64 rng(96);
  for (int n : {3, 5}) {
    std::vector<Lsc> perms;
    Lsc base = cyclic_lsc(BoardShape(n, 2));
    for (int i = 0; i < 5; ++i) perms.push_back(random_latin_transform(base, rng.next()));
    RationalTensor t = convex_combination(perms, random_weights(perms.size(), rng));
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b) {
        auto check = verify_distribution_exact(t, Brick::from_sizes(BoardShape(n, 2), {a, b}));
        CHECK(check.identity_exact);
        CHECK(check.remote_integral);
      }
  }
}
