#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lsc/analysis.hpp"
#include "oracles.hpp"

using namespace lsc;

namespace {

Lsc identity_2lsc(int n) {
  std::vector<Cell> cells;
  for (int i = 1; i <= n; ++i) cells.push_back(Cell{i, i});
  return Lsc(BoardShape(n, 2), std::move(cells));
}

}  // namespace

TEST_CASE("rook_count basics") {
  Lsc l = cyclic_lsc(BoardShape(4, 3));
  CHECK(rook_count(l, Brick::full(l.shape())) == 16);
  CHECK(rook_count(l, Brick::from_sizes(l.shape(), {2, 2, 2})) == 3);
  CHECK(rook_count(l, Brick::from_sizes(l.shape(), {2, 0, 2})) == 0);
  CHECK_THROWS_AS(rook_count(l, Brick::full(BoardShape(5, 3))), DimensionError);
}

TEST_CASE("rook_count agrees with cell-set membership counting") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int d = 2 + static_cast<int>(rng.below(2));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, d)), rng.next());
    std::vector<AxisInterval> iv;
    for (int a = 0; a < d; ++a) {
      int lo = 1 + static_cast<int>(rng.below(n));
      int hi = lo + static_cast<int>(rng.below(static_cast<uint64_t>(n - lo + 1)));
      iv.push_back({lo, hi});
    }
    Brick b(l.shape(), iv);
    CHECK(rook_count(l, b) == oracle::rook_count(l, b));
  }
}

TEST_CASE("every n-brick has exactly V/n rooks") {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, 3)), rng.next());
    const int full_axis = 1 + static_cast<int>(rng.below(3));
    std::vector<AxisInterval> iv(3);
    for (int a = 1; a <= 3; ++a) {
      if (a == full_axis) {
        iv[a - 1] = {1, n};
      } else {
        int lo = 1 + static_cast<int>(rng.below(n));
        int hi = lo + static_cast<int>(rng.below(static_cast<uint64_t>(n - lo + 1)));
        iv[a - 1] = {lo, hi};
      }
    }
    Brick b(l.shape(), iv);
    CHECK(rook_count(l, b) == volume(b) / n);
  }
}

TEST_CASE("subsystem rook counting") {
  Lsc l = identity_2lsc(4);
  Subsystem diag(l.shape(), {{1, 3}, {1, 3}});
  CHECK(rook_count(l, diag) == 2);  // rooks (1,1) and (3,3)
}

TEST_CASE("predict_count examples") {
  CHECK(predict_count(3, 8, 8, 1, 4) == Rat(1));
  CHECK(predict_count(3, 8, 8, 3, 4) == Rat(1));
  CHECK(predict_count(3, 8, 8, 2, 4) == Rat(3));  // k even, equal volumes: back to c0
  CHECK(predict_count(5, 12, 8, 2, 4) == Rat(8, 4) - (Rat(12, 4) - Rat(5)));
}

TEST_CASE("deflection helper") {
  Lsc l = cyclic_lsc(BoardShape(4, 3));
  CHECK(deflection(l, Brick::from_sizes(l.shape(), {2, 2, 2})) == Rat(-1));
  CHECK(deflection(l, Brick::full(l.shape())) == Rat(0));
}

TEST_CASE("distribution reports on the cyclic cube") {
  Lsc l = cyclic_lsc(BoardShape(4, 3));
  Brick t0 = Brick::from_sizes(l.shape(), {2, 2, 2});
  auto reports = verify_distribution(l, t0);
  REQUIRE(reports.size() == 8);

  // brute counts per sphere member: 3,1,3,1 -> deflection -1,+1,-1,+1
  for (const auto& r : reports) {
    CHECK(r.match);
    CHECK(r.volume == 8);
    CHECK(r.count == (r.distance % 2 == 0 ? 3 : 1));
    CHECK(r.deflection == (r.distance % 2 == 0 ? Rat(-1) : Rat(1)));
    CHECK(Rat(r.count) == r.predicted);
    if (r.volume > 0) {
      CHECK(r.density >= Rat(0));
      CHECK(r.density <= Rat(1));
    }
  }
}

TEST_CASE("an n-brick origin forces standard density everywhere") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, 3)), rng.next());
    Brick t0(l.shape(), {{1, n}, {1, 1 + static_cast<int>(rng.below(n))}, {1, 1 + static_cast<int>(rng.below(n))}});
    for (const auto& r : verify_distribution(l, t0)) {
      CHECK(r.match);
      CHECK(r.deflection == Rat(0));
    }
  }
}

TEST_CASE("full-board origin gives a single zero-deflection report") {
  Lsc l = random_latin_transform(cyclic_lsc(BoardShape(5, 2)), 4);
  auto reports = verify_distribution(l, Brick::full(l.shape()));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].match);
  CHECK(reports[0].deflection == Rat(0));
  CHECK(reports[0].count == 5);
}

TEST_CASE("partition counts and volumes add up") {
  SplitMix64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const int d = 2 + static_cast<int>(rng.below(2));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, d)), rng.next());
    std::vector<int> sizes;
    for (int a = 0; a < d; ++a) sizes.push_back(1 + static_cast<int>(rng.below(n)));
    int64_t rooks = 0, cells = 0;
    for (const auto& r : verify_distribution(l, Brick::from_sizes(l.shape(), sizes))) {
      rooks += r.count;
      cells += r.volume;
    }
    CHECK(rooks == l.shape().rook_capacity());
    CHECK(cells == l.shape().cell_count());
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(64, 32) == 1832624140942590534LL);
  CHECK(binomial(5, 7) == 0);
  CHECK_THROWS_AS(binomial(65, 1), DomainError);
}

TEST_CASE("alternating moment vanishes from d = 2 on") {
  CHECK(binomial_alternating_moment(1) == -1);  // 0*1 - 1*1; the identity starts at d = 2
  for (int d = 2; d <= 64; ++d) CHECK(binomial_alternating_moment(d) == 0);
}

TEST_CASE("alternating moment terms match the small expansions") {
  CHECK(binomial_alternating_terms(2) == std::vector<long long>{0, -2, 2});
  CHECK(binomial_alternating_terms(3) == std::vector<long long>{0, -3, 6, -3});
  CHECK(binomial_alternating_terms(4) == std::vector<long long>{0, -4, 12, -12, 4});
}

TEST_CASE("distance report on the cyclic cube") {
  Lsc l = cyclic_lsc(BoardShape(4, 3));
  auto rep = distance_sum(l, Brick::from_sizes(l.shape(), {2, 2, 2}));
  CHECK(rep.rook_counts == std::vector<int64_t>{3, 3, 9, 1});
  CHECK(rep.h == 24);
  CHECK(rep.h_closed_form == 24);
  CHECK(rep.match);
  CHECK(rep.sphere_volumes == std::vector<int64_t>{8, 24, 24, 8});
}

TEST_CASE("distance report on the identity permutation") {
  Lsc l = identity_2lsc(4);
  auto rep = distance_sum(l, Brick::from_sizes(l.shape(), {2, 3}));
  CHECK(rep.rook_counts == std::vector<int64_t>{2, 1, 1});
  CHECK(rep.h == 3);
  CHECK(rep.h_closed_form == 3);
  CHECK(rep.match);
}

TEST_CASE("distance sum of the full board is zero") {
  Lsc l = random_latin_transform(cyclic_lsc(BoardShape(5, 3)), 8);
  auto rep = distance_sum(l, Brick::full(l.shape()));
  CHECK(rep.h == 0);
  CHECK(rep.match);
}

TEST_CASE("distance-sum closed form holds for non-real bricks too") {
  SplitMix64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const int d = 2 + static_cast<int>(rng.below(2));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, d)), rng.next());
    std::vector<int> sizes;
    for (int a = 0; a < d; ++a) sizes.push_back(1 + static_cast<int>(rng.below(n)));
    sizes[static_cast<size_t>(rng.below(d))] = n;  // force an edge of length n
    auto rep = distance_sum(l, Brick::from_sizes(l.shape(), sizes));
    CHECK(rep.match);
    int64_t rooks = 0, cells = 0;
    for (int k = 0; k <= d; ++k) {
      rooks += rep.rook_counts[k];
      cells += rep.sphere_volumes[k];
    }
    CHECK(rooks == l.shape().rook_capacity());
    CHECK(cells == l.shape().cell_count());
  }
}

TEST_CASE("h is an invariant of the shape and brick, not the placement") {
  Brick t0 = Brick::from_sizes(BoardShape(5, 3), {2, 3, 4});
  Lsc base = cyclic_lsc(BoardShape(5, 3));
  const int64_t reference = distance_sum(base, t0).h;
  for (uint64_t seed = 1; seed <= 10; ++seed)
    CHECK(distance_sum(random_latin_transform(base, seed), t0).h == reference);
}

TEST_CASE("h swaps diameters between a real brick and its remote mate") {
  Lsc l = random_latin_transform(cyclic_lsc(BoardShape(5, 3)), 2);
  Brick t0 = Brick::from_sizes(l.shape(), {2, 3, 4});
  std::vector<int> mate_sizes{3, 2, 1};  // n - e_i, re-anchored at the origin
  Brick mate = Brick::from_sizes(l.shape(), mate_sizes);
  int64_t n_to_dm2 = 5;  // n^(d-2)
  CHECK(distance_sum(l, t0).h == n_to_dm2 * diameter(mate));
  CHECK(distance_sum(l, mate).h == n_to_dm2 * diameter(t0));
}

TEST_CASE("ryser numbers") {
  BoardShape shape(4, 2);
  CHECK(ryser_number(Brick::from_sizes(shape, {2, 2})) == 0);
  CHECK(ryser_number(Brick::from_sizes(shape, {2, 3})) == 1);
  CHECK_THROWS_AS(ryser_number(Brick::from_sizes(BoardShape(4, 3), {2, 2, 2})), DomainError);
  CHECK_THROWS_AS(ryser_number(Brick::from_sizes(shape, {4, 2})), DomainError);

  Lsc l = identity_2lsc(4);
  Brick t0 = Brick::from_sizes(shape, {2, 3});
  CHECK(rook_count(l, t0) - rook_count(l, remote_mate(t0)) == ryser_number(t0));
}

TEST_CASE("capacity formula") {
  CHECK(capacity(4, 2, 2, 2) == 4);
  for (int n = 1; n <= 8; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        CHECK(capacity(n, a, b, 0) == static_cast<int64_t>(n - a) * (n - b));
        CHECK(capacity(n, a, b, n) == static_cast<int64_t>(a) * b);
        for (int c = 1; c <= n; ++c)
          CHECK(capacity(n, a, b, c) - capacity(n, a, b, c - 1) == a + b - n);
      }
}

TEST_CASE("capacity equals the alternate product form") {
  for (int n = 1; n <= 8; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b)
        for (int c = 0; c <= n; ++c)
          CHECK(capacity(n, a, b, c) ==
                static_cast<int64_t>(n - a) * (n - b) + static_cast<int64_t>(c) * (a + b - n));
}

TEST_CASE("rbc verdicts") {
  Lsc cube = cyclic_lsc(BoardShape(4, 3));
  auto stuffed = check_rbc(cube, Brick::from_sizes(cube.shape(), {2, 2, 2}));
  CHECK(stuffed.dim == 3);
  CHECK(stuffed.count_origin == 3);
  CHECK(stuffed.count_remote == 1);
  CHECK(stuffed.expected == 4);
  CHECK(stuffed.ok);
  CHECK(stuffed.layers_balanced);

  Lsc flat = identity_2lsc(4);
  auto balanced = check_rbc(flat, Brick::from_sizes(flat.shape(), {2, 3}));
  CHECK(balanced.dim == 2);
  CHECK(balanced.count_origin == 2);
  CHECK(balanced.count_remote == 1);
  CHECK(balanced.expected == 1);
  CHECK(balanced.ok);

  CHECK_THROWS_AS(check_rbc(cube, Brick::from_sizes(cube.shape(), {4, 2, 2})), DomainError);
  CHECK_THROWS_AS(check_rbc(cube, Brick(cube.shape(), {{2, 3}, {1, 2}, {1, 2}})), DomainError);
}

TEST_CASE("rbc sweep over random cubes") {
  SplitMix64 rng(36);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, 3)), rng.next());
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b)
        for (int c = 1; c < n; ++c) {
          auto v = check_rbc(l, Brick::from_sizes(l.shape(), {a, b, c}));
          CHECK(v.ok);
          CHECK(v.layers_balanced);
        }
  }
}

TEST_CASE("hinge decomposition on the 2x2x2 brick in order 4") {
  Brick t0 = Brick::from_sizes(BoardShape(4, 3), {2, 2, 2});
  auto h = hinge(t0);
  CHECK(h.capacity_via_volumes == 4);  // (8+8)/4 + (8+8)/4 - (8+8)/4
  CHECK(h.volume_identity);
  CHECK(classify(h.axis_brick).axis);
  CHECK(h.axis_near == Brick(t0.shape(), {{1, 2}, {3, 4}, {1, 2}}));
  CHECK(h.axis_far == Brick(t0.shape(), {{1, 2}, {3, 4}, {3, 4}}));
  CHECK(h.leaf_remote == Brick(t0.shape(), {{3, 4}, {3, 4}, {3, 4}}));

  Lsc l = cyclic_lsc(BoardShape(4, 3));
  auto rooks = hinge_rook_identity(l, h);
  CHECK(rooks.direct == 4);
  CHECK(rooks.via_unions == 4);  // ac + (n-b)(n-c) - a(n-b) with actual counts
  CHECK(rooks.ok);

  CHECK_THROWS_AS(hinge(Brick::from_sizes(t0.shape(), {2, 0, 2})), DomainError);
  CHECK_THROWS_AS(hinge(Brick::from_sizes(t0.shape(), {4, 2, 2})), DomainError);
  CHECK_THROWS_AS(hinge(t0, 2, 2), CoordinateError);
}

TEST_CASE("hinge identity across axis choices and instances") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, 3)), rng.next());
    const int a = 1 + static_cast<int>(rng.below(n - 1));
    const int b = 1 + static_cast<int>(rng.below(n - 1));
    const int c = 1 + static_cast<int>(rng.below(n - 1));
    Brick t0 = Brick::from_sizes(l.shape(), {a, b, c});
    const int64_t cap = capacity(n, a, b, c);
    for (int flip = 1; flip <= 3; ++flip)
      for (int full = 1; full <= 3; ++full) {
        if (flip == full) continue;
        auto h = hinge(t0, flip, full);
        CHECK(h.capacity_via_volumes == cap);
        CHECK(h.volume_identity);
        CHECK(classify(h.axis_brick).axis);
        auto rooks = hinge_rook_identity(l, h);
        CHECK(rooks.ok);
        CHECK(rooks.direct == cap);
      }
  }
}

TEST_CASE("the complement of a hinge is a hinge") {
  Brick t0 = Brick::from_sizes(BoardShape(5, 3), {2, 3, 4});
  for (int flip = 1; flip <= 3; ++flip)
    for (int full = 1; full <= 3; ++full) {
      if (flip == full) continue;
      auto h = hinge(t0, flip, full);
      std::set<uint32_t> used{0, uint32_t{1} << (flip - 1),
                              (uint32_t{1} << (flip - 1)) | (uint32_t{1} << (full - 1)), 7};
      std::set<uint32_t> rest;
      for (uint32_t m = 0; m < 8; ++m)
        if (!used.count(m)) rest.insert(m);
      REQUIRE(rest.size() == 4);

      // some anchor + ordered axis pair walks the complement as a hinge chain
      bool found = false;
      for (uint32_t anchor : rest)
        for (int x = 0; x < 3 && !found; ++x)
          for (int y = 0; y < 3 && !found; ++y) {
            if (x == y) continue;
            uint32_t m1 = anchor ^ (uint32_t{1} << x);
            uint32_t m2 = m1 ^ (uint32_t{1} << y);
            uint32_t m3 = anchor ^ 7;
            found = rest.count(m1) && rest.count(m2) && rest.count(m3) &&
                    std::set<uint32_t>{anchor, m1, m2, m3} == rest;
          }
      CHECK(found);
    }
}

TEST_CASE("pairwise-large bricks have no empty layer") {
  SplitMix64 rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(3));  // 4..6
    Lsc l = random_latin_transform(cyclic_lsc(BoardShape(n, 3)), rng.next());
    // pick sizes with every pairwise sum above n
    std::vector<int> sizes(3);
    do {
      for (int a = 0; a < 3; ++a) sizes[a] = 1 + static_cast<int>(rng.below(n - 1));
    } while (sizes[0] + sizes[1] <= n || sizes[1] + sizes[2] <= n || sizes[0] + sizes[2] <= n);
    Brick t0 = Brick::from_sizes(l.shape(), sizes);
    for (int axis = 1; axis <= 3; ++axis)
      for (int z = t0.interval(axis).lo; z <= t0.interval(axis).hi; ++z) {
        std::vector<AxisInterval> iv(t0.intervals());
        iv[axis - 1] = {z, z};
        CHECK(rook_count(l, Brick(l.shape(), iv)) >= 1);
      }
  }
}

TEST_CASE("standard-density size scan") {
  // prime order: no real brick volume is divisible by n
  for (int n : {2, 3, 5, 7, 11, 13}) CHECK(standard_density_real_brick_sizes(n, 3).empty());
  // composite order has candidates
  CHECK(standard_density_real_brick_sizes(4, 2) ==
        std::vector<std::vector<int>>{{2, 2}});
  CHECK_FALSE(standard_density_real_brick_sizes(6, 3).empty());
}
