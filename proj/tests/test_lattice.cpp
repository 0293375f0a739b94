#include "oracles.hpp"

#include "torusq/lattice.hpp"

#include <doctest.h>

using namespace torusq;

namespace {

bool is_diagonal_chain(const IntegerMatrix& s) {
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (i != j && s(i, j) != 0) return false;
      if (i == j) {
        if (s(i, i) < 0) return false;
        if (s(i, i) == 0) {
          zero_seen = true;
        } else {
          if (zero_seen || s(i, i) % prev != 0) return false;
          prev = s(i, i);
        }
      }
    }
  return true;
}

bool unimodular(const IntegerMatrix& m) {
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("is_primitive") {
  CHECK(is_primitive(make_vector({1, 0, 0})));
  CHECK_FALSE(is_primitive(make_vector({2, 4})));
  CHECK(is_primitive(make_vector({-3, 5})));
  CHECK_THROWS_WITH_AS(is_primitive(make_vector({0, 0})), "zero vector has no primitivity class",
                       Error);
}

TEST_CASE("snf examples") {
  CHECK(snf(IntegerMatrix{{1, 0}, {0, 1}}).S == (IntegerMatrix{{1, 0}, {0, 1}}));
  const IntegerMatrix a{{2, 4}, {6, 8}};
  const SNFResult r = snf(a);
  CHECK(r.S == (IntegerMatrix{{2, 0}, {0, 4}}));
  CHECK(r.U * a * r.V == r.S);
  CHECK(snf(IntegerMatrix{{1, 0}, {1, 2}}).S == (IntegerMatrix{{1, 0}, {0, 2}}));
  CHECK(snf(IntegerMatrix(0, 3)).S.rows() == 0);
}

TEST_CASE("snf is deterministic") {
  const IntegerMatrix a{{4, 6, 2}, {3, -9, 12}};
  const SNFResult r1 = snf(a), r2 = snf(a);
  CHECK(r1.U == r2.U);
  CHECK(r1.V == r2.V);
}

TEST_CASE("snf on random matrices against determinantal divisors") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int it = 0; it < 300; ++it) {
    const std::size_t rows = size(rng), cols = size(rng);
    const auto m = oracle::random_mat(rng, rows, cols, 20);
    const IntegerMatrix a = oracle::from_mat(m, cols);
    const SNFResult r = snf(a);
    REQUIRE(r.U * a * r.V == r.S);
    CHECK(unimodular(r.U));
    CHECK(unimodular(r.V));
    CHECK(is_diagonal_chain(r.S));
    const auto expected = oracle::invariant_factors(m);
    const auto got = r.invariant_factors();
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == Integer(static_cast<long long>(expected[i])));
  }
}

TEST_CASE("snf on rank-deficient matrices") {
  const IntegerMatrix a{{1, 2, 3}, {2, 4, 6}, {1, 1, 1}};
  const SNFResult r = snf(a);
  CHECK(r.U * a * r.V == r.S);
  CHECK(r.invariant_factors().size() == 2);
  CHECK(rank(a) == 2);
}

TEST_CASE("hermite normal form is a canonical basis") {
  const IntegerMatrix a{{2, 4, 0}, {0, 3, 1}};
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    const IntegerMatrix g = oracle::random_unimodular(rng, 2);
    CHECK(hermite_normal_form(g * a) == hermite_normal_form(a));
  }
}

TEST_CASE("extend_to_basis examples") {
  CHECK(extend_to_basis(IntegerMatrix{{1, 0}}) == (IntegerMatrix{{1, 0}, {0, 1}}));
  const IntegerMatrix b = extend_to_basis(IntegerMatrix{{1, 2}});
  CHECK(b.row(0) == make_vector({1, 2}));
  CHECK(unimodular(b));
  CHECK_THROWS_WITH_AS(extend_to_basis(IntegerMatrix{{1, 0}, {1, 2}}), "not extendable", Error);
  CHECK_THROWS_WITH_AS(extend_to_basis(IntegerMatrix{{1, 2}, {2, 4}}), "dependent rows", Error);
}

TEST_CASE("extend_to_basis agrees with brute force in Z^2") {
  // k = 1: a second row with entries in [-3, 3] completing (a, b).
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      if (a == 0 && b == 0) continue;
      bool brute = false;
      for (int c = -3; c <= 3 && !brute; ++c)
        for (int d = -3; d <= 3 && !brute; ++d) brute = a * d - b * c == 1 || a * d - b * c == -1;
      const IntegerMatrix rows{{a, b}};
      CHECK(is_extendable(rows) == brute);
      if (brute) {
        const IntegerMatrix e = extend_to_basis(rows);
        CHECK(e.row(0) == rows.row(0));
        CHECK(unimodular(e));
      } else {
        CHECK_THROWS_AS(extend_to_basis(rows), Error);
      }
    }
}

TEST_CASE("extend_to_basis agrees with brute force in Z^3") {
  // k = 1: two completing rows with entries in [-3, 3].
  std::vector<std::array<int, 3>> small;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) small.push_back({a, b, c});
  auto cross = [](const std::array<int, 3>& u, const std::array<int, 3>& v) {
    return std::array<int, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                              u[0] * v[1] - u[1] * v[0]};
  };
  auto dot = [](const std::array<int, 3>& u, const std::array<int, 3>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  };
  for (const auto& v : small) {
    if (v == std::array<int, 3>{0, 0, 0}) continue;
    bool brute = false;
    for (const auto& r1 : small) {
      for (const auto& r2 : small) {
        const int det = dot(v, cross(r1, r2));
        if (det == 1 || det == -1) {
          brute = true;
          break;
        }
      }
      if (brute) break;
    }
    const IntegerMatrix rows{{v[0], v[1], v[2]}};
    CHECK(is_extendable(rows) == brute);
  }
  // k = 2: a completing third row with entries in [-18, 18], enough for
  // any cross product of rows with entries in [-3, 3].
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (int it = 0; it < 300; ++it) {
    const auto u = small[pick(rng)], v = small[pick(rng)];
    const auto c = cross(u, v);
    if (c == std::array<int, 3>{0, 0, 0}) continue;
    bool brute = false;
    for (int a = -18; a <= 18 && !brute; ++a)
      for (int b = -18; b <= 18 && !brute; ++b)
        for (int d = -18; d <= 18 && !brute; ++d) {
          const int det = c[0] * a + c[1] * b + c[2] * d;
          brute = det == 1 || det == -1;
        }
    const IntegerMatrix rows{{u[0], u[1], u[2]}, {v[0], v[1], v[2]}};
    CHECK(is_extendable(rows) == brute);
    if (brute) {
      const IntegerMatrix e = extend_to_basis(rows);
      CHECK(e.row_block(0, 2) == rows);
      CHECK(unimodular(e));
    }
  }
}

TEST_CASE("saturation") {
  CHECK(saturation(IntegerMatrix{{1, 0}}).basis() == (IntegerMatrix{{1, 0}}));
  CHECK(saturation(IntegerMatrix{{2, 0}}).basis() == (IntegerMatrix{{1, 0}}));
  const Subtorus plane = saturation(IntegerMatrix{{1, 1, 0}, {1, -1, 0}});
  CHECK(plane == Subtorus::from_basis(IntegerMatrix{{1, 0, 0}, {0, 1, 0}}));
  CHECK(saturation(plane.basis()) == plane);
  CHECK(sublattice_index(IntegerMatrix{{1, 1, 0}, {1, -1, 0}}, plane.basis()) == 2);
  CHECK_THROWS_AS(saturation(IntegerMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("saturation is idempotent on random input") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    const auto m = oracle::random_mat(rng, 2, 4, 6);
    const IntegerMatrix rows = oracle::from_mat(m, 4);
    if (rank(rows) < 2) continue;
    const Subtorus s = saturation(rows);
    CHECK(saturation(s.basis()) == s);
    const Integer index = sublattice_index(rows, s.basis());
    // Index equals the gcd of the 2x2 minors.
    CHECK(index == Integer(static_cast<long long>(oracle::invariant_factors(m)[0] *
                                                  oracle::invariant_factors(m)[1])));
  }
}

TEST_CASE("sublattice_index") {
  CHECK(sublattice_index(IntegerMatrix{{1, 0}, {0, 1}}, IntegerMatrix{{1, 0}, {0, 1}}) == 1);
  CHECK(sublattice_index(IntegerMatrix{{1, 0}, {1, 2}}, IntegerMatrix{{1, 0}, {0, 1}}) == 2);
  CHECK(sublattice_index(IntegerMatrix{{1, 0}, {-3, 5}}, IntegerMatrix{{1, 0}, {0, 1}}) == 5);
  CHECK_THROWS_WITH_AS(sublattice_index(IntegerMatrix{{1, 0}}, IntegerMatrix{{2, 0}}),
                       "not a sublattice", Error);
}

TEST_CASE("kernel_subtorus") {
  const Subtorus k = kernel_subtorus(IntegerMatrix{{1, 0, -1}, {0, 1, -1}});
  CHECK(k.rank() == 1);
  CHECK(k.contains(make_vector({1, 1, 1})));
  CHECK(kernel_subtorus(IntegerMatrix::identity(3)).rank() == 0);
  const Subtorus k2 = kernel_subtorus(IntegerMatrix{{2, -2}});
  CHECK(k2.basis() == (IntegerMatrix{{1, 1}}));
}

TEST_CASE("kernel_subtorus on random matrices") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    const auto m = oracle::random_mat(rng, 2, 5, 4);
    const IntegerMatrix lambda = oracle::from_mat(m, 5);
    const Subtorus k = kernel_subtorus(lambda);
    CHECK(k.rank() == 5 - rank(lambda));
    for (std::size_t i = 0; i < k.rank(); ++i)
      for (const auto& e : lambda * k.basis().row(i)) CHECK(e == 0);
    CHECK(saturation(k.basis()) == k);
  }
}

TEST_CASE("RealWeight canonical sign") {
  CHECK(RealWeight{-1, 2}.rep() == make_vector({1, -2}));
  CHECK(RealWeight{0, -3, 1}.rep() == make_vector({0, 3, -1}));
  CHECK(RealWeight{1, 0} == RealWeight{-1, 0});
  CHECK_THROWS_AS((RealWeight{2, 4}), Error);
}

TEST_CASE("classify_primitive_pair examples") {
  CHECK(classify_primitive_pair({1, 0}, {1, 0}).pair_case == PairCase::EqualLine);
  CHECK(classify_primitive_pair({1, 0}, {0, 1}).pair_case == PairCase::UnimodularPair);
  const TrichotomyResult t = classify_primitive_pair({1, 0}, {1, 2});
  CHECK(t.pair_case == PairCase::IndexPair);
  CHECK(t.k == 2);
  CHECK(t.w == 1);
  CHECK(classify_primitive_pair(RealWeight{1}, RealWeight{-1}).pair_case == PairCase::EqualLine);
}

TEST_CASE("classify_primitive_pair witness realizes the normal form") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    const std::size_t d = 2 + it % 3;
    auto m = oracle::random_mat(rng, 2, d, 5);
    const IntegerMatrix rows = oracle::from_mat(m, d);
    if (content(rows.row(0)) != 1 || content(rows.row(1)) != 1) continue;
    const RealWeight a(rows.row(0)), b(rows.row(1));
    const TrichotomyResult t = classify_primitive_pair(a, b);
    CHECK(unimodular(t.witness));
    LatticeVector u = a.rep(), v = b.rep();
    for (auto& e : u) e *= t.sign1;
    for (auto& e : v) e *= t.sign2;
    LatticeVector e1(d), target(d);
    e1[0] = 1;
    CHECK(t.witness * u == e1);
    if (t.pair_case == PairCase::UnimodularPair) {
      target[1] = 1;
      CHECK(t.witness * v == target);
    } else if (t.pair_case == PairCase::IndexPair) {
      target[0] = -t.w;
      target[1] = t.k;
      CHECK(t.witness * v == target);
      CHECK(gcd(t.w, t.k) == 1);
      CHECK(t.w >= 1);
      CHECK(2 * t.w <= t.k);
    }
  }
}

TEST_CASE("classify_primitive_pair is invariant under signs and GL(d,Z)") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    const std::size_t d = 2 + it % 2;
    const auto m = oracle::random_mat(rng, 2, d, 5);
    const IntegerMatrix rows = oracle::from_mat(m, d);
    if (content(rows.row(0)) != 1 || content(rows.row(1)) != 1) continue;
    const RealWeight a(rows.row(0)), b(rows.row(1));
    const TrichotomyResult base = classify_primitive_pair(a, b);
    const IntegerMatrix g = oracle::random_unimodular(rng, d);
    const TrichotomyResult moved = classify_primitive_pair(apply(g, a), apply(g, b));
    CHECK(moved.pair_case == base.pair_case);
    CHECK(moved.k == base.k);
    CHECK(moved.w == base.w);
    LatticeVector na = a.rep();
    for (auto& e : na) e = -e;
    const TrichotomyResult flipped = classify_primitive_pair(RealWeight(na), b);
    CHECK(flipped.k == base.k);
    CHECK(flipped.w == base.w);
  }
}

TEST_CASE("canonical_pair_form") {
  const TrichotomyResult t = canonical_pair_form({1, 0}, {-1, -2}, true);
  CHECK(t.pair_case == PairCase::IndexPair);
  CHECK(t.k == 2);
  CHECK(t.w == 1);
  CHECK(canonical_pair_form({1, 0}, {0, 1}, true).pair_case == PairCase::UnimodularPair);

  // (1,0),(-2,5) and (1,0),(-3,5) against the bounded orbit oracle.
  const oracle::PairOracle o(10);
  const auto o1 = o.orbit({1, 0}, {-2, 5}, true);
  const auto o2 = o.orbit({1, 0}, {-3, 5}, true);
  const TrichotomyResult c1 = canonical_pair_form({1, 0}, {-2, 5}, true);
  const TrichotomyResult c2 = canonical_pair_form({1, 0}, {-3, 5}, true);
  CHECK(c1.k == 5);
  CHECK(c2.k == 5);
  CHECK(c1.w == Integer(*o1.w.begin()));
  CHECK(c2.w == Integer(*o2.w.begin()));
  CHECK((o1.w == o2.w) == (c1.w == c2.w));
}

TEST_CASE("lens parameter orbit") {
  CHECK(lens_parameter_orbit(5, 2, false) == std::vector<Integer>{2, 3});
  CHECK(lens_parameter_orbit(5, 2, true) == std::vector<Integer>{2, 3});
  CHECK(lens_parameter_orbit(7, 2, true) == std::vector<Integer>{2, 3, 4, 5});
  CHECK(lens_parameter_orbit(7, 2, false) == std::vector<Integer>{2, 5});
}
