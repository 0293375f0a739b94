#include "oracles.hpp"

#include "torusq/cohomology.hpp"

#include <doctest.h>

#include <map>

using namespace torusq;

namespace {

SimplicialComplex tetra_boundary() {
  return SimplicialComplex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Six-vertex real projective plane.
SimplicialComplex rp2() {
  return SimplicialComplex(6, {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                               {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
}

bool zero(const IntegerMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

// H^2 oracle from determinantal divisors: cokernel of delta_1 restricted to
// cocycles. Free rank = #triangles - rank d2 - rank d1; torsion = factors of d1.
std::pair<std::size_t, std::vector<oracle::i128>> h2_oracle(const SimplicialComplex& k) {
  const IntegerMatrix d1 = coboundary_matrix(k, 1);
  const IntegerMatrix d2 = coboundary_matrix(k, 2);
  const auto f1 = oracle::invariant_factors(oracle::to_mat(d1));
  const auto f2 = oracle::invariant_factors(oracle::to_mat(d2));
  std::vector<oracle::i128> torsion;
  for (auto f : f1)
    if (f > 1) torsion.push_back(f);
  return {k.simplices(2).size() - f2.size() - f1.size(), torsion};
}

}  // namespace

TEST_CASE("complex construction") {
  const SimplicialComplex t = tetra_boundary();
  CHECK(t.simplices(0).size() == 4);
  CHECK(t.simplices(1).size() == 6);
  CHECK(t.simplices(2).size() == 4);
  CHECK(t.dimension() == 2);
  CHECK_THROWS_AS(SimplicialComplex(3, {{0, 3}}), Error);
  CHECK_THROWS_AS(SimplicialComplex(3, {{0, 0}}), Error);
  CHECK(SimplicialComplex(3, {{2, 0, 1}}) == SimplicialComplex(3, {{0, 1, 2}}));
}

TEST_CASE("rp2 triangulation is a closed surface") {
  const SimplicialComplex k = rp2();
  CHECK(k.simplices(1).size() == 15);
  std::map<Simplex, int> count;
  for (const auto& t : k.simplices(2))
    for (std::size_t i = 0; i < 3; ++i) {
      Simplex e = t;
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
      ++count[e];
    }
  for (const auto& [e, c] : count) CHECK(c == 2);
  CHECK(count.size() == 15);
}

TEST_CASE("coboundary matrices") {
  const SimplicialComplex tri(3, {{0, 1, 2}});
  CHECK(coboundary_matrix(tri, 1).rows() == 1);
  const auto [d1, d2] = coboundary_matrices(tetra_boundary());
  CHECK(d1.rows() == 6);
  CHECK(d1.cols() == 4);
  CHECK(d2.rows() == 4);
  CHECK(d2.cols() == 6);
  CHECK(zero(d2 * d1));
  const SimplicialComplex path(3, {{0, 1}, {1, 2}});
  CHECK(coboundary_matrix(path, 1).rows() == 0);
}

TEST_CASE("d2 d1 = 0 on assorted complexes") {
  for (const SimplicialComplex& k : {tetra_boundary(), rp2(), cone(rp2()),
                                     SimplicialComplex(5, {{0, 1, 2, 3, 4}})}) {
    const auto [d1, d2] = coboundary_matrices(k);
    CHECK(zero(d2 * d1));
    CHECK(zero(coboundary_matrix(k, 2) * d2));
  }
}

TEST_CASE("h2 examples") {
  CHECK(h2(SimplicialComplex(3, {{0, 1, 2}}), 3) == H2Structure{0, {}});
  CHECK(h2(tetra_boundary(), 2) == H2Structure{2, {}});
  CHECK(h2(tetra_boundary(), 1) == H2Structure{1, {}});
  CHECK(h2(rp2(), 1) == H2Structure{0, {2}});
  CHECK(h2(rp2(), 2) == H2Structure{0, {2, 2}});
}

TEST_CASE("h2 agrees with the determinantal oracle") {
  for (const SimplicialComplex& k : {tetra_boundary(), rp2(), cone(tetra_boundary()),
                                     SimplicialComplex(4, {{0, 1, 2}, {1, 2, 3}})}) {
    const auto [free_rank, torsion] = h2_oracle(k);
    const H2Structure h = h2(k, 1);
    CHECK(h.free_rank == free_rank);
    REQUIRE(h.torsion.size() == torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i)
      CHECK(h.torsion[i] == Integer(static_cast<long long>(torsion[i])));
  }
}

TEST_CASE("cones are acyclic in degree 2") {
  for (const SimplicialComplex& k : {tetra_boundary(), rp2(), SimplicialComplex(2, {{0, 1}})}) {
    const H2Structure h = h2(cone(k), 2);
    CHECK(h.free_rank == 0);
    CHECK(h.torsion.empty());
  }
}

TEST_CASE("class_equal") {
  const SimplicialComplex s2 = tetra_boundary();
  const Cochain2 gen = Cochain2::from_oriented(s2, 1, {{{0, 1, 2}, make_vector({1})}});
  const Cochain2 zero_c(4, 1);
  CHECK(class_equal(s2, gen, gen));
  CHECK_FALSE(class_equal(s2, gen, zero_c));
  // Any single triangle, either orientation-consistent sign, generates.
  const Cochain2 other = Cochain2::from_oriented(s2, 1, {{{0, 1, 3}, make_vector({-1})}});
  CHECK(class_equal(s2, gen, other));

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int it = 0; it < 20; ++it) {
    std::vector<LatticeVector> b;
    for (std::size_t i = 0; i < s2.simplices(1).size(); ++i) b.push_back(make_vector({e(rng), e(rng)}));
    const Cochain2 c = Cochain2::from_oriented(s2, 2, {{{0, 1, 2}, make_vector({e(rng), e(rng)})}});
    Cochain2 shifted = c - (-coboundary_of(s2, b));
    CHECK(class_equal(s2, c, shifted));
  }

  const SimplicialComplex disk(3, {{0, 1, 2}});
  CHECK(class_equal(disk, Cochain2::from_oriented(disk, 1, {{{0, 1, 2}, make_vector({3})}}),
                    Cochain2(1, 1)));
}

TEST_CASE("class_equal on torsion") {
  const SimplicialComplex p = rp2();
  // A single triangle carries the order-two class; twice it is trivial.
  const Cochain2 c = Cochain2::from_oriented(p, 1, {{{0, 1, 2}, make_vector({1})}});
  const Cochain2 zero_c(p.simplices(2).size(), 1);
  CHECK_FALSE(class_equal(p, c, zero_c));
  CHECK(class_equal(p, c - (-c), zero_c));
}

TEST_CASE("class_equal rejects non-cocycles") {
  const SimplicialComplex solid(4, {{0, 1, 2, 3}});
  const Cochain2 c = Cochain2::from_oriented(solid, 1, {{{0, 1, 2}, make_vector({1})}});
  CHECK_THROWS_WITH_AS(class_equal(solid, c, c), "not closed", Error);
}

TEST_CASE("pullback") {
  const SimplicialComplex s2 = tetra_boundary();
  const Cochain2 gen = Cochain2::from_oriented(s2, 1, {{{0, 1, 2}, make_vector({1})}});
  CHECK(pullback(s2, s2, {0, 1, 2, 3}, gen) == gen);
  // Swapping two vertices reverses orientation.
  const Cochain2 swapped = pullback(s2, s2, {1, 0, 2, 3}, gen);
  CHECK(class_equal(s2, swapped, -gen));
  CHECK_FALSE(class_equal(s2, swapped, gen));
  // Collapse to a point.
  const SimplicialComplex point(1, {});
  const Cochain2 none(0, 1);
  CHECK(pullback(s2, point, {0, 0, 0, 0}, none).is_zero());
  CHECK_THROWS_AS(pullback(SimplicialComplex(2, {{0, 1}}), SimplicialComplex(3, {{0, 1}}), {0, 2},
                           Cochain2(0, 1)),
                  Error);
}

TEST_CASE("pullback preserves cohomologous pairs") {
  const SimplicialComplex s2 = tetra_boundary();
  const Cochain2 a = Cochain2::from_oriented(s2, 1, {{{0, 1, 2}, make_vector({2})}});
  const Cochain2 b = Cochain2::from_oriented(s2, 1, {{{1, 2, 3}, make_vector({-2})}});
  REQUIRE(class_equal(s2, a, b));
  const std::vector<std::size_t> rot{1, 2, 3, 0};
  CHECK(class_equal(s2, pullback(s2, s2, rot, a), pullback(s2, s2, rot, b)));
}
