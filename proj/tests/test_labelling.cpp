#include "oracles.hpp"

#include "torusq/builders.hpp"
#include "torusq/labelling.hpp"

#include <doctest.h>

using namespace torusq;

namespace {

DecoratedQuotient make(FacePoset p, std::size_t d,
                       std::vector<std::pair<std::string, RealWeight>> labels) {
  DecoratedQuotient dq;
  dq.poset = std::move(p);
  dq.labelling.ambient_rank = d;
  for (auto& [id, w] : labels) dq.labelling.labels.emplace(id, w);
  return dq;
}

DecoratedQuotient cp2() {
  return make(simplex_poset(2), 2, {{"f0", {1, 0}}, {"f1", {0, 1}}, {"f2", {1, 1}}});
}

DecoratedQuotient cube() {
  return make(cube_poset(3), 3,
              {{"0**", {1, 0, 0}}, {"1**", {1, 0, 0}}, {"*0*", {0, 1, 0}},
               {"*1*", {0, 1, 0}}, {"**0", {0, 0, 1}}, {"**1", {0, 0, 1}}});
}

// Oracle: a set of rows extends to a basis iff its maximal minors have gcd 1.
bool minors_unimodular(const std::vector<LatticeVector>& rows, std::size_t d) {
  if (rows.size() > d) return false;
  if (rows.empty()) return true;
  oracle::Mat m;
  for (const auto& r : rows) {
    std::vector<oracle::i64> row;
    for (const auto& e : r) row.push_back(static_cast<oracle::i64>(e));
    m.push_back(row);
  }
  const auto f = oracle::invariant_factors(m);
  if (f.size() < rows.size()) return false;
  for (auto x : f)
    if (x != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("check_unimodular examples") {
  CHECK(check_unimodular(cp2()).unimodular());
  CHECK(check_unimodular(make(polygon_poset(4), 2,
                              {{"e0", {1, 0}}, {"e1", {0, 1}}, {"e2", {1, 0}}, {"e3", {0, 1}}}))
            .unimodular());
  const UnimodularityReport bad = check_unimodular(
      make(polygon_poset(4), 2, {{"e0", {1, 0}}, {"e1", {0, 1}}, {"e2", {1, 0}}, {"e3", {1, 2}}}));
  CHECK_FALSE(bad.unimodular());
  // e3 = (1,2) meets (1,0) at v2 (e2, e3) and v3 (e3, e0).
  REQUIRE(bad.failures.size() == 2);
  std::vector<std::string> ids{bad.failures[0].face_id, bad.failures[1].face_id};
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<std::string>{"v2", "v3"});
  CHECK(bad.failures[0].reason == "not extendable");
}

TEST_CASE("dependent and oversized supports") {
  const UnimodularityReport r =
      check_unimodular(make(polygon_poset(4), 2,
                            {{"e0", {1, 0}}, {"e1", {1, 0}}, {"e2", {1, 0}}, {"e3", {0, 1}}}));
  CHECK_FALSE(r.unimodular());
  CHECK(r.failures.front().reason == "dependent rows");
  const UnimodularityReport deep = check_unimodular(make(simplex_poset(2), 1, {{"f0", {1}}, {"f1", {1}}, {"f2", {1}}}));
  CHECK(deep.failures.front().reason == "depth exceeds rank");
}

TEST_CASE("labels must be total") {
  CHECK_THROWS_WITH_AS(check_unimodular(make(simplex_poset(2), 2, {{"f0", {1, 0}}, {"f1", {0, 1}}})),
                       doctest::Contains("unlabelled facet"), Error);
  CHECK_THROWS_AS(check_unimodular(make(interval_poset(), 2, {{"a", {1, 0}}, {"b", {0, 1}}, {"int", {1, 1}}})),
                  Error);
  CHECK_THROWS_AS(check_unimodular(make(interval_poset(), 2, {{"a", {1, 0}}, {"b", {1}}})), Error);
}

TEST_CASE("stabilizers") {
  const DecoratedQuotient dq = cp2();
  CHECK(stabilizer(dq, "int").rank() == 0);
  const Subtorus edge = stabilizer(dq, "f2");
  CHECK(edge.rank() == 1);
  CHECK(edge.contains(make_vector({1, 1})));
  CHECK(stabilizer(dq, "f0_2") == Subtorus::from_basis(IntegerMatrix::identity(2)));
  CHECK_THROWS_AS(stabilizer(dq, "nope"), Error);
}

TEST_CASE("fixed points") {
  CHECK(fixed_point_count(cube()) == 8);
  CHECK(fixed_point_count(make(interval_poset(), 1, {{"a", {1}}, {"b", {-1}}})) == 2);
  CHECK(fixed_point_count(make(circle_poset(), 3, {})) == 0);
  CHECK(fixed_point_count(cp2()) == 3);
}

TEST_CASE("stabilizer rank equals depth on unimodular data") {
  for (const DecoratedQuotient& dq : {cp2(), cube()})
    for (const auto& f : dq.poset.faces())
      CHECK(stabilizer(dq, f.id).rank() == static_cast<std::size_t>(f.depth));
}

TEST_CASE("check_unimodular agrees with the minor oracle and is GL-invariant") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> entry(-2, 2);
  const FacePoset shapes[] = {polygon_poset(4), simplex_poset(2), polygon_poset(5)};
  for (int it = 0; it < 200; ++it) {
    const FacePoset& p = shapes[it % 3];
    DecoratedQuotient dq;
    dq.poset = p;
    dq.labelling.ambient_rank = 2;
    for (auto f : p.facets()) {
      LatticeVector v;
      do {
        v = make_vector({entry(rng), entry(rng)});
      } while ((v[0] == 0 && v[1] == 0) || !is_primitive(v));
      dq.labelling.labels.emplace(p.face(f).id, RealWeight(v));
    }
    const UnimodularityReport r = check_unimodular(dq);
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::vector<LatticeVector> rows;
      for (auto s : p.support(i)) rows.push_back(dq.labelling.labels.at(p.face(s).id).rep());
      const bool oracle_ok = minors_unimodular(rows, 2);
      const bool reported = std::any_of(r.failures.begin(), r.failures.end(),
                                        [&](const FaceFailure& f) { return f.face_id == p.face(i).id; });
      CHECK(oracle_ok == !reported);
    }
    const IntegerMatrix g = oracle::random_unimodular(rng, 2);
    CHECK(check_unimodular(relabel(dq, g)).failures == r.failures);
  }
}
