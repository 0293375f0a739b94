// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include "oracles.hpp"

#include "torusq/builders.hpp"
#include "torusq/classify.hpp"
#include "torusq/cutblow.hpp"
#include "torusq/io.hpp"
#include "torusq/models.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace torusq;

namespace {

// Pinned tolerances.
constexpr double kDescentTol = 1e-9;
constexpr double kProjectionTol = 1e-12;
constexpr double kCorruptMin = 1e-3;
constexpr std::size_t kModelSamples = 1000;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::string failure;
  std::size_t checks = 0;

  void require(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      failure = what;
    }
  }
};

std::string corpus(const std::string& name) { return std::string(TORUSQ_CORPUS_DIR) + "/" + name; }

std::vector<std::filesystem::path> sorted_dir(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

long long mod_inverse(long long w, long long k) {
  for (long long x = 1; x < k; ++x)
    if ((w * x) % k == 1) return x;
  return -1;
}

LatticeVector vec(long long a, long long b) { return make_vector({a, b}); }

// ---------------------------------------------------------------------------

void one_d_families(Outcome& o) {
  const std::vector<RealWeight> none;
  o.require(classify_1d(OneDTopology::S1, none, 2).kind == OneDKind::FreeCircle, "S1");
  o.require(classify_1d(OneDTopology::R, none, 2).kind == OneDKind::FreeLine, "R");
  for (int s : {1, -1}) {
    const std::vector<RealWeight> half{RealWeight(vec(s, 0))};
    o.require(classify_1d(OneDTopology::HalfLine, half, 2).kind == OneDKind::HalfOpen, "half line");
    for (int t : {1, -1}) {
      const std::vector<RealWeight> eq{RealWeight(vec(s, 0)), RealWeight(vec(t, 0))};
      o.require(classify_1d(OneDTopology::Interval, eq, 2).kind == OneDKind::TwoEndsEqual, "equal ends");
      const std::vector<RealWeight> basis{RealWeight(vec(s, 0)), RealWeight(vec(0, t))};
      o.require(classify_1d(OneDTopology::Interval, basis, 2).kind == OneDKind::TwoEndsBasis, "basis ends");
    }
  }
  std::size_t lens = 0;
  for (long long k = 1; k <= 10; ++k)
    for (long long w = 1; w <= k; ++w) {
      if (std::gcd(w, k) != 1) continue;
      for (int s : {1, -1})
        for (int t : {1, -1}) {
          const std::vector<RealWeight> labels{RealWeight(vec(s, 0)), RealWeight(vec(-t * w, t * k))};
          const OneDFamily f = classify_1d(OneDTopology::Interval, labels, 2);
          std::ostringstream tag;
          tag << "k=" << k << " w=" << w;
          if (k == 1) {
            o.require(f.kind == OneDKind::TwoEndsBasis, tag.str());
            continue;
          }
          ++lens;
          o.require(f.kind == OneDKind::TwoEndsLens, tag.str() + " family");
          o.require(f.k == k, tag.str() + " k");
          const long long inv = mod_inverse(w, k);
          const long long expect = std::min({w, k - w, inv, k - inv});
          o.require(f.w == expect, tag.str() + " canonical w");
          o.require(std::find(f.w_class.begin(), f.w_class.end(), Integer(w)) != f.w_class.end(),
                    tag.str() + " w in class");
        }
    }
  o.detail << lens << " lens decorations";
}

void trichotomy(Outcome& o) {
  const oracle::PairOracle oracle_(10);
  std::vector<std::array<oracle::i64, 2>> prims;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      if (oracle::primitive(a, b)) prims.push_back({a, b});
  std::size_t pairs = 0;
  for (const auto& a : prims)
    for (const auto& b : prims) {
      ++pairs;
      const RealWeight wa(vec(a[0], a[1])), wb(vec(b[0], b[1]));
      for (bool swap : {false, true}) {
        const oracle::PairOrbit orb = oracle_.orbit(a, b, swap);
        const TrichotomyResult t = swap ? canonical_pair_form(wa, wb, true) : classify_primitive_pair(wa, wb);
        std::ostringstream tag;
        tag << "(" << a[0] << "," << a[1] << ") (" << b[0] << "," << b[1] << ")" << (swap ? " swap" : "");
        const int kind = t.pair_case == PairCase::EqualLine ? 0 : t.pair_case == PairCase::UnimodularPair ? 1 : 2;
        o.require(kind == orb.kind, tag.str() + " case");
        if (kind != 2) continue;
        o.require(t.k == orb.k, tag.str() + " k");
        o.require(t.w == *orb.w.begin(), tag.str() + " w");
      }
    }
  o.detail << pairs << " ordered pairs, " << oracle_.matrix_count() << " oracle matrices";
}

bool divides(const Integer& a, const Integer& b) { return a != 0 ? b % a == 0 : b == 0; }

void snf_properties(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 6);
  std::size_t extend_cases = 0;
  for (int it = 0; it < 10000; ++it) {
    const std::size_t r = dim(rng), c = dim(rng);
    const oracle::Mat m = oracle::random_mat(rng, r, c, 20);
    const IntegerMatrix a = oracle::from_mat(m, c);
    const SNFResult s = snf(a);
    std::ostringstream tag;
    tag << "matrix " << it;
    o.require(s.U * a * s.V == s.S, tag.str() + " UAV = S");
    const Integer du = determinant(s.U), dv = determinant(s.V);
    o.require((du == 1 || du == -1) && (dv == 1 || dv == -1), tag.str() + " unimodular");
    bool diagonal = true;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j && s.S(i, j) != 0) diagonal = false;
    o.require(diagonal, tag.str() + " diagonal");
    const auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) o.require(divides(f[i], f[i + 1]), tag.str() + " chain");
    const auto expect = oracle::invariant_factors(m);
    bool same = f.size() == expect.size();
    for (std::size_t i = 0; same && i < f.size(); ++i) same = f[i] == Integer(static_cast<long long>(expect[i]));
    o.require(same, tag.str() + " determinantal divisors");

    if (r <= c) {
      ++extend_cases;
      const bool all_one = expect.size() == r &&
                           std::all_of(expect.begin(), expect.end(), [](oracle::i128 x) { return x == 1; });
      o.require(is_extendable(a) == all_one, tag.str() + " is_extendable");
      bool extended = false;
      try {
        const IntegerMatrix b = extend_to_basis(a);
        extended = true;
        const Integer db = determinant(b);
        o.require(db == 1 || db == -1, tag.str() + " extension unimodular");
        for (std::size_t i = 0; i < r; ++i) o.require(b.row(i) == a.row(i), tag.str() + " extension keeps rows");
      } catch (const Error&) {
      }
      o.require(extended == all_one, tag.str() + " extend_to_basis");
    }
  }
  o.detail << "10000 matrices, " << extend_cases << " extension cases";
}

void unimodularity_invariance(Outcome& o) {
  struct Shape {
    FacePoset poset;
    std::size_t d;
  };
  const std::vector<Shape> shapes = {
      {polygon_poset(3), 2}, {polygon_poset(4), 2}, {polygon_poset(5), 2}, {polygon_poset(6), 2},
      {simplex_poset(3), 3}, {cube_poset(3), 3}, {product_poset(polygon_poset(4), interval_poset()), 3},
      {interval_poset(), 2}, {halfline_poset(), 3}, {polygon_poset(4), 3}};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> e(-2, 2);
  std::size_t failing = 0;
  for (int it = 0; it < 1000; ++it) {
    const Shape& sh = shapes[it % shapes.size()];
    DecoratedQuotient dq;
    dq.poset = sh.poset;
    dq.labelling.ambient_rank = sh.d;
    for (auto f : sh.poset.facets()) {
      LatticeVector v(sh.d);
      do
        for (auto& x : v) x = e(rng);
      while (content(v) != 1);
      dq.labelling.labels.emplace(sh.poset.face(f).id, RealWeight(v));
    }
    const IntegerMatrix g = oracle::random_unimodular(rng, sh.d, 16);
    const UnimodularityReport before = check_unimodular(dq);
    const UnimodularityReport after = check_unimodular(relabel(dq, g));
    if (!before.unimodular()) ++failing;
    o.require(before.failures == after.failures, "triple " + std::to_string(it));
  }
  o.detail << "1000 triples, " << failing << " non-unimodular";
}

void cohomology(Outcome& o) {
  const DecoratedQuotient tetra = read_decorated(load_json_file(corpus("tetra_boundary.json")));
  const H2Structure ht = h2(*tetra.complex, 2);
  o.require(ht.free_rank == 2 && ht.torsion.empty(), "tetrahedron boundary");
  const DecoratedQuotient rp = read_decorated(load_json_file(corpus("rp2.json")));
  const H2Structure hr = h2(*rp.complex, 1);
  o.require(hr.free_rank == 0 && hr.torsion == std::vector<Integer>{2}, "RP^2");
  o.detail << "S^2: rank " << ht.free_rank << "; RP^2: torsion [" << (hr.torsion.empty() ? Integer(0) : hr.torsion[0]) << "]";

  std::size_t contractible = 0;
  for (const char* name : {"disk.json", "ball.json"}) {
    const DecoratedQuotient dq = read_decorated(load_json_file(corpus(name)));
    const H2Structure h = h2(*dq.complex, dq.labelling.ambient_rank);
    o.require(h.free_rank == 0 && h.torsion.empty(), name);
    ++contractible;
  }
  for (const SimplicialComplex& k : {cone(*tetra.complex), cone(*rp.complex), SimplicialComplex(4, {{0, 1, 2, 3}}),
                                     SimplicialComplex(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}})}) {
    const H2Structure h = h2(k, 2);
    o.require(h.free_rank == 0 && h.torsion.empty(), "contractible complex");
    ++contractible;
  }
  o.detail << "; " << contractible << " contractible";
}

void round_trip(Outcome& o) {
  std::size_t n = 0;
  for (const auto& path : sorted_dir(TORUSQ_CORPUS_DIR)) {
    const json doc = load_json_file(path.string());
    if (document_kind(doc) != "decorated_quotient") continue;
    const DecoratedQuotient dq = read_decorated(doc);
    if (!check_unimodular(dq).unimodular()) continue;  // negative fixtures
    o.require(blowup(cut(dq), dq.poset) == dq, path.filename().string());
    ++n;
  }
  o.require(n >= 10, "at least 10 fixtures");
  const DecoratedQuotient cube = read_decorated(load_json_file(corpus("cube.json")));
  const std::size_t fp = fixed_point_count(cube);
  o.require(fp == 8, "cube fixed points");
  o.detail << n << " fixtures, cube fixed points " << fp;
}

void model_suite(Outcome& o) {
  VerifyOptions opts;
  opts.samples = kModelSamples;
  double worst = 0, worst_projection = 0, min_h = std::numeric_limits<double>::infinity(), min_corrupt = 1e300;
  std::size_t specs = 0, hadamard = 0;
  for (const auto& path : sorted_dir(corpus("models"))) {
    const ModelMapSpec spec = read_model_spec(load_json_file(path.string()));
    const std::string name = path.filename().string();
    const DescentReport r = verify_descent(spec, opts);
    worst = std::max(worst, r.max_residual());
    worst_projection = std::max(worst_projection, r.projection);
    o.require(r.max_residual() < kDescentTol, name + " descent");
    o.require(r.projection < kProjectionTol, name + " projection");
    for (std::size_t j = 0; j < spec.shape.k; ++j) {
      const HadamardReport h = hadamard_positivity(spec, j, opts);
      o.require(h.passed() && h.min_estimate > 0, name + " hadamard");
      min_h = std::min(min_h, h.min_estimate);
      ++hadamard;
    }
    const DescentReport bad = verify_descent(corrupt_spec(spec, 0), opts);
    o.require(!bad.passed() && bad.max_residual() > kCorruptMin, name + " corrupted control");
    min_corrupt = std::min(min_corrupt, bad.max_residual());
    ++specs;
  }
  o.require(specs >= 20, "at least 20 specs");
  o.require(all_model_shapes().size() == specs, "every shape covered");
  o.detail << specs << " specs, max residual " << worst << ", max projection " << worst_projection << ", "
           << hadamard << " hadamard checks (min " << min_h << "), smallest control residual " << min_corrupt;
}

void completeness(Outcome& o) {
  // Real weights: primitive vectors up to sign.
  std::vector<LatticeVector> weights;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      if (oracle::primitive(a, b) && (a > 0 || (a == 0 && b > 0))) weights.push_back(vec(a, b));
  std::vector<DecoratedQuotient> dqs;
  std::vector<OneDFamily> families;
  for (const auto& a : weights)
    for (const auto& b : weights) {
      const RealWeight labels[] = {RealWeight(a), RealWeight(b)};
      dqs.push_back(one_d_quotient(OneDTopology::Interval, labels, 2));
      families.push_back(classify_1d(dqs.back()));
    }
  std::size_t found = 0;
  for (std::size_t i = 0; i < dqs.size(); ++i)
    for (std::size_t j = 0; j < dqs.size(); ++j) {
      const IsoResult r = iso_up_to_torus_automorphism(dqs[i], dqs[j]);
      const bool same = families[i] == families[j];
      if (r.verdict == IsoVerdict::Found) ++found;
      o.require(r.verdict != IsoVerdict::Inconclusive, "inconclusive at " + std::to_string(i) + "," + std::to_string(j));
      o.require((r.verdict == IsoVerdict::Found) == same, "pair " + std::to_string(i) + "," + std::to_string(j));
    }
  o.detail << dqs.size() << " decorations, " << dqs.size() * dqs.size() << " pairs, " << found << " isomorphic";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"one-dimensional families", one_d_families},
      {"pair trichotomy vs orbit oracle", trichotomy},
      {"Smith form and basis extension", snf_properties},
      {"unimodularity is GL-invariant", unimodularity_invariance},
      {"degree-2 cohomology", cohomology},
      {"cut/blowup round trip", round_trip},
      {"model-map suite", model_suite},
      {"1-d classification completeness", completeness},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string detail = o.detail.str();
    if (!o.failure.empty()) detail += " [first failure: " + o.failure + "]";
    std::printf("%s %zu %-34s %8zu checks %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.checks, secs, detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria failed, %.1fs total\n", failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
