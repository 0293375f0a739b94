#include "torusq/cohomology.hpp"

#include <algorithm>
#include <set>

namespace torusq {

namespace {

// Sorts in place and returns the permutation sign; 0 on a repeated entry.
int sort_with_sign(std::vector<std::size_t>& v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) return 0;
  return sign;
}

bool divisible_solution_exists(const SNFResult& r, const LatticeVector& rhs) {
  const LatticeVector c = r.U * rhs;
  const std::size_t diag = std::min(r.S.rows(), r.S.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Integer pivot = i < diag ? r.S(i, i) : Integer(0);
    if (pivot == 0) {
      if (c[i] != 0) return false;
    } else if (c[i] % pivot != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::size_t vertices,
                                     const std::vector<std::vector<std::size_t>>& generators)
    : vertices_(vertices) {
  std::vector<std::set<Simplex>> sets(1);
  for (std::size_t v = 0; v < vertices; ++v) sets[0].insert({v});
  for (auto g : generators) {
    if (g.empty()) throw Error("empty simplex");
    for (auto v : g)
      if (v >= vertices)
        throw Error("vertex " + std::to_string(v) + " out of range (" + std::to_string(vertices) +
                    " vertices)");
    if (sort_with_sign(g) == 0) throw Error("simplex with a repeated vertex");
    if (g.size() > 20) throw Error("simplex dimension too large");
    const std::size_t n = g.size();
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1ul << i)) s.push_back(g[i]);
      if (sets.size() < s.size()) sets.resize(s.size());
      sets[s.size() - 1].insert(std::move(s));
    }
  }
  if (vertices == 0) sets.clear();
  for (const auto& set : sets) {
    by_dim_.emplace_back(set.begin(), set.end());
    for (std::size_t i = 0; i < by_dim_.back().size(); ++i) index_[by_dim_.back()[i]] = i;
  }
}

const std::vector<Simplex>& SimplicialComplex::simplices(int q) const {
  static const std::vector<Simplex> kEmpty;
  if (q < 0 || q >= static_cast<int>(by_dim_.size())) return kEmpty;
  return by_dim_[q];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (int q = 0; q <= dimension(); ++q)
    for (const auto& s : simplices(q)) {
      bool maximal = true;
      for (const auto& t : simplices(q + 1))
        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex cone(const SimplicialComplex& k) {
  const std::size_t apex = k.vertex_count();
  std::vector<std::vector<std::size_t>> gens;
  for (auto s : k.maximal_simplices()) {
    s.push_back(apex);
    gens.push_back(std::move(s));
  }
  if (gens.empty()) gens.push_back({apex});
  return SimplicialComplex(apex + 1, gens);
}

IntegerMatrix coboundary_matrix(const SimplicialComplex& k, int q) {
  const auto& lower = k.simplices(q);
  const auto& upper = k.simplices(q + 1);
  IntegerMatrix m(upper.size(), lower.size());
  for (std::size_t r = 0; r < upper.size(); ++r) {
    const Simplex& s = upper[r];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      m(r, *k.index_of(face)) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

CoboundaryPair coboundary_matrices(const SimplicialComplex& k) {
  return {coboundary_matrix(k, 0), coboundary_matrix(k, 1)};
}

H2Structure h2(const SimplicialComplex& k, std::size_t d) {
  const IntegerMatrix d1 = coboundary_matrix(k, 1);
  const IntegerMatrix d2 = coboundary_matrix(k, 2);
  const std::size_t cocycles = k.simplices(2).size() - rank(d2);
  const SNFResult r = snf(d1);
  const auto factors = r.invariant_factors();
  H2Structure out;
  out.free_rank = (cocycles - factors.size()) * d;
  for (const auto& f : factors)
    if (f > 1)
      for (std::size_t j = 0; j < d; ++j) out.torsion.push_back(f);
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

Cochain2::Cochain2(std::size_t simplex_count, std::size_t rank)
    : rank_(rank), values_(simplex_count, LatticeVector(rank)) {}

Cochain2 Cochain2::from_oriented(
    const SimplicialComplex& k, std::size_t rank,
    const std::vector<std::pair<std::vector<std::size_t>, LatticeVector>>& entries) {
  Cochain2 c(k.simplices(2).size(), rank);
  std::vector<char> seen(c.size(), 0);
  for (const auto& [verts, value] : entries) {
    if (verts.size() != 3) throw Error("a 2-cochain entry needs three vertices");
    if (value.size() != rank) throw Error("cochain value has the wrong rank");
    std::vector<std::size_t> s = verts;
    const int sign = sort_with_sign(s);
    if (sign == 0) throw Error("degenerate simplex in cochain");
    auto idx = k.index_of(s);
    if (!idx) throw Error("cochain names a triple that is not a 2-simplex");
    if (seen[*idx]) throw Error("2-simplex listed twice in cochain");
    seen[*idx] = 1;
    for (std::size_t j = 0; j < rank; ++j) c.values_[*idx][j] = sign * value[j];
  }
  return c;
}

LatticeVector Cochain2::component(std::size_t j) const {
  LatticeVector out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i][j];
  return out;
}

bool Cochain2::is_zero() const {
  for (const auto& v : values_)
    for (const auto& e : v)
      if (e != 0) return false;
  return true;
}

Cochain2 Cochain2::operator-(const Cochain2& other) const {
  if (other.rank_ != rank_ || other.values_.size() != values_.size())
    throw Error("cochains live on different complexes");
  Cochain2 out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i)
    for (std::size_t j = 0; j < rank_; ++j) out.values_[i][j] -= other.values_[i][j];
  return out;
}

Cochain2 Cochain2::operator-() const {
  Cochain2 out = *this;
  for (auto& v : out.values_)
    for (auto& e : v) e = -e;
  return out;
}

Cochain2 transform_coefficients(const IntegerMatrix& g, const Cochain2& c) {
  Cochain2 out(c.size(), g.rows());
  for (std::size_t i = 0; i < c.size(); ++i) out.value(i) = g * c.value(i);
  return out;
}

bool is_cocycle(const SimplicialComplex& k, const Cochain2& c) {
  if (c.size() != k.simplices(2).size()) throw Error("cochain does not match the complex");
  const IntegerMatrix d2 = coboundary_matrix(k, 2);
  for (std::size_t j = 0; j < c.rank(); ++j) {
    const LatticeVector image = d2 * c.component(j);
    for (const auto& e : image)
      if (e != 0) return false;
  }
  return true;
}

Cochain2 coboundary_of(const SimplicialComplex& k, const std::vector<LatticeVector>& one_cochain) {
  const IntegerMatrix d1 = coboundary_matrix(k, 1);
  if (one_cochain.size() != d1.cols()) throw Error("1-cochain does not match the complex");
  const std::size_t rank = one_cochain.empty() ? 0 : one_cochain.front().size();
  Cochain2 out(d1.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j) {
    LatticeVector comp(one_cochain.size());
    for (std::size_t e = 0; e < one_cochain.size(); ++e) comp[e] = one_cochain[e][j];
    const LatticeVector image = d1 * comp;
    for (std::size_t t = 0; t < image.size(); ++t) out.value(t)[j] = image[t];
  }
  return out;
}

bool class_equal(const SimplicialComplex& k, const Cochain2& c1, const Cochain2& c2) {
  if (!is_cocycle(k, c1) || !is_cocycle(k, c2)) throw Error("not closed");
  const Cochain2 diff = c1 - c2;
  if (diff.is_zero()) return true;
  const SNFResult r = snf(coboundary_matrix(k, 1));
  for (std::size_t j = 0; j < diff.rank(); ++j)
    if (!divisible_solution_exists(r, diff.component(j))) return false;
  return true;
}

Cochain2 pullback(const SimplicialComplex& k1, const SimplicialComplex& k2,
                  const std::vector<std::size_t>& vertex_map, const Cochain2& c) {
  if (vertex_map.size() != k1.vertex_count()) throw Error("vertex map has the wrong length");
  if (c.size() != k2.simplices(2).size()) throw Error("cochain does not match the target complex");
  for (auto v : vertex_map)
    if (v >= k2.vertex_count()) throw Error("vertex map leaves the target complex");
  for (int q = 1; q <= k1.dimension(); ++q)
    for (const auto& s : k1.simplices(q)) {
      std::set<std::size_t> image;
      for (auto v : s) image.insert(vertex_map[v]);
      if (!k2.index_of(Simplex(image.begin(), image.end())))
        throw Error("vertex map is not simplicial");
    }
  Cochain2 out(k1.simplices(2).size(), c.rank());
  const auto& tris = k1.simplices(2);
  for (std::size_t i = 0; i < tris.size(); ++i) {
    std::vector<std::size_t> image = {vertex_map[tris[i][0]], vertex_map[tris[i][1]],
                                      vertex_map[tris[i][2]]};
    const int sign = sort_with_sign(image);
    if (sign == 0) continue;
    const LatticeVector& v = c.value(*k2.index_of(image));
    for (std::size_t j = 0; j < c.rank(); ++j) out.value(i)[j] = sign * v[j];
  }
  return out;
}

}  // namespace torusq
