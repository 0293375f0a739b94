// Simplicial cochains with coefficients in Z^d and degree-2 cohomology.
//
// Simplices are oriented by increasing vertex index; every sign below is
// derived from that convention. Z^d coefficients are handled componentwise.
#pragma once

#include "torusq/lattice.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace torusq {

using Simplex = std::vector<std::size_t>;  // sorted vertex indices

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Closes `generators` under taking faces. Throws on out-of-range or
  // repeated vertices and on empty simplices.
  SimplicialComplex(std::size_t vertices, const std::vector<std::vector<std::size_t>>& generators);

  std::size_t vertex_count() const { return vertices_; }
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  // Simplices of dimension q in lexicographic order (empty if none).
  const std::vector<Simplex>& simplices(int q) const;
  // Index of a sorted simplex among those of its dimension.
  std::optional<std::size_t> index_of(const Simplex& s) const;
  // Maximal simplices, lexicographic.
  std::vector<Simplex> maximal_simplices() const;

  bool operator==(const SimplicialComplex& other) const { return by_dim_ == other.by_dim_ && vertices_ == other.vertices_; }

 private:
  std::size_t vertices_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
  std::map<Simplex, std::size_t> index_;
};

// The cone on K with apex vertex K.vertex_count().
SimplicialComplex cone(const SimplicialComplex& k);

// delta_q : C^q -> C^{q+1} as a matrix with rows indexed by (q+1)-simplices
// and columns by q-simplices.
IntegerMatrix coboundary_matrix(const SimplicialComplex& k, int q);

struct CoboundaryPair {
  IntegerMatrix d1;  // C^0 -> C^1
  IntegerMatrix d2;  // C^1 -> C^2
};
CoboundaryPair coboundary_matrices(const SimplicialComplex& k);

// H^2(K; Z) tensored with Z^d.
struct H2Structure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // divisibility chain, entries > 1

  bool operator==(const H2Structure&) const = default;
};
H2Structure h2(const SimplicialComplex& k, std::size_t d);

// A Z^d-valued 2-cochain: one vector per 2-simplex of the complex it was
// built for, in that complex's order.
class Cochain2 {
 public:
  Cochain2() = default;
  Cochain2(std::size_t simplex_count, std::size_t rank);
  // Entries keyed by ordered vertex triples; an odd permutation of the
  // sorted triple negates the value. Unlisted simplices get 0.
  static Cochain2 from_oriented(const SimplicialComplex& k, std::size_t rank,
                                const std::vector<std::pair<std::vector<std::size_t>, LatticeVector>>& entries);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return values_.size(); }
  const LatticeVector& value(std::size_t simplex) const { return values_[simplex]; }
  LatticeVector& value(std::size_t simplex) { return values_[simplex]; }
  // Component j as an integer vector over 2-simplices.
  LatticeVector component(std::size_t j) const;

  bool is_zero() const;
  Cochain2 operator-(const Cochain2& other) const;
  Cochain2 operator-() const;

  bool operator==(const Cochain2&) const = default;

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> values_;
};

// Applies a linear map on coefficients: value -> g * value.
Cochain2 transform_coefficients(const IntegerMatrix& g, const Cochain2& c);

bool is_cocycle(const SimplicialComplex& k, const Cochain2& c);

// delta of a Z^d-valued 1-cochain given per edge.
Cochain2 coboundary_of(const SimplicialComplex& k, const std::vector<LatticeVector>& one_cochain);

// True iff c1 - c2 is an integral coboundary. Throws "not closed" if either
// input is not a cocycle.
bool class_equal(const SimplicialComplex& k, const Cochain2& c1, const Cochain2& c2);

// c pulled back along the vertex map f : K1 -> K2. Throws if f does not map
// simplices of K1 onto simplices of K2.
Cochain2 pullback(const SimplicialComplex& k1, const SimplicialComplex& k2,
                  const std::vector<std::size_t>& vertex_map, const Cochain2& c);

}  // namespace torusq
