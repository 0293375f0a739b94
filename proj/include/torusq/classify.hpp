// Isomorphism of decorated quotients, and the classification of torus
// manifolds whose quotient is one dimensional.
//
// Two modes are offered. `decorated_iso` keeps the torus fixed and asks for a
// face bijection carrying labels to identical labels and Chern class to Chern
// class. `iso_up_to_torus_automorphism` additionally lets an automorphism g of
// the torus act, so labels match as g * label1 = label2 o psi.
#pragma once

#include "torusq/labelling.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torusq {

enum class OneDTopology { S1, R, HalfLine, Interval };
enum class OneDKind { FreeCircle, FreeLine, HalfOpen, TwoEndsEqual, TwoEndsBasis, TwoEndsLens };

std::string to_string(OneDTopology t);
std::string to_string(OneDKind k);
OneDTopology parse_topology(const std::string& name);

struct OneDFamily {
  OneDKind kind = OneDKind::FreeCircle;
  OneDTopology topology = OneDTopology::S1;
  // TwoEndsLens only: order k >= 2 and the smallest w among the parameters
  // giving the same manifold; `w_class` lists all of them.
  Integer k = 1;
  Integer w = 0;
  std::vector<Integer> w_class;

  bool operator==(const OneDFamily& o) const {
    return kind == o.kind && topology == o.topology && k == o.k && w == o.w;
  }
};

// Throws on a label count that does not fit the topology, labels of the wrong
// rank, and two distinct endpoint labels when d < 2.
OneDFamily classify_1d(OneDTopology topology, std::span<const RealWeight> labels, std::size_t d);

// Reads topology and labels off a one-dimensional decorated quotient.
OneDFamily classify_1d(const DecoratedQuotient& dq);

// Decorated quotient for the given topology, with facet ids "a" then "b".
DecoratedQuotient one_d_quotient(OneDTopology topology, std::span<const RealWeight> labels,
                                 std::size_t d);

enum class CohomologyCheck { NotNeeded, BothTrivial, Verified };
std::string to_string(CohomologyCheck c);

struct DecoratedIso {
  std::vector<std::pair<std::string, std::string>> face_map;  // (face of D1, face of D2)
  CohomologyCheck cohomology = CohomologyCheck::NotNeeded;
  std::optional<IntegerMatrix> automorphism;  // g, up-to-automorphism mode only
};

enum class IsoVerdict { Found, None, Inconclusive };
std::string to_string(IsoVerdict v);

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::None;
  std::optional<DecoratedIso> iso;
  std::string reason;
  std::size_t bijections_examined = 0;
};

struct IsoOptions {
  // Vertex map from D1's complex to D2's, used to compare Chern classes.
  std::optional<std::vector<std::size_t>> complex_map;
  // Stop with an inconclusive verdict after this many face bijections; 0
  // means no limit.
  std::size_t max_bijections = 0;
};

IsoResult decorated_iso(const DecoratedQuotient& d1, const DecoratedQuotient& d2,
                        const IsoOptions& options = {});

IsoResult iso_up_to_torus_automorphism(const DecoratedQuotient& d1, const DecoratedQuotient& d2,
                                       const IsoOptions& options = {});

// Some g in GL(d,Z) with g * from[i] = +-to[i] for all i, if one exists.
// Exact: the constraints fix g on the saturated span of `from`, and any
// completion works on a complement.
std::optional<IntegerMatrix> find_lattice_automorphism(std::span<const LatticeVector> from,
                                                       std::span<const LatticeVector> to);

}  // namespace torusq
