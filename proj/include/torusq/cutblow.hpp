// Orbit-type data of the cut space, and the blowup that recovers the
// decorated quotient from it.
#pragma once

#include "torusq/labelling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusq {

struct Stratum {
  std::string face_id;
  Subtorus stabilizer{0};
  bool is_free = true;

  bool operator==(const Stratum&) const = default;
};

struct OrbitTypeData {
  std::size_t ambient_rank = 0;
  std::vector<Stratum> strata;  // poset face order
  std::vector<std::string> fixed_points;
  // Carried through unchanged; the principal bundle over the free part.
  std::optional<SimplicialComplex> complex;
  std::optional<Cochain2> chern;

  bool operator==(const OrbitTypeData&) const = default;
};

// One stratum per face with its stabilizer. Throws if D is not unimodular.
OrbitTypeData cut(const DecoratedQuotient& dq);

// Rebuilds the decorated quotient: each facet gets the generator of its
// circle stabilizer. Throws when stabilizer ranks disagree with depths or
// stabilizers fail to nest along covers.
DecoratedQuotient blowup(const OrbitTypeData& data, const FacePoset& poset);

}  // namespace torusq
