// Unimodular labellings of face posets and the decorated quotient (Q, labels, c).
#pragma once

#include "torusq/cohomology.hpp"
#include "torusq/corners.hpp"
#include "torusq/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torusq {

struct UnimodularLabelling {
  std::size_t ambient_rank = 0;
  std::map<std::string, RealWeight> labels;  // facet id -> weight

  bool operator==(const UnimodularLabelling&) const = default;
};

struct DecoratedQuotient {
  FacePoset poset;
  UnimodularLabelling labelling;
  std::optional<SimplicialComplex> complex;
  std::optional<Cochain2> chern;  // on `complex`, coefficients in Z^d

  bool operator==(const DecoratedQuotient&) const = default;
};

struct FaceFailure {
  std::string face_id;
  std::string reason;  // "not extendable", "dependent rows", "depth exceeds rank"

  bool operator==(const FaceFailure&) const = default;
};

struct UnimodularityReport {
  std::vector<FaceFailure> failures;  // in poset face order
  bool unimodular() const { return failures.empty(); }
};

// Throws if a facet is unlabelled, a label names a non-facet, or a label has
// the wrong rank.
void check_labels_total(const FacePoset& poset, const UnimodularLabelling& labelling);

// Labels of the facets supporting face i, in support order.
IntegerMatrix face_label_matrix(const DecoratedQuotient& dq, std::size_t face);

// At every face, the labels of the supporting facets must extend to a basis
// of Z^d. Failures are reported per face.
UnimodularityReport check_unimodular(const DecoratedQuotient& dq);

// Subtorus spanned by the labels of the facets containing the face.
Subtorus stabilizer(const DecoratedQuotient& dq, const std::string& face_id);

// Faces whose stabilizer is all of T.
std::size_t fixed_point_count(const DecoratedQuotient& dq);

// Every label replaced by g * label; a Chern cocycle's coefficients move too.
DecoratedQuotient relabel(const DecoratedQuotient& dq, const IntegerMatrix& g);

}  // namespace torusq
