// Manifolds with corners as finite face posets.
#pragma once

#include "torusq/error.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace torusq {

struct Face {
  std::string id;
  int depth = 0;
  int dim = 0;
  // Only meaningful on depth-0 faces: the open stratum is not compact
  // (e.g. the quotient R or [0, inf)).
  bool noncompact = false;

  bool operator==(const Face&) const = default;
};

// Faces with covering relations. A cover (lower, upper) means `lower` is a
// codimension-one face in the closure of `upper`; depth grows downward.
// Faces are addressed by index internally and by id at the boundary.
class FacePoset {
 public:
  using Support = std::map<std::string, std::set<std::string>>;

  FacePoset() = default;

  // Throws on duplicate ids or covers/support naming unknown faces. When
  // `support` is absent it is derived from the covers: a face is supported
  // by the depth-1 faces above it. Semantic checks live in validate_poset.
  static FacePoset build(std::vector<Face> faces,
                         const std::vector<std::pair<std::string, std::string>>& covers,
                         std::optional<Support> support = std::nullopt);

  std::size_t size() const { return faces_.size(); }
  const Face& face(std::size_t i) const { return faces_[i]; }
  const std::vector<Face>& faces() const { return faces_; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;  // throws on unknown id

  // Covers as index pairs (lower, upper).
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  const std::vector<std::size_t>& up(std::size_t i) const { return up_[i]; }
  const std::vector<std::size_t>& down(std::size_t i) const { return down_[i]; }
  // Facet indices supporting face i, ascending.
  const std::vector<std::size_t>& support(std::size_t i) const { return support_[i]; }

  std::vector<std::size_t> facets() const;
  std::vector<std::pair<std::string, std::string>> cover_ids() const;
  Support support_ids() const;

  // Faces reachable upward from i (excluding i).
  std::vector<std::size_t> above(std::size_t i) const;

  bool operator==(const FacePoset& other) const;

 private:
  std::vector<Face> faces_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::vector<std::size_t>> support_;
};

struct Violation {
  std::string kind;
  std::vector<std::string> face_ids;
  std::string message;
};

struct PosetReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Checks depth = |support|, facets = depth-1 faces, graded acyclic covers,
// and that every face lies in the closure of exactly its supporting facets.
PosetReport validate_poset(const FacePoset& poset);

// Ids of faces of depth k.
std::vector<std::string> strata(const FacePoset& poset, int k);

// A bijection as a vector: image[i] = index in the target poset.
using FaceBijection = std::vector<std::size_t>;

// Optional extra pruning: called as (source face, target face) before a
// face is mapped.
using FaceFilter = std::function<bool(std::size_t, std::size_t)>;

// Visits every bijection preserving depth, dim, noncompactness and covers
// (in both directions), in a fixed deterministic order. The visitor returns
// false to stop. Returns the number of bijections visited.
std::size_t for_each_isomorphism(const FacePoset& p1, const FacePoset& p2,
                                 const std::function<bool(const FaceBijection&)>& visit,
                                 const FaceFilter& filter = {});

std::vector<FaceBijection> poset_isomorphisms(const FacePoset& p1, const FacePoset& p2);

}  // namespace torusq
