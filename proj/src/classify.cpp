#include "torusq/classify.hpp"

#include "torusq/builders.hpp"

#include <functional>

namespace torusq {

std::string to_string(OneDTopology t) {
  switch (t) {
    case OneDTopology::S1: return "S1";
    case OneDTopology::R: return "R";
    case OneDTopology::HalfLine: return "HalfLine";
    case OneDTopology::Interval: return "Interval";
  }
  return "?";
}

std::string to_string(OneDKind k) {
  switch (k) {
    case OneDKind::FreeCircle: return "FreeCircle";
    case OneDKind::FreeLine: return "FreeLine";
    case OneDKind::HalfOpen: return "HalfOpen";
    case OneDKind::TwoEndsEqual: return "TwoEndsEqual";
    case OneDKind::TwoEndsBasis: return "TwoEndsBasis";
    case OneDKind::TwoEndsLens: return "TwoEndsLens";
  }
  return "?";
}

OneDTopology parse_topology(const std::string& name) {
  for (auto t : {OneDTopology::S1, OneDTopology::R, OneDTopology::HalfLine, OneDTopology::Interval})
    if (to_string(t) == name) return t;
  if (name == "circle") return OneDTopology::S1;
  if (name == "line") return OneDTopology::R;
  if (name == "halfline") return OneDTopology::HalfLine;
  if (name == "interval") return OneDTopology::Interval;
  throw Error("unknown one-dimensional topology '" + name + "'");
}

std::string to_string(CohomologyCheck c) {
  switch (c) {
    case CohomologyCheck::NotNeeded: return "not needed";
    case CohomologyCheck::BothTrivial: return "both classes trivial";
    case CohomologyCheck::Verified: return "classes match under the complex map";
  }
  return "?";
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Found: return "found";
    case IsoVerdict::None: return "none";
    case IsoVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::size_t expected_labels(OneDTopology t) {
  switch (t) {
    case OneDTopology::S1:
    case OneDTopology::R: return 0;
    case OneDTopology::HalfLine: return 1;
    case OneDTopology::Interval: return 2;
  }
  return 0;
}

}  // namespace

OneDFamily classify_1d(OneDTopology topology, std::span<const RealWeight> labels, std::size_t d) {
  if (labels.size() != expected_labels(topology))
    throw Error("topology " + to_string(topology) + " takes " +
                std::to_string(expected_labels(topology)) + " labels, got " +
                std::to_string(labels.size()));
  for (const auto& l : labels)
    if (l.ambient_rank() != d) throw Error("label " + to_string(l.rep()) + " is not in Z^" + std::to_string(d));

  OneDFamily out;
  out.topology = topology;
  switch (topology) {
    case OneDTopology::S1: out.kind = OneDKind::FreeCircle; return out;
    case OneDTopology::R: out.kind = OneDKind::FreeLine; return out;
    case OneDTopology::HalfLine: out.kind = OneDKind::HalfOpen; return out;
    case OneDTopology::Interval: break;
  }
  const TrichotomyResult pair = canonical_pair_form(labels[0], labels[1], true);
  if (pair.pair_case == PairCase::EqualLine) {
    out.kind = OneDKind::TwoEndsEqual;
    return out;
  }
  if (d < 2) throw Error("two distinct endpoint labels need d >= 2");
  if (pair.pair_case == PairCase::UnimodularPair) {
    out.kind = OneDKind::TwoEndsBasis;
    return out;
  }
  out.kind = OneDKind::TwoEndsLens;
  out.k = pair.k;
  out.w = pair.w;
  out.w_class = lens_parameter_orbit(pair.k, pair.w, true);
  return out;
}

OneDFamily classify_1d(const DecoratedQuotient& dq) {
  const FacePoset& p = dq.poset;
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.face(i).depth == 0) interior.push_back(i);
  if (interior.size() != 1 || p.face(interior[0]).dim != 1 || !validate_poset(p).valid())
    throw Error("not a connected one-dimensional quotient");
  check_labels_total(p, dq.labelling);
  std::vector<RealWeight> labels;
  for (auto f : p.facets()) labels.push_back(dq.labelling.labels.at(p.face(f).id));
  OneDTopology topology;
  switch (labels.size()) {
    case 0: topology = p.face(interior[0]).noncompact ? OneDTopology::R : OneDTopology::S1; break;
    case 1: topology = OneDTopology::HalfLine; break;
    case 2: topology = OneDTopology::Interval; break;
    default: throw Error("a one-dimensional quotient has at most two endpoints");
  }
  return classify_1d(topology, labels, dq.labelling.ambient_rank);
}

DecoratedQuotient one_d_quotient(OneDTopology topology, std::span<const RealWeight> labels,
                                 std::size_t d) {
  if (labels.size() != expected_labels(topology)) throw Error("label count does not fit topology");
  DecoratedQuotient dq;
  switch (topology) {
    case OneDTopology::S1: dq.poset = circle_poset(); break;
    case OneDTopology::R: dq.poset = line_poset(); break;
    case OneDTopology::HalfLine: dq.poset = halfline_poset(); break;
    case OneDTopology::Interval: dq.poset = interval_poset(); break;
  }
  dq.labelling.ambient_rank = d;
  const char* names[] = {"a", "b"};
  for (std::size_t i = 0; i < labels.size(); ++i) dq.labelling.labels.emplace(names[i], labels[i]);
  return dq;
}

// ---------------------------------------------------------------------------
// Lattice automorphisms matching labels

namespace {

// Calls `visit` with one g per sign pattern that admits a solution. When
// `all_signs` is false the first sign is fixed to +1 (g and -g give the
// same labels).
void for_each_lattice_automorphism(std::span<const LatticeVector> from,
                                   std::span<const LatticeVector> to, bool all_signs,
                                   const std::function<bool(const IntegerMatrix&)>& visit) {
  if (from.size() != to.size()) throw Error("constraint lists differ in length");
  if (from.empty()) {
    visit(IntegerMatrix::identity(0));
    return;
  }
  const std::size_t d = from.front().size();
  std::vector<std::size_t> basis_idx;
  IntegerMatrix chosen(0, d);
  for (std::size_t i = 0; i < from.size(); ++i) {
    std::vector<LatticeVector> rows;
    for (auto j : basis_idx) rows.push_back(from[j]);
    rows.push_back(from[i]);
    IntegerMatrix trial = IntegerMatrix::from_rows(rows, d);
    if (rank(trial) == rows.size()) {
      basis_idx.push_back(i);
      chosen = std::move(trial);
    }
  }
  const std::size_t r = basis_idx.size();
  std::vector<LatticeVector> to_rows;
  for (auto j : basis_idx) to_rows.push_back(to[j]);
  const IntegerMatrix targets = IntegerMatrix::from_rows(to_rows, d);
  if (rank(targets) != r) return;

  // Coordinates of the chosen labels in a basis of their saturated span.
  const Subtorus span = saturation(chosen);
  const IntegerMatrix span_t = span.basis().transpose();
  IntegerMatrix coords(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto c = solve_integer(span_t, chosen.row(i));
    for (std::size_t j = 0; j < r; ++j) coords(i, j) = (*c)[j];
  }
  const IntegerMatrix source_inv =
      unimodular_inverse(extend_to_basis(span.basis()).transpose());

  const std::size_t patterns = std::size_t{1} << (all_signs ? r : r - 1);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    IntegerMatrix signed_targets = targets;
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t bit = all_signs ? i : i - 1;
      if ((all_signs || i > 0) && (mask >> bit) & 1) signed_targets.negate_row(i);
    }
    // coords * X = signed_targets, X = images of the saturated basis.
    IntegerMatrix images(r, d);
    bool integral = true;
    for (std::size_t j = 0; j < d && integral; ++j) {
      auto col = solve_integer(coords, signed_targets.col(j));
      if (!col) {
        integral = false;
        break;
      }
      for (std::size_t i = 0; i < r; ++i) images(i, j) = (*col)[i];
    }
    if (!integral || !is_extendable(images)) continue;
    const IntegerMatrix g = extend_to_basis(images).transpose() * source_inv;
    bool ok = true;
    for (std::size_t i = 0; i < from.size() && ok; ++i) {
      const LatticeVector image = g * from[i];
      LatticeVector neg(image.size());
      for (std::size_t j = 0; j < image.size(); ++j) neg[j] = -image[j];
      ok = image == to[i] || neg == to[i];
    }
    if (ok && !visit(g)) return;
  }
}

struct ChernOutcome {
  enum Kind { Ok, Mismatch, Unavailable } kind = Ok;
  CohomologyCheck check = CohomologyCheck::NotNeeded;
  std::string reason;
};

bool class_trivial(const DecoratedQuotient& dq) {
  if (!dq.chern || dq.chern->is_zero()) return true;
  if (!dq.complex) throw Error("Chern cocycle without a simplicial complex");
  return class_equal(*dq.complex, *dq.chern, Cochain2(dq.chern->size(), dq.chern->rank()));
}

ChernOutcome compare_chern(const DecoratedQuotient& d1, const DecoratedQuotient& d2,
                           const IntegerMatrix* g, const IsoOptions& options) {
  if (!d1.chern && !d2.chern) return {};
  const std::size_t d = d1.labelling.ambient_rank;
  if (options.complex_map && d1.complex && d2.complex) {
    const Cochain2 c2 = d2.chern ? *d2.chern : Cochain2(d2.complex->simplices(2).size(), d);
    Cochain2 c1 = d1.chern ? *d1.chern : Cochain2(d1.complex->simplices(2).size(), d);
    if (g) c1 = transform_coefficients(*g, c1);
    const Cochain2 pulled = pullback(*d1.complex, *d2.complex, *options.complex_map, c2);
    if (class_equal(*d1.complex, pulled, c1))
      return {ChernOutcome::Ok, CohomologyCheck::Verified, ""};
    return {ChernOutcome::Mismatch, CohomologyCheck::Verified,
            "pulled-back Chern class differs"};
  }
  const bool t1 = class_trivial(d1);
  const bool t2 = class_trivial(d2);
  if (t1 && t2) return {ChernOutcome::Ok, CohomologyCheck::BothTrivial, ""};
  if (t1 != t2)
    return {ChernOutcome::Mismatch, CohomologyCheck::BothTrivial,
            "one Chern class is trivial and the other is not"};
  return {ChernOutcome::Unavailable, CohomologyCheck::NotNeeded,
          "cohomology comparison unavailable: nonzero Chern classes and no complex map"};
}

std::vector<std::pair<std::string, std::string>> face_map(const DecoratedQuotient& d1,
                                                          const DecoratedQuotient& d2,
                                                          const FaceBijection& b) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < b.size(); ++i)
    out.emplace_back(d1.poset.face(i).id, d2.poset.face(b[i]).id);
  return out;
}

void check_pair(const DecoratedQuotient& d1, const DecoratedQuotient& d2) {
  check_labels_total(d1.poset, d1.labelling);
  check_labels_total(d2.poset, d2.labelling);
  if (d1.labelling.ambient_rank != d2.labelling.ambient_rank)
    throw Error("decorated quotients for tori of different rank");
}

// Shared search loop. `match` returns the outcome for one bijection.
template <typename Match>
IsoResult search(const DecoratedQuotient& d1, const DecoratedQuotient& d2,
                 const IsoOptions& options, const FaceFilter& filter, Match match) {
  IsoResult result;
  std::string pending;
  std::string mismatch;
  bool budget_hit = false;
  for_each_isomorphism(
      d1.poset, d2.poset,
      [&](const FaceBijection& b) {
        if (options.max_bijections && result.bijections_examined >= options.max_bijections) {
          budget_hit = true;
          return false;
        }
        ++result.bijections_examined;
        if (auto iso = match(b, pending, mismatch)) {
          iso->face_map = face_map(d1, d2, b);
          result.iso = std::move(*iso);
          result.verdict = IsoVerdict::Found;
          return false;
        }
        return true;
      },
      filter);
  if (result.verdict == IsoVerdict::Found) return result;
  if (budget_hit) {
    result.verdict = IsoVerdict::Inconclusive;
    result.reason = "inconclusive within bound " + std::to_string(options.max_bijections);
  } else if (!pending.empty()) {
    result.verdict = IsoVerdict::Inconclusive;
    result.reason = pending;
  } else {
    result.verdict = IsoVerdict::None;
    result.reason = mismatch.empty() ? "no face bijection intertwines the labels" : mismatch;
  }
  return result;
}

}  // namespace

std::optional<IntegerMatrix> find_lattice_automorphism(std::span<const LatticeVector> from,
                                                       std::span<const LatticeVector> to) {
  std::optional<IntegerMatrix> out;
  if (from.empty()) return std::nullopt;
  for_each_lattice_automorphism(from, to, false, [&](const IntegerMatrix& g) {
    out = g;
    return false;
  });
  return out;
}

IsoResult decorated_iso(const DecoratedQuotient& d1, const DecoratedQuotient& d2,
                        const IsoOptions& options) {
  check_pair(d1, d2);
  const FaceFilter same_label = [&](std::size_t i, std::size_t j) {
    if (d1.poset.face(i).depth != 1) return true;
    return d1.labelling.labels.at(d1.poset.face(i).id) ==
           d2.labelling.labels.at(d2.poset.face(j).id);
  };
  return search(d1, d2, options, same_label,
                [&](const FaceBijection&, std::string& pending,
                    std::string& mismatch) -> std::optional<DecoratedIso> {
                  const ChernOutcome c = compare_chern(d1, d2, nullptr, options);
                  if (c.kind == ChernOutcome::Ok) return DecoratedIso{{}, c.check, std::nullopt};
                  (c.kind == ChernOutcome::Unavailable ? pending : mismatch) = c.reason;
                  return std::nullopt;
                });
}

IsoResult iso_up_to_torus_automorphism(const DecoratedQuotient& d1, const DecoratedQuotient& d2,
                                       const IsoOptions& options) {
  check_pair(d1, d2);
  const std::size_t d = d1.labelling.ambient_rank;
  const bool chern_matters = d1.chern.has_value() || d2.chern.has_value();
  const auto facets = d1.poset.facets();
  std::vector<LatticeVector> from;
  for (auto f : facets) from.push_back(d1.labelling.labels.at(d1.poset.face(f).id).rep());
  // GL(1,Z) = {1, -1} can be searched outright. In higher rank, with no
  // labels, only +-1 are tried.
  const bool pinned = from.empty() ? d <= 1 : rank(IntegerMatrix::from_rows(from, d)) == d;

  return search(
      d1, d2, options, {},
      [&](const FaceBijection& b, std::string& pending,
          std::string& mismatch) -> std::optional<DecoratedIso> {
        std::vector<LatticeVector> to;
        for (auto f : facets) to.push_back(d2.labelling.labels.at(d2.poset.face(b[f]).id).rep());
        std::optional<DecoratedIso> found;
        auto try_g = [&](const IntegerMatrix& g) {
          const ChernOutcome c = compare_chern(d1, d2, &g, options);
          if (c.kind == ChernOutcome::Ok) {
            found = DecoratedIso{{}, c.check, g};
            return false;
          }
          if (c.kind == ChernOutcome::Unavailable) {
            pending = c.reason;
          } else if (!pinned && options.complex_map) {
            pending = "labels do not determine the torus automorphism; "
                      "other automorphisms were not tried against the Chern classes";
          } else {
            mismatch = c.reason;
          }
          return true;
        };
        if (from.empty()) {
          IntegerMatrix minus = IntegerMatrix::identity(d);
          for (std::size_t i = 0; i < d; ++i) minus.negate_row(i);
          if (try_g(IntegerMatrix::identity(d)) && d > 0) try_g(minus);
        } else
          for_each_lattice_automorphism(from, to, chern_matters, try_g);
        return found;
      });
}

}  // namespace torusq
