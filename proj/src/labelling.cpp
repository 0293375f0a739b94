#include "torusq/labelling.hpp"

namespace torusq {

void check_labels_total(const FacePoset& poset, const UnimodularLabelling& labelling) {
  for (auto f : poset.facets()) {
    const std::string& id = poset.face(f).id;
    if (!labelling.labels.count(id)) throw Error("unlabelled facet '" + id + "'");
  }
  for (const auto& [id, w] : labelling.labels) {
    auto idx = poset.find(id);
    if (!idx) throw Error("label for unknown face '" + id + "'");
    if (poset.face(*idx).depth != 1) throw Error("label on '" + id + "', which is not a facet");
    if (w.ambient_rank() != labelling.ambient_rank)
      throw Error("label on '" + id + "' has rank " + std::to_string(w.ambient_rank()) +
                  ", expected " + std::to_string(labelling.ambient_rank));
  }
}

IntegerMatrix face_label_matrix(const DecoratedQuotient& dq, std::size_t face) {
  const auto& support = dq.poset.support(face);
  const std::size_t d = dq.labelling.ambient_rank;
  IntegerMatrix m(support.size(), d);
  for (std::size_t r = 0; r < support.size(); ++r) {
    const auto& rep = dq.labelling.labels.at(dq.poset.face(support[r]).id).rep();
    for (std::size_t j = 0; j < d; ++j) m(r, j) = rep[j];
  }
  return m;
}

UnimodularityReport check_unimodular(const DecoratedQuotient& dq) {
  check_labels_total(dq.poset, dq.labelling);
  UnimodularityReport report;
  const std::size_t d = dq.labelling.ambient_rank;
  for (std::size_t i = 0; i < dq.poset.size(); ++i) {
    const auto& support = dq.poset.support(i);
    if (support.empty()) continue;
    const std::string& id = dq.poset.face(i).id;
    if (support.size() > d) {
      report.failures.push_back({id, "depth exceeds rank"});
      continue;
    }
    const IntegerMatrix labels = face_label_matrix(dq, i);
    if (rank(labels) < labels.rows())
      report.failures.push_back({id, "dependent rows"});
    else if (!is_extendable(labels))
      report.failures.push_back({id, "not extendable"});
  }
  return report;
}

Subtorus stabilizer(const DecoratedQuotient& dq, const std::string& face_id) {
  check_labels_total(dq.poset, dq.labelling);
  const std::size_t i = dq.poset.index_of(face_id);
  const IntegerMatrix labels = face_label_matrix(dq, i);
  if (!is_extendable(labels))
    throw Error("labels at face '" + face_id + "' do not extend to a basis");
  return Subtorus::from_basis(labels);
}

std::size_t fixed_point_count(const DecoratedQuotient& dq) {
  const std::size_t d = dq.labelling.ambient_rank;
  std::size_t count = 0;
  for (const auto& f : dq.poset.faces())
    if (stabilizer(dq, f.id).rank() == d) ++count;
  return count;
}

DecoratedQuotient relabel(const DecoratedQuotient& dq, const IntegerMatrix& g) {
  DecoratedQuotient out = dq;
  for (auto& [id, w] : out.labelling.labels) w = apply(g, w);
  if (out.chern) out.chern = transform_coefficients(g, *out.chern);
  return out;
}

}  // namespace torusq
