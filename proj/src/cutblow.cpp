#include "torusq/cutblow.hpp"

namespace torusq {

OrbitTypeData cut(const DecoratedQuotient& dq) {
  const UnimodularityReport report = check_unimodular(dq);
  if (!report.unimodular())
    throw Error("cannot cut: labels at face '" + report.failures.front().face_id + "' " +
                report.failures.front().reason);
  OrbitTypeData out;
  out.ambient_rank = dq.labelling.ambient_rank;
  for (const auto& f : dq.poset.faces()) {
    Stratum s{f.id, stabilizer(dq, f.id), false};
    s.is_free = s.stabilizer.rank() == 0;
    if (s.stabilizer.rank() == out.ambient_rank) out.fixed_points.push_back(f.id);
    out.strata.push_back(std::move(s));
  }
  out.complex = dq.complex;
  out.chern = dq.chern;
  return out;
}

DecoratedQuotient blowup(const OrbitTypeData& data, const FacePoset& poset) {
  if (data.strata.size() != poset.size()) throw Error("orbit-type data does not match the poset");
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const Stratum& s = data.strata[i];
    const Face& f = poset.face(i);
    if (s.face_id != f.id) throw Error("stratum '" + s.face_id + "' out of order");
    if (s.stabilizer.ambient_rank() != data.ambient_rank)
      throw Error("stabilizer of '" + f.id + "' lives in the wrong torus");
    if (s.stabilizer.rank() != static_cast<std::size_t>(f.depth))
      throw Error("stabilizer rank " + std::to_string(s.stabilizer.rank()) + " at '" + f.id +
                  "' differs from depth " + std::to_string(f.depth));
    if (s.is_free != (f.depth == 0)) throw Error("free flag inconsistent at '" + f.id + "'");
  }
  for (const auto& [lower, upper] : poset.covers())
    if (!data.strata[lower].stabilizer.contains(data.strata[upper].stabilizer))
      throw Error("stabilizer of '" + poset.face(upper).id + "' not contained in that of '" +
                  poset.face(lower).id + "'");

  DecoratedQuotient out;
  out.poset = poset;
  out.labelling.ambient_rank = data.ambient_rank;
  for (auto f : poset.facets())
    out.labelling.labels.emplace(poset.face(f).id, RealWeight(data.strata[f].stabilizer.basis().row(0)));
  out.complex = data.complex;
  out.chern = data.chern;
  return out;
}

}  // namespace torusq
