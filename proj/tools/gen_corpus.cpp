// Writes the example corpus: gen_corpus <dir>

#include "torusq/builders.hpp"
#include "torusq/io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace torusq;
namespace fs = std::filesystem;

namespace {

fs::path out_dir;

void write(const std::string& name, const json& doc) {
  const fs::path path = out_dir / (name + ".json");
  fs::create_directories(path.parent_path());
  std::ofstream(path) << doc.dump(2) << "\n";
}

DecoratedQuotient labelled(FacePoset poset, std::size_t d,
                           const std::vector<std::pair<std::string, RealWeight>>& labels) {
  DecoratedQuotient dq;
  dq.poset = std::move(poset);
  dq.labelling.ambient_rank = d;
  for (const auto& [id, w] : labels) dq.labelling.labels.emplace(id, w);
  return dq;
}

SimplicialComplex tetra_boundary() {
  return SimplicialComplex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex rp2() {
  return SimplicialComplex(6, {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                               {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
}

DecoratedQuotient hopf(long long degree, std::vector<std::size_t> triangle) {
  DecoratedQuotient dq = labelled(closed_poset(2), 1, {});
  dq.complex = tetra_boundary();
  dq.chern = Cochain2::from_oriented(*dq.complex, 1, {{triangle, make_vector({degree})}});
  return dq;
}

void decorated() {
  write("cp2", write_decorated(labelled(simplex_poset(2), 2,
                                        {{"f0", {1, 0}}, {"f1", {0, 1}}, {"f2", {1, 1}}})));
  write("cp2_rotated", write_decorated(labelled(simplex_poset(2), 2,
                                                {{"f0", {0, 1}}, {"f1", {1, 1}}, {"f2", {1, 0}}})));
  write("cp2_twisted", write_decorated(labelled(simplex_poset(2), 2,
                                                {{"f0", {1, 0}}, {"f1", {1, 1}}, {"f2", {1, 2}}})));
  write("cp3", write_decorated(labelled(simplex_poset(3), 3,
                                        {{"f0", {1, 0, 0}}, {"f1", {0, 1, 0}}, {"f2", {0, 0, 1}},
                                         {"f3", {1, 1, 1}}})));
  write("square_s2xs2", write_decorated(labelled(polygon_poset(4), 2,
                                                 {{"e0", {1, 0}}, {"e1", {0, 1}}, {"e2", {1, 0}},
                                                  {"e3", {0, 1}}})));
  write("square_s2xs2_swapped", write_decorated(labelled(polygon_poset(4), 2,
                                                         {{"e0", {0, 1}}, {"e1", {1, 0}},
                                                          {"e2", {0, 1}}, {"e3", {1, 0}}})));
  write("hirzebruch_1", write_decorated(labelled(polygon_poset(4), 2,
                                                 {{"e0", {1, 0}}, {"e1", {0, 1}}, {"e2", {1, -1}},
                                                  {"e3", {0, 1}}})));
  write("bad_vertex", write_decorated(labelled(polygon_poset(4), 2,
                                               {{"e0", {1, 0}}, {"e1", {0, 1}}, {"e2", {1, 0}},
                                                {"e3", {1, 2}}})));
  write("cube", write_decorated(labelled(cube_poset(3), 3,
                                         {{"0**", {1, 0, 0}}, {"1**", {1, 0, 0}},
                                          {"*0*", {0, 1, 0}}, {"*1*", {0, 1, 0}},
                                          {"**0", {0, 0, 1}}, {"**1", {0, 0, 1}}})));
  write("prism", write_decorated(labelled(product_poset(simplex_poset(2), interval_poset()), 3,
                                          {{"f0|int", {1, 0, 0}}, {"f1|int", {0, 1, 0}},
                                           {"f2|int", {1, 1, 0}}, {"int|a", {0, 0, 1}},
                                           {"int|b", {0, 0, 1}}})));
  write("interval_equal", write_decorated(labelled(interval_poset(), 1, {{"a", {1}}, {"b", {1}}})));
  write("interval_basis", write_decorated(labelled(interval_poset(), 2, {{"a", {1, 0}}, {"b", {0, 1}}})));
  write("interval_lens2", write_decorated(labelled(interval_poset(), 2, {{"a", {1, 0}}, {"b", {-1, 2}}})));
  write("interval_lens5", write_decorated(labelled(interval_poset(), 2, {{"a", {1, 0}}, {"b", {-2, 5}}})));
  write("halfline", write_decorated(labelled(halfline_poset(), 2, {{"a", {1, 0}}})));
  write("free_circle", write_decorated(labelled(circle_poset(), 3, {})));
  write("free_line", write_decorated(labelled(line_poset(), 1, {})));

  write("hopf_bundle", write_decorated(hopf(1, {0, 1, 2})));
  write("hopf_bundle_shifted", write_decorated(hopf(-1, {0, 1, 3})));
  write("hopf_bundle_2", write_decorated(hopf(2, {0, 1, 2})));
  write("trivial_bundle", write_decorated(hopf(0, {0, 1, 2})));

  DecoratedQuotient tetra = labelled(closed_poset(2), 2, {});
  tetra.complex = tetra_boundary();
  write("tetra_boundary", write_decorated(tetra));
  DecoratedQuotient proj = labelled(closed_poset(2), 1, {});
  proj.complex = rp2();
  write("rp2", write_decorated(proj));
  DecoratedQuotient disk = labelled(simplex_poset(2), 2, {{"f0", {1, 0}}, {"f1", {0, 1}}, {"f2", {1, 1}}});
  disk.complex = SimplicialComplex(3, {{0, 1, 2}});
  write("disk", write_decorated(disk));
  // The 3-simplex with the CP^3 labelling, triangulated as itself.
  DecoratedQuotient ball = labelled(simplex_poset(3), 3,
                                    {{"f0", {1, 0, 0}}, {"f1", {0, 1, 0}}, {"f2", {0, 0, 1}}, {"f3", {1, 1, 1}}});
  ball.complex = SimplicialComplex(4, {{0, 1, 2, 3}});
  write("ball", write_decorated(ball));
}

void queries() {
  write("oned_circle", write_oned_query({OneDTopology::S1, 3, {}}));
  write("oned_halfline", write_oned_query({OneDTopology::HalfLine, 2, {RealWeight{1, 0}}}));
  write("oned_interval_basis",
        write_oned_query({OneDTopology::Interval, 2, {RealWeight{1, 0}, RealWeight{0, 1}}}));
  write("oned_lens2",
        write_oned_query({OneDTopology::Interval, 2, {RealWeight{1, 0}, RealWeight{-1, 2}}}));
  write("oned_bad_count", [] {
    json doc = write_oned_query({OneDTopology::Interval, 2, {RealWeight{1, 0}}});
    return doc;
  }());
  write("pair_lens5", write_pair_query({RealWeight{1, 0}, RealWeight{-2, 5}, true}));
}

void models() {
  write("model_identity", write_model_spec(identity_spec({1, 0, 1, 1, 0, 1, 1})));
  const ModelMapSpec random = random_model_spec({2, 1, 1, 2, 1, 1, 1}, 211);
  write("model_random_2_1_1", write_model_spec(random));
  write("model_corrupt", write_model_spec(corrupt_spec(random, 0)));

  // A_0 = s_0 - 1 vanishes at s_0 = 1, so the Hadamard factor does too.
  ModelMapSpec vanishing = identity_spec({1, 0, 0, 1, 0, 0, 1});
  vanishing.A[0] = Expr::s(0) - Expr::constant(1.0);
  vanishing.probes.push_back({{1.0}, {}});
  write("model_hadamard_vanishing", write_model_spec(vanishing));

  std::size_t i = 0;
  for (const ModelShape& shape : all_model_shapes()) {
    char name[64];
    std::snprintf(name, sizeof name, "models/shape_%03zu_%zu%zu%zu_%zu%zu%zu_k%zu", i, shape.n,
                  shape.l, shape.m, shape.n2, shape.l2, shape.m2, shape.k);
    write(name, write_model_spec(random_model_spec(shape, 1000 + i)));
    ++i;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_corpus <dir>\n";
    return 2;
  }
  out_dir = argv[1];
  decorated();
  queries();
  models();
  return 0;
}
