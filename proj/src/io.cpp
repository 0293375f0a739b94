#include "torusq/io.hpp"

#include <fstream>
#include <sstream>

namespace torusq {

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where, "missing field '" + key + "'");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  return j;
}

std::string read_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where, "expected a string");
  return j.get<std::string>();
}

std::size_t read_count(const json& j, const std::string& where) {
  const Integer v = read_integer(j, where);
  if (v < 0 || v > 1000000) throw InputError(where, "count out of range");
  return static_cast<std::size_t>(v);
}

double read_double(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = j.get<std::string>();
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw InputError(where, "expected a number");
}

std::vector<double> read_doubles(const json& j, const std::string& where) {
  std::vector<double> out;
  std::size_t i = 0;
  for (const auto& e : array(j, where)) out.push_back(read_double(e, where + "/" + std::to_string(i++)));
  return out;
}

RealWeight read_weight(const json& j, const std::string& where) {
  try {
    return RealWeight(read_vector(j, where));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(where, e.what());
  }
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

void expect_kind(const json& doc, const std::string& kind) {
  const std::string k = document_kind(doc);
  if (k != kind) throw InputError("/kind", "expected '" + kind + "', got '" + k + "'");
}

json header(const std::string& kind) { return json{{"version", "1"}, {"kind", kind}}; }

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("byte " + std::to_string(e.byte), std::string("malformed JSON: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + " " + e.where(), e.detail());
  }
}

std::string document_kind(const json& doc) {
  if (!doc.is_object()) throw InputError("", "document must be an object");
  const std::string version = read_string(field(doc, "version", ""), "/version");
  if (version != "1") throw InputError("/version", "unsupported version '" + version + "'");
  return read_string(field(doc, "kind", ""), "/kind");
}

Integer read_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long long>())
                                                           : Integer(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw InputError(where, "empty integer string");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw InputError(where, "not an integer: '" + s + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw InputError(where, "expected an integer");
}

LatticeVector read_vector(const json& j, const std::string& where) {
  LatticeVector out;
  std::size_t i = 0;
  for (const auto& e : array(j, where)) out.push_back(read_integer(e, at(where, i++)));
  return out;
}

json write_integer(const Integer& v) { return v.str(); }

json write_vector(const LatticeVector& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(write_integer(e));
  return out;
}

json write_matrix(const IntegerMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(write_vector(m.row(i)));
  return out;
}

IntegerMatrix read_matrix(const json& j, const std::string& where) {
  std::vector<LatticeVector> rows;
  std::size_t i = 0;
  for (const auto& r : array(j, where)) rows.push_back(read_vector(r, at(where, i++)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != cols) throw InputError(at(where, r), "ragged matrix");
  return IntegerMatrix::from_rows(rows, cols);
}

SimplicialComplex read_complex(const json& j, const std::string& where) {
  const std::size_t vertices = read_count(field(j, "vertices", where), at(where, "vertices"));
  std::vector<std::vector<std::size_t>> gens;
  const std::string sw = at(where, "simplices");
  std::size_t i = 0;
  for (const auto& s : array(field(j, "simplices", where), sw)) {
    std::vector<std::size_t> g;
    std::size_t v = 0;
    for (const auto& e : array(s, at(sw, i))) g.push_back(read_count(e, at(at(sw, i), v++)));
    gens.push_back(std::move(g));
    ++i;
  }
  try {
    return SimplicialComplex(vertices, gens);
  } catch (const Error& e) {
    throw InputError(where, e.what());
  }
}

json write_complex(const SimplicialComplex& k) {
  json simplices = json::array();
  for (const auto& s : k.maximal_simplices())
    if (s.size() > 1 || k.dimension() == 0) simplices.push_back(s);
  return json{{"vertices", k.vertex_count()}, {"simplices", simplices}};
}

DecoratedQuotient read_decorated(const json& doc) {
  expect_kind(doc, "decorated_quotient");
  DecoratedQuotient dq;

  const json& poset = field(doc, "poset", "");
  std::vector<Face> faces;
  std::size_t i = 0;
  for (const auto& f : array(field(poset, "faces", "/poset"), "/poset/faces")) {
    const std::string w = at("/poset/faces", i++);
    Face face;
    face.id = read_string(field(f, "id", w), at(w, "id"));
    face.depth = static_cast<int>(read_count(field(f, "depth", w), at(w, "depth")));
    face.dim = static_cast<int>(read_count(field(f, "dim", w), at(w, "dim")));
    if (auto nc = optional_field(f, "noncompact")) {
      if (!nc->is_boolean()) throw InputError(at(w, "noncompact"), "expected a boolean");
      face.noncompact = nc->get<bool>();
    }
    faces.push_back(std::move(face));
  }
  std::vector<std::pair<std::string, std::string>> covers;
  i = 0;
  for (const auto& c : array(field(poset, "covers", "/poset"), "/poset/covers")) {
    const std::string w = at("/poset/covers", i++);
    if (!c.is_array() || c.size() != 2) throw InputError(w, "a cover is a pair [lower, upper]");
    covers.emplace_back(read_string(c[0], at(w, 0)), read_string(c[1], at(w, 1)));
  }
  std::optional<FacePoset::Support> support;
  if (auto s = optional_field(poset, "support")) {
    if (!s->is_object()) throw InputError("/poset/support", "expected an object");
    support.emplace();
    for (const auto& [id, facets] : s->items()) {
      auto& set = (*support)[id];
      std::size_t k = 0;
      for (const auto& f : array(facets, "/poset/support/" + id))
        set.insert(read_string(f, at("/poset/support/" + id, k++)));
    }
  }
  try {
    dq.poset = FacePoset::build(std::move(faces), covers, support);
  } catch (const Error& e) {
    throw InputError("/poset", e.what());
  }

  const json& lab = field(doc, "labelling", "");
  dq.labelling.ambient_rank = read_count(field(lab, "rank", "/labelling"), "/labelling/rank");
  const json& labels = field(lab, "labels", "/labelling");
  if (!labels.is_object()) throw InputError("/labelling/labels", "expected an object");
  for (const auto& [id, v] : labels.items()) {
    const std::string w = "/labelling/labels/" + id;
    RealWeight weight = read_weight(v, w);
    if (weight.ambient_rank() != dq.labelling.ambient_rank)
      throw InputError(w, "label has the wrong rank");
    dq.labelling.labels.emplace(id, std::move(weight));
  }

  if (auto c = optional_field(doc, "complex")) dq.complex = read_complex(*c, "/complex");
  if (auto c = optional_field(doc, "chern")) {
    if (!dq.complex) throw InputError("/chern", "a Chern cocycle needs a complex");
    std::vector<std::pair<std::vector<std::size_t>, LatticeVector>> entries;
    i = 0;
    for (const auto& e : array(*c, "/chern")) {
      const std::string w = at("/chern", i++);
      std::vector<std::size_t> simplex;
      std::size_t v = 0;
      for (const auto& x : array(field(e, "simplex", w), at(w, "simplex")))
        simplex.push_back(read_count(x, at(at(w, "simplex"), v++)));
      entries.emplace_back(std::move(simplex), read_vector(field(e, "value", w), at(w, "value")));
    }
    try {
      dq.chern = Cochain2::from_oriented(*dq.complex, dq.labelling.ambient_rank, entries);
    } catch (const Error& e) {
      throw InputError("/chern", e.what());
    }
    if (!is_cocycle(*dq.complex, *dq.chern)) throw InputError("/chern", "cochain is not closed");
  }
  return dq;
}

json write_decorated(const DecoratedQuotient& dq) {
  json doc = header("decorated_quotient");
  json faces = json::array();
  for (const auto& f : dq.poset.faces()) {
    json face{{"id", f.id}, {"depth", f.depth}, {"dim", f.dim}};
    if (f.noncompact) face["noncompact"] = true;
    faces.push_back(std::move(face));
  }
  json covers = json::array();
  for (const auto& [lo, up] : dq.poset.cover_ids()) covers.push_back({lo, up});
  doc["poset"] = {{"faces", faces}, {"covers", covers}};
  if (!(FacePoset::build(dq.poset.faces(), dq.poset.cover_ids()) == dq.poset)) {
    json support = json::object();
    for (const auto& [id, set] : dq.poset.support_ids()) support[id] = set;
    doc["poset"]["support"] = support;
  }
  json labels = json::object();
  for (const auto& [id, w] : dq.labelling.labels) labels[id] = write_vector(w.rep());
  doc["labelling"] = {{"rank", std::to_string(dq.labelling.ambient_rank)}, {"labels", labels}};
  if (dq.complex) doc["complex"] = write_complex(*dq.complex);
  if (dq.chern && dq.complex) {
    json entries = json::array();
    const auto& tris = dq.complex->simplices(2);
    for (std::size_t i = 0; i < tris.size(); ++i) {
      bool zero = true;
      for (const auto& e : dq.chern->value(i)) zero = zero && e == 0;
      if (!zero) entries.push_back({{"simplex", tris[i]}, {"value", write_vector(dq.chern->value(i))}});
    }
    doc["chern"] = entries;
  }
  return doc;
}

Expr read_expr(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InputError(where, "an expression is a non-empty array");
  const std::string op = read_string(j[0], at(where, 0));
  auto arg = [&](std::size_t i) {
    if (i >= j.size()) throw InputError(where, "'" + op + "' is missing an argument");
    return read_expr(j[i], at(where, i));
  };
  auto exact = [&](std::size_t n) {
    if (j.size() != n + 1)
      throw InputError(where, "'" + op + "' takes " + std::to_string(n) + " arguments");
  };
  if (op == "const") {
    if (j.size() != 2 && j.size() != 3) throw InputError(where, "'const' takes re and optional im");
    const double re = read_double(j[1], at(where, 1));
    const double im = j.size() == 3 ? read_double(j[2], at(where, 2)) : 0.0;
    return Expr::constant({re, im});
  }
  if (op == "var") {
    exact(2);
    const std::string kind = read_string(j[1], at(where, 1));
    const std::size_t index = read_count(j[2], at(where, 2));
    if (kind == "s") return Expr::s(index);
    if (kind == "x") return Expr::x(index);
    throw InputError(at(where, 1), "variable kind must be 's' or 'x'");
  }
  if (op == "add" || op == "mul") {
    std::vector<Expr> args;
    for (std::size_t i = 1; i < j.size(); ++i) args.push_back(arg(i));
    if (args.empty()) throw InputError(where, "'" + op + "' needs at least one argument");
    return op == "add" ? Expr::add(std::move(args)) : Expr::mul(std::move(args));
  }
  if (op == "sub") {
    exact(2);
    return Expr::sub(arg(1), arg(2));
  }
  if (op == "neg") {
    exact(1);
    return Expr::neg(arg(1));
  }
  if (op == "exp") {
    exact(1);
    return Expr::exp(arg(1));
  }
  if (op == "pow") {
    exact(2);
    const std::size_t n = read_count(j[2], at(where, 2));
    if (n > 64) throw InputError(at(where, 2), "exponent too large");
    return Expr::pow(arg(1), static_cast<unsigned>(n));
  }
  throw InputError(at(where, 0), "unknown operation '" + op + "'");
}

json write_expr(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Const: {
      json out = {"const", e.value().real()};
      if (e.value().imag() != 0) out.push_back(e.value().imag());
      return out;
    }
    case Expr::Op::VarS: return {"var", "s", e.index()};
    case Expr::Op::VarX: return {"var", "x", e.index()};
    case Expr::Op::Pow: return {"pow", write_expr(e.children()[0]), e.exponent()};
    default: break;
  }
  static const std::map<Expr::Op, std::string> names = {
      {Expr::Op::Add, "add"}, {Expr::Op::Sub, "sub"}, {Expr::Op::Mul, "mul"},
      {Expr::Op::Neg, "neg"}, {Expr::Op::Exp, "exp"}};
  json out = json::array({names.at(e.op())});
  for (const auto& c : e.children()) out.push_back(write_expr(c));
  return out;
}

namespace {

std::vector<Expr> read_exprs(const json& j, const std::string& where) {
  std::vector<Expr> out;
  std::size_t i = 0;
  for (const auto& e : array(j, where)) out.push_back(read_expr(e, at(where, i++)));
  return out;
}

json write_exprs(const std::vector<Expr>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(write_expr(e));
  return out;
}

}  // namespace

ModelMapSpec read_model_spec(const json& doc) {
  expect_kind(doc, "model_spec");
  ModelMapSpec spec;
  const json& shape = field(doc, "shape", "");
  auto count = [&](const char* key) { return read_count(field(shape, key, "/shape"), at("/shape", key)); };
  spec.shape = {count("n"), count("l"), count("m"), count("n_prime"), count("l_prime"),
                count("m_prime"), count("k")};
  spec.rho = read_matrix(field(doc, "rho", ""), "/rho");
  spec.A = read_exprs(field(doc, "A", ""), "/A");
  spec.x_prime = read_exprs(field(doc, "x_prime", ""), "/x_prime");
  if (auto o = optional_field(doc, "f_override"))
    spec.f_override = ModelMapSpec::Override{
        read_exprs(field(*o, "A", "/f_override"), "/f_override/A"),
        read_exprs(field(*o, "x_prime", "/f_override"), "/f_override/x_prime")};
  if (auto p = optional_field(doc, "probes")) {
    std::size_t i = 0;
    for (const auto& q : array(*p, "/probes")) {
      const std::string w = at("/probes", i++);
      spec.probes.push_back({read_doubles(field(q, "s", w), at(w, "s")),
                             read_doubles(field(q, "x", w), at(w, "x"))});
    }
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    throw InputError("", e.what());
  }
  return spec;
}

json write_model_spec(const ModelMapSpec& spec) {
  json doc = header("model_spec");
  const ModelShape& s = spec.shape;
  doc["shape"] = {{"n", s.n}, {"l", s.l}, {"m", s.m}, {"n_prime", s.n2},
                  {"l_prime", s.l2}, {"m_prime", s.m2}, {"k", s.k}};
  doc["rho"] = write_matrix(spec.rho);
  doc["A"] = write_exprs(spec.A);
  doc["x_prime"] = write_exprs(spec.x_prime);
  if (spec.f_override)
    doc["f_override"] = {{"A", write_exprs(spec.f_override->A)},
                         {"x_prime", write_exprs(spec.f_override->x_prime)}};
  if (!spec.probes.empty()) {
    json probes = json::array();
    for (const auto& p : spec.probes) probes.push_back({{"s", p.s}, {"x", p.x}});
    doc["probes"] = probes;
  }
  return doc;
}

OneDQuery read_oned_query(const json& doc) {
  expect_kind(doc, "oned_query");
  OneDQuery q;
  try {
    q.topology = parse_topology(read_string(field(doc, "topology", ""), "/topology"));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError("/topology", e.what());
  }
  q.d = read_count(field(doc, "d", ""), "/d");
  std::size_t i = 0;
  for (const auto& l : array(field(doc, "labels", ""), "/labels")) {
    RealWeight w = read_weight(l, at("/labels", i));
    if (w.ambient_rank() != q.d) throw InputError(at("/labels", i), "label has the wrong rank");
    q.labels.push_back(std::move(w));
    ++i;
  }
  return q;
}

json write_oned_query(const OneDQuery& q) {
  json doc = header("oned_query");
  doc["topology"] = to_string(q.topology);
  doc["d"] = std::to_string(q.d);
  json labels = json::array();
  for (const auto& l : q.labels) labels.push_back(write_vector(l.rep()));
  doc["labels"] = labels;
  return doc;
}

PairQuery read_pair_query(const json& doc) {
  expect_kind(doc, "pair_query");
  PairQuery q{read_weight(field(doc, "a1", ""), "/a1"), read_weight(field(doc, "a2", ""), "/a2"),
              true};
  if (q.a1.ambient_rank() != q.a2.ambient_rank()) throw InputError("/a2", "rank differs from a1");
  if (q.a1.ambient_rank() < 2) throw InputError("/a1", "pairs need rank at least 2");
  if (auto s = optional_field(doc, "allow_swap")) {
    if (!s->is_boolean()) throw InputError("/allow_swap", "expected a boolean");
    q.allow_swap = s->get<bool>();
  }
  return q;
}

json write_pair_query(const PairQuery& q) {
  json doc = header("pair_query");
  doc["a1"] = write_vector(q.a1.rep());
  doc["a2"] = write_vector(q.a2.rep());
  doc["allow_swap"] = q.allow_swap;
  return doc;
}

json report_json(const PosetReport& r) {
  json out = json::array();
  for (const auto& v : r.violations)
    out.push_back({{"kind", v.kind}, {"faces", v.face_ids}, {"message", v.message}});
  return out;
}

json report_json(const UnimodularityReport& r) {
  json out = json::array();
  for (const auto& f : r.failures) out.push_back({{"face", f.face_id}, {"reason", f.reason}});
  return out;
}

json report_json(const OneDFamily& f) {
  json out{{"family", to_string(f.kind)}, {"topology", to_string(f.topology)}};
  if (f.kind == OneDKind::TwoEndsLens) {
    out["k"] = write_integer(f.k);
    out["w"] = write_integer(f.w);
    out["w_class"] = write_vector(f.w_class);
  }
  return out;
}

json report_json(const TrichotomyResult& t) {
  json out{{"case", to_string(t.pair_case)}, {"witness", write_matrix(t.witness)},
           {"sign1", t.sign1}, {"sign2", t.sign2}, {"swapped", t.swapped}};
  if (t.pair_case == PairCase::IndexPair) {
    out["k"] = write_integer(t.k);
    out["w"] = write_integer(t.w);
  }
  return out;
}

json report_json(const IsoResult& r) {
  json out{{"verdict", to_string(r.verdict)}, {"bijections_examined", r.bijections_examined}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  if (r.iso) {
    json map = json::object();
    for (const auto& [a, b] : r.iso->face_map) map[a] = b;
    out["face_map"] = map;
    out["cohomology"] = to_string(r.iso->cohomology);
    if (r.iso->automorphism) out["automorphism"] = write_matrix(*r.iso->automorphism);
  }
  return out;
}

json report_json(const H2Structure& h) {
  return {{"free_rank", h.free_rank}, {"torsion", write_vector(h.torsion)}};
}

json report_json(const OrbitTypeData& o) {
  json strata = json::array();
  for (const auto& s : o.strata)
    strata.push_back({{"face", s.face_id},
                      {"stabilizer_rank", s.stabilizer.rank()},
                      {"stabilizer", write_matrix(s.stabilizer.basis())},
                      {"free", s.is_free}});
  return {{"rank", std::to_string(o.ambient_rank)}, {"strata", strata},
          {"fixed_points", o.fixed_points}};
}

json report_json(const DescentReport& r) {
  return {{"samples", r.samples},
          {"cut_square", r.cut_square},
          {"quotient_square", r.quotient_square},
          {"projection", r.projection},
          {"equivariance", r.equivariance},
          {"round_trip", r.round_trip},
          {"unit_drift", r.unit_drift},
          {"max_residual", r.max_residual()},
          {"failures", r.failures}};
}

json report_json(const HadamardReport& r) {
  return {{"j", r.j}, {"evaluated", r.evaluated}, {"min_estimate", r.min_estimate},
          {"failures", r.failures}};
}

json report_json(const JacobianReport& r) {
  return {{"evaluated", r.evaluated}, {"min_singular_value", r.min_singular_value},
          {"failures", r.failures}};
}

}  // namespace torusq
