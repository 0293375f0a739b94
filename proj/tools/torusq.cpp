// torusq: check, classify and compare decorated quotients of torus actions,
// and verify model maps numerically.
//
// Exit codes: 0 success, 1 definite negative, 2 input error, 3 inconclusive.

#include "torusq/classify.hpp"
#include "torusq/cutblow.hpp"
#include "torusq/io.hpp"
#include "torusq/models.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

using namespace torusq;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kInconclusive = 3 };

struct Options {
  bool json_out = false;
  bool up_to_aut = false;
  std::size_t bound = 0;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  double tol = 1e-9;
  std::string complex_map;
  std::vector<std::string> paths;
};

void emit(const Options& o, const json& report, const std::string& text) {
  if (o.json_out)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

json load(const std::string& path) {
  spdlog::debug("reading {}", path);
  return load_json_file(path);
}

int cmd_check(const Options& o) {
  const DecoratedQuotient dq = read_decorated(load(o.paths[0]));
  const PosetReport poset = validate_poset(dq.poset);
  json report{{"poset_violations", report_json(poset)}};
  std::string text;
  for (const auto& v : poset.violations) text += "poset: " + v.kind + " at " + join(v.face_ids) + ": " + v.message + "\n";
  bool ok = poset.valid();
  if (ok) {
    try {
      const UnimodularityReport u = check_unimodular(dq);
      report["unimodularity_failures"] = report_json(u);
      for (const auto& f : u.failures) text += "labels: " + f.reason + " at " + f.face_id + "\n";
      ok = u.unimodular();
      if (ok) report["fixed_points"] = fixed_point_count(dq);
    } catch (const Error& e) {
      report["labelling_error"] = e.what();
      text += std::string("labels: ") + e.what() + "\n";
      ok = false;
    }
  }
  report["valid"] = ok;
  if (ok) text += "valid, unimodular, " + report["fixed_points"].dump() + " fixed points";
  else text += "invalid";
  emit(o, report, text);
  return ok ? kOk : kNegative;
}

int cmd_classify1d(const Options& o) {
  const json doc = load(o.paths[0]);
  const std::string kind = document_kind(doc);
  if (kind == "pair_query") {
    const PairQuery q = read_pair_query(doc);
    const TrichotomyResult t = canonical_pair_form(q.a1, q.a2, q.allow_swap);
    std::string text = to_string(t.pair_case);
    if (t.pair_case == PairCase::IndexPair) text += " k=" + t.k.str() + " w=" + t.w.str();
    emit(o, report_json(t), text);
    return kOk;
  }
  OneDFamily family;
  try {
    if (kind == "oned_query") {
      const OneDQuery q = read_oned_query(doc);
      family = classify_1d(q.topology, q.labels, q.d);
    } else if (kind == "decorated_quotient") {
      family = classify_1d(read_decorated(doc));
    } else {
      throw InputError("/kind", "classify1d reads oned_query, pair_query or decorated_quotient");
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    emit(o, json{{"error", e.what()}}, std::string("not classifiable: ") + e.what());
    return kNegative;
  }
  std::string text = to_string(family.kind);
  if (family.kind == OneDKind::TwoEndsLens) text += " k=" + family.k.str() + " w=" + family.w.str();
  emit(o, report_json(family), text);
  return kOk;
}

std::vector<std::size_t> parse_map(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string item = text.substr(pos, next - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("--complex-map", "expected comma-separated vertex indices");
    out.push_back(std::stoul(item));
    pos = next + 1;
  }
  return out;
}

int cmd_iso(const Options& o) {
  const DecoratedQuotient d1 = read_decorated(load(o.paths[0]));
  const DecoratedQuotient d2 = read_decorated(load(o.paths[1]));
  for (const auto* d : {&d1, &d2}) {
    if (!validate_poset(d->poset).valid()) throw InputError("", "invalid face poset");
    if (!check_unimodular(*d).unimodular()) throw InputError("", "labelling is not unimodular");
  }
  IsoOptions options;
  options.max_bijections = o.bound;
  if (!o.complex_map.empty()) options.complex_map = parse_map(o.complex_map);
  spdlog::debug("iso: {} faces, up-to-aut={}, bound={}", d1.poset.size(), o.up_to_aut, o.bound);
  const IsoResult r = o.up_to_aut ? iso_up_to_torus_automorphism(d1, d2, options)
                                  : decorated_iso(d1, d2, options);
  spdlog::info("iso: examined {} face bijections", r.bijections_examined);
  std::string text = to_string(r.verdict);
  if (!r.reason.empty()) text += ": " + r.reason;
  if (r.iso) {
    for (const auto& [a, b] : r.iso->face_map) text += "\n  " + a + " -> " + b;
    if (r.iso->automorphism) text += "\n  g = " + to_string(*r.iso->automorphism);
    text += "\n  cohomology: " + to_string(r.iso->cohomology);
  }
  emit(o, report_json(r), text);
  switch (r.verdict) {
    case IsoVerdict::Found: return kOk;
    case IsoVerdict::None: return kNegative;
    case IsoVerdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int cmd_cohomology(const Options& o) {
  const json doc = load(o.paths[0]);
  document_kind(doc);
  if (!doc.contains("complex")) throw InputError("", "missing field 'complex'");
  const SimplicialComplex k = read_complex(doc["complex"], "/complex");
  std::size_t d;
  if (doc.contains("d"))
    d = static_cast<std::size_t>(read_integer(doc["d"], "/d"));
  else if (doc.contains("labelling") && doc["labelling"].contains("rank"))
    d = static_cast<std::size_t>(read_integer(doc["labelling"]["rank"], "/labelling/rank"));
  else
    throw InputError("", "missing field 'd'");
  const H2Structure h = h2(k, d);
  std::vector<std::string> torsion;
  for (const auto& t : h.torsion) torsion.push_back(t.str());
  emit(o, report_json(h),
       "H^2 free rank " + std::to_string(h.free_rank) + ", torsion [" + join(torsion) + "]");
  return kOk;
}

int cmd_cut(const Options& o) {
  const DecoratedQuotient dq = read_decorated(load(o.paths[0]));
  OrbitTypeData data;
  try {
    data = cut(dq);
  } catch (const Error& e) {
    emit(o, json{{"error", e.what()}}, e.what());
    return kNegative;
  }
  std::string text;
  for (const auto& s : data.strata)
    text += s.face_id + ": stabilizer rank " + std::to_string(s.stabilizer.rank()) +
            (s.is_free ? " (free)" : "") + "\n";
  text += std::to_string(data.strata.size()) + " strata, " +
          std::to_string(data.fixed_points.size()) + " fixed points";
  emit(o, report_json(data), text);
  return kOk;
}

int cmd_roundtrip(const Options& o) {
  const DecoratedQuotient dq = read_decorated(load(o.paths[0]));
  try {
    const DecoratedQuotient back = blowup(cut(dq), dq.poset);
    const bool same = back == dq;
    emit(o, json{{"identical", same}}, same ? "round trip: identical" : "round trip: differs");
    return same ? kOk : kNegative;
  } catch (const Error& e) {
    emit(o, json{{"error", e.what()}}, e.what());
    return kNegative;
  }
}

int cmd_verify_models(const Options& o) {
  const ModelMapSpec spec = read_model_spec(load(o.paths[0]));
  VerifyOptions v;
  v.seed = o.seed;
  v.samples = o.samples;
  v.tol = o.tol;
  spdlog::debug("verify-models: shape {}, seed {}, {} samples", spec.shape.to_string(), v.seed, v.samples);
  json report;
  std::string text;
  bool ok = true;
  try {
    const DescentReport d = verify_descent(spec, v);
    report["descent"] = report_json(d);
    ok = ok && d.passed();
    char buf[160];
    std::snprintf(buf, sizeof buf, "descent: max residual %.3e, unit drift %.3e", d.max_residual(),
                  d.unit_drift);
    text += buf;
    for (const auto& f : d.failures) text += "\n  " + f;
    report["hadamard"] = json::array();
    for (std::size_t j = 0; j < spec.shape.k; ++j) {
      const HadamardReport h = hadamard_positivity(spec, j, v);
      report["hadamard"].push_back(report_json(h));
      ok = ok && h.passed();
      std::snprintf(buf, sizeof buf, "\nhadamard h_%zu: min %.3e over %zu points", j, h.min_estimate,
                    h.evaluated);
      text += buf;
      for (const auto& f : h.failures) text += "\n  " + f;
    }
    const JacobianReport jac = jacobian_check(spec, v);
    report["jacobian"] = report_json(jac);
    ok = ok && jac.passed();
    std::snprintf(buf, sizeof buf, "\njacobian: min singular value %.3e", jac.min_singular_value);
    text += buf;
    for (const auto& f : jac.failures) text += "\n  " + f;
  } catch (const ModelDomainError& e) {
    throw InputError("", std::string("spec leaves its domain: ") + e.what());
  }
  report["passed"] = ok;
  text += ok ? "\npassed" : "\nFAILED";
  emit(o, report, text);
  return ok ? kOk : kNegative;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("torusq");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("TORUSQ_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Invariants of locally standard torus actions"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json_out, "Print JSON reports");

  auto one_path = [&](CLI::App* sub) {
    sub->add_option("file", o.paths, "Input document")->required()->expected(1);
    sub->add_flag("--json", o.json_out, "Print JSON reports");
  };
  auto* check = app.add_subcommand("check", "Validate a decorated quotient");
  one_path(check);
  auto* classify = app.add_subcommand("classify1d", "Classify a one-dimensional quotient");
  one_path(classify);
  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two decorated quotients");
  iso->add_option("files", o.paths, "Two decorated quotients")->required()->expected(2);
  iso->add_flag("--up-to-aut", o.up_to_aut, "Allow an automorphism of the torus");
  iso->add_option("--bound", o.bound, "Give up after this many face bijections (0: no limit)");
  iso->add_option("--complex-map", o.complex_map, "Vertex map between the complexes, comma separated");
  iso->add_flag("--json", o.json_out, "Print JSON reports");
  auto* cohom = app.add_subcommand("cohomology", "Degree-2 cohomology of a complex");
  one_path(cohom);
  auto* cutc = app.add_subcommand("cut", "Orbit-type table of the cut space");
  one_path(cutc);
  auto* round = app.add_subcommand("roundtrip", "Check blowup(cut(D)) = D");
  one_path(round);
  auto* models = app.add_subcommand("verify-models", "Numerically verify a model map spec");
  one_path(models);
  models->add_option("--seed", o.seed, "Sampling seed");
  models->add_option("--samples", o.samples, "Number of sample points");
  models->add_option("--tol", o.tol, "Residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(o);
    if (*classify) return cmd_classify1d(o);
    if (*iso) return cmd_iso(o);
    if (*cohom) return cmd_cohomology(o);
    if (*cutc) return cmd_cut(o);
    if (*round) return cmd_roundtrip(o);
    if (*models) return cmd_verify_models(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
