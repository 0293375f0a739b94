// JSON documents. Every document carries "version": "1" and a "kind";
// integers are written as strings so arbitrary precision survives, and
// either strings or numbers are accepted on input.
#pragma once

#include "torusq/classify.hpp"
#include "torusq/cutblow.hpp"
#include "torusq/labelling.hpp"
#include "torusq/models.hpp"

#include <json.hpp>

#include <string>

namespace torusq {

using json = nlohmann::json;

// Malformed input; `where` is a JSON-pointer-like location.
class InputError : public Error {
 public:
  InputError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where), detail_(what) {}
  const std::string& where() const { return where_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string where_;
  std::string detail_;
};

json parse_json(const std::string& text);
json load_json_file(const std::string& path);
// The "kind" field, after checking "version".
std::string document_kind(const json& doc);

Integer read_integer(const json& j, const std::string& where);
LatticeVector read_vector(const json& j, const std::string& where);
json write_integer(const Integer& v);
json write_vector(const LatticeVector& v);
json write_matrix(const IntegerMatrix& m);
IntegerMatrix read_matrix(const json& j, const std::string& where);

SimplicialComplex read_complex(const json& j, const std::string& where);
json write_complex(const SimplicialComplex& k);

DecoratedQuotient read_decorated(const json& doc);
json write_decorated(const DecoratedQuotient& dq);

Expr read_expr(const json& j, const std::string& where);
json write_expr(const Expr& e);

ModelMapSpec read_model_spec(const json& doc);
json write_model_spec(const ModelMapSpec& spec);

struct OneDQuery {
  OneDTopology topology = OneDTopology::Interval;
  std::size_t d = 0;
  std::vector<RealWeight> labels;
};
OneDQuery read_oned_query(const json& doc);
json write_oned_query(const OneDQuery& q);

struct PairQuery {
  RealWeight a1{1};
  RealWeight a2{1};
  bool allow_swap = true;
};
PairQuery read_pair_query(const json& doc);
json write_pair_query(const PairQuery& q);

// Reports.
json report_json(const PosetReport& r);
json report_json(const UnimodularityReport& r);
json report_json(const OneDFamily& f);
json report_json(const TrichotomyResult& t);
json report_json(const IsoResult& r);
json report_json(const H2Structure& h);
json report_json(const OrbitTypeData& o);
json report_json(const DescentReport& r);
json report_json(const HadamardReport& r);
json report_json(const JacobianReport& r);

}  // namespace torusq
