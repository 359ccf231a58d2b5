#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "aprat/affine.hpp"
#include "aprat/bounds.hpp"
#include "aprat/rationality.hpp"
#include "aprat/version.hpp"

namespace aprat::report {

using json = nlohmann::json;

inline json big(const BigInt& x) {
  if (x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  return x.str();
}

inline json envelope(const std::string& kind) {
  return json{{"schema", kSchemaVersion}, {"kind", kind}, {"tool_version", kToolVersion}};
}

inline json to_json(const RationalityCounts& c) {
  return json{{"parat", c.n_parat},       {"pprime_parat", c.n_pprime_parat}, {"b0", c.n_b0_pprime_parat}, {"cl_pareg", c.n_cl_pareg},
              {"cl_preg", c.n_cl_preg}, {"prat", c.n_prat},                 {"k", c.k}};
}

inline json to_json(const RationalityProfile& r) {
  std::vector<int> pprime(r.p_prime_degree.begin(), r.p_prime_degree.end());
  return json{{"fingerprint", r.fingerprint}, {"p", r.p},
              {"counts", to_json(r.counts)},  {"levels", r.level},
              {"p_prime_degree", pprime},     {"blocks", r.block},
              {"principal_block", r.principal_block}, {"blocks_degenerate", r.blocks_degenerate},
              {"class_levels", r.class_level}};
}

inline json to_json(const DetectorVerdict& v) {
  return json{{"p", v.p},
              {"count", v.count},
              {"in_sp", v.in_sp},
              {"predicted", v.predicted_cyclic ? "cyclic" : "noncyclic"},
              {"actual", v.actual_cyclic ? "cyclic" : "noncyclic"},
              {"agree", v.agree},
              {"sylow_order", v.sylow_order}};
}

inline json to_json(const McKayNavarroReport& r) {
  return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}, {"normalizer_order", r.normalizer_order}, {"quotient_order", r.quotient_order}};
}

inline json to_json(const BoundReport& r) {
  return json{{"p", r.p},           {"count", r.count},     {"bound", r.bound},   {"holds", r.bound_holds},
              {"equality", r.equality}, {"frobenius_shape", r.frobenius_shape}, {"ok", r.ok}, {"detail", r.detail}};
}

inline json to_json(const ClassSideReport& r) {
  json q = json::array();
  for (const auto& x : r.quotients)
    q.push_back({{"n_order", x.n_order}, {"lhs", x.lhs}, {"quotient", x.quotient}, {"orbits", x.orbits}, {"holds", x.holds}});
  return json{{"ok", r.ok},         {"cl_pareg", r.n_cl_pareg}, {"parat", r.n_parat}, {"cl_preg", r.n_cl_preg},
              {"prat", r.n_prat}, {"quotients", q},           {"violations", r.violations}};
}

inline json to_json(const BrauerPermutationReport& r) {
  json c = json::array();
  for (const auto& x : r.checks) c.push_back({x.m, x.fixed_characters, x.fixed_classes});
  return json{{"ok", r.ok}, {"tested", r.checks.size()}, {"checks", c}};
}

inline json to_json(const OverNormalReport& r) {
  return json{{"ok", r.ok}, {"pairs_checked", r.pairs_checked}, {"violations", r.violations}};
}

inline json to_json(const ClassCountReport& r) {
  json orbits = json::array();
  for (const auto& o : r.orbits)
    orbits.push_back({{"representative", o.representative}, {"size", o.size}, {"stabilizer_order", o.stabilizer_order}, {"stabilizer_classes", o.stabilizer_classes}});
  json j{{"p", r.p},
         {"n", r.n},
         {"order_h", r.order_h},
         {"k_h", r.k_h},
         {"k", r.k_hv},
         {"method", r.method},
         {"orbit_count", r.orbits.size()},
         {"clifford_lower", r.clifford_lower()},
         {"clifford_holds", r.clifford_holds}};
  if (r.sandwich_checked) j["sandwich_holds"] = r.sandwich_holds;
  j["orbits"] = orbits;
  return j;
}

inline json to_json(const LowerBoundCertificate& c) {
  return json{{"p", c.p},           {"n", c.n},         {"order_h", c.order_h}, {"k_h", c.k_h},
              {"orbits", big(c.orbits)}, {"bound", big(c.bound)}, {"exceeds_p", c.exceeds_p}};
}

inline json to_json(const PrimeConditionVerdict& v) {
  json j{{"p", v.p}, {"i", v.cond_i}, {"ii", v.cond_ii}, {"any", v.any}, {"caveat", v.caveat}};
  if (v.cond_i) j["m_i"] = v.witness_i;
  if (v.cond_ii) j["m_ii"] = v.witness_ii;
  return j;
}

inline json to_json(const SpScanReport& r) {
  return json{{"p", r.p}, {"n", r.n}, {"k", r.k_hv}, {"sp", r.sp}, {"in_sp", r.in_sp}, {"counterexample", r.counterexample}};
}

inline json to_json(const GrowthCheck& g) { return json{{"d", g.d}, {"partitions", big(g.partitions)}, {"holds", g.holds}}; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Flat CSV: header from the first row's keys, scalars only.
inline std::string to_csv(const std::vector<std::pair<std::string, json>>& rows) {
  if (rows.empty()) return "";
  std::ostringstream os;
  std::vector<std::string> keys{"id"};
  for (auto it = rows.front().second.begin(); it != rows.front().second.end(); ++it) keys.push_back(it.key());
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_field(keys[i]);
  os << "\n";
  for (const auto& [id, row] : rows) {
    os << csv_field(id);
    for (std::size_t i = 1; i < keys.size(); ++i) {
      os << ",";
      auto it = row.find(keys[i]);
      if (it == row.end() || it->is_null()) continue;
      os << csv_field(it->is_string() ? it->get<std::string>() : it->dump());
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace aprat::report
