#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "aprat/affine.hpp"
#include "aprat/group_io.hpp"
#include "aprat/modular.hpp"
#include "aprat/version.hpp"

namespace aprat::corpus {

using json = nlohmann::json;

struct GroupEntry {
  std::string id;
  json source;                       // expression string or group JSON
  std::vector<std::uint64_t> primes;  // empty: every prime dividing |G|
  std::vector<std::string> tags;
  bool has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

struct AffineEntry {
  std::string id;
  json source;  // {"p", "n", "generators"}
  std::vector<std::string> tags;
};

struct Manifest {
  std::string version;
  std::vector<GroupEntry> groups;
  std::vector<AffineEntry> affine;

  const GroupEntry* find_group(const std::string& id) const {
    for (const auto& e : groups)
      if (e.id == id) return &e;
    return nullptr;
  }
  const AffineEntry* find_affine(const std::string& id) const {
    for (const auto& e : affine)
      if (e.id == id) return &e;
    return nullptr;
  }
};

inline Group build(const GroupEntry& e) {
  try {
    return io::group_from_json(e.source, e.id);
  } catch (const InputError& err) {
    std::string msg = err.what();
    throw InputError(msg.rfind(e.id, 0) == 0 ? msg : e.id + ": " + msg);
  }
}

inline MatGroup build(const AffineEntry& e) { return io::matgroup_from_json(e.source, e.id); }

// Primes to test for g: the listed ones that divide |G|, or all of them.
inline std::vector<std::uint64_t> primes_for(const GroupEntry& e, const Group& g) {
  std::vector<std::uint64_t> out;
  if (e.primes.empty()) {
    for (auto [p, k] : factorize(g.order())) out.push_back(p);
  } else {
    for (auto p : e.primes)
      if (g.order() % p == 0) out.push_back(p);
  }
  return out;
}

inline json to_json(const Manifest& m) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "corpus_manifest";
  j["version"] = m.version;
  j["groups"] = json::array();
  for (const auto& e : m.groups) {
    json x{{"id", e.id}, {"group", e.source}};
    if (!e.primes.empty()) x["primes"] = e.primes;
    if (!e.tags.empty()) x["tags"] = e.tags;
    j["groups"].push_back(x);
  }
  j["affine"] = json::array();
  for (const auto& e : m.affine) {
    json x{{"id", e.id}, {"matgroup", e.source}};
    if (!e.tags.empty()) x["tags"] = e.tags;
    j["affine"].push_back(x);
  }
  return j;
}

namespace detail {

inline std::vector<std::string> string_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw InputError(path + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

}  // namespace detail

// Checks structure, unique ids and expression syntax. Groups are built lazily.
inline Manifest from_json(const json& j, const std::filesystem::path& base = {}) {
  if (!j.is_object()) throw InputError("manifest: expected an object");
  if (auto s = j.find("schema"); s != j.end() && (!s->is_number_integer() || s->get<int>() != kSchemaVersion))
    throw InputError("manifest.schema: unsupported schema version");
  Manifest m;
  m.version = j.value("version", "unversioned");
  std::set<std::string> ids;
  auto take_id = [&](const json& x, const std::string& path) {
    if (!x.is_object() || !x.contains("id") || !x["id"].is_string()) throw InputError(path + ": missing string field 'id'");
    auto id = x["id"].get<std::string>();
    if (id.empty()) throw InputError(path + ".id: empty id");
    if (!ids.insert(id).second) throw InputError(path + ".id: duplicate id '" + id + "'");
    return id;
  };
  auto load_file = [&](const json& f, const std::string& path) {
    if (!f.is_string()) throw InputError(path + ".file: expected a path");
    auto p = std::filesystem::path(f.get<std::string>());
    if (p.is_relative()) p = base / p;
    return io::parse_json_text(io::read_file(p.string()), p.string());
  };
  if (auto g = j.find("groups"); g != j.end()) {
    if (!g->is_array()) throw InputError("manifest.groups: expected an array");
    for (std::size_t i = 0; i < g->size(); ++i) {
      std::string path = "manifest.groups[" + std::to_string(i) + "]";
      const json& x = (*g)[i];
      GroupEntry e;
      e.id = take_id(x, path);
      if (x.contains("file")) e.source = load_file(x["file"], path);
      else if (x.contains("group")) e.source = x["group"];
      else throw InputError(path + ": needs 'group' or 'file'");
      if (e.source.is_string()) io::parse_expression(e.source.get<std::string>());
      if (auto p = x.find("primes"); p != x.end()) {
        if (!p->is_array()) throw InputError(path + ".primes: expected an array");
        for (std::size_t k = 0; k < p->size(); ++k) {
          const json& v = (*p)[k];
          if (!v.is_number_unsigned() || !is_prime(v.get<std::uint64_t>()))
            throw InputError(path + ".primes[" + std::to_string(k) + "]: expected a prime");
          e.primes.push_back(v.get<std::uint64_t>());
        }
      }
      if (x.contains("tags")) e.tags = detail::string_list(x["tags"], path + ".tags");
      m.groups.push_back(std::move(e));
    }
  }
  if (auto a = j.find("affine"); a != j.end()) {
    if (!a->is_array()) throw InputError("manifest.affine: expected an array");
    for (std::size_t i = 0; i < a->size(); ++i) {
      std::string path = "manifest.affine[" + std::to_string(i) + "]";
      const json& x = (*a)[i];
      AffineEntry e;
      e.id = take_id(x, path);
      if (x.contains("file")) e.source = load_file(x["file"], path);
      else if (x.contains("matgroup")) e.source = x["matgroup"];
      else throw InputError(path + ": needs 'matgroup' or 'file'");
      if (!e.source.is_object()) throw InputError(path + ".matgroup: expected an object");
      if (x.contains("tags")) e.tags = detail::string_list(x["tags"], path + ".tags");
      m.affine.push_back(std::move(e));
    }
  }
  return m;
}

inline Manifest default_manifest() {
  Manifest m;
  m.version = "default-1";
  auto add = [&](std::string id, std::string expr, std::vector<std::string> tags = {}) {
    m.groups.push_back({std::move(id), json(std::move(expr)), {}, std::move(tags)});
  };
  auto n = [](std::uint64_t x) { return std::to_string(x); };

  add("trivial", "cyclic(1)", {"cyclic", "abelian"});
  for (std::uint64_t k : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 25, 27, 30, 32, 49, 60, 64, 81, 105, 121, 125, 128, 243, 729}) {
    std::vector<std::string> tags{"cyclic", "abelian"};
    if (factorize(k).size() == 1) tags.push_back("abelian_pgroup");
    add("C" + n(k), "cyclic(" + n(k) + ")", tags);
  }
  for (std::uint64_t k : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 30, 50, 100, 250, 500, 1000}) add("D" + n(2 * k), "dihedral(" + n(k) + ")", {"dihedral"});
  for (std::uint64_t k : {3, 4, 5, 6}) add("sym" + n(k), "sym(" + n(k) + ")", {"symmetric"});
  for (std::uint64_t k : {4, 5, 6}) add("alt" + n(k), "alt(" + n(k) + ")", {"alternating"});
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61})
    for (std::uint64_t e = 2; e < p; ++e)
      if ((p - 1) % e == 0) add("frob" + n(p) + "_1_" + n(e), "frobenius(" + n(p) + ",1," + n(e) + ")", {"frobenius"});
  for (auto [p, k, e] : std::vector<std::tuple<int, int, int>>{{3, 2, 2}, {5, 2, 2}, {5, 2, 4}, {7, 2, 6}, {3, 3, 2}, {17, 2, 4}})
    add("frob" + n(p) + "_" + n(k) + "_" + n(e), "frobenius(" + n(p) + "," + n(k) + "," + n(e) + ")", {"frobenius"});
  add("Q8", "q8", {"pgroup"});
  add("SL2_5", "sl2_5");
  add("navarro", "navarro", {"affine"});
  for (auto [id, expr] : std::vector<std::pair<std::string, std::string>>{
           {"C3xC3", "abelian(3,3)"}, {"C2xC2", "abelian(2,2)"}, {"C2xC4", "abelian(2,4)"}, {"C2xC8", "abelian(2,8)"},
           {"C2^3", "abelian(2,2,2)"}, {"C4xC4", "abelian(4,4)"}, {"C2^4", "abelian(2,2,2,2)"}, {"C3xC9", "abelian(3,9)"},
           {"C3^3", "abelian(3,3,3)"}, {"C9xC9", "abelian(9,9)"}, {"C5xC5", "abelian(5,5)"}, {"C7xC7", "abelian(7,7)"},
           {"C3xC27", "abelian(3,27)"}, {"C3^4", "abelian(3,3,3,3)"}, {"C5xC25", "abelian(5,25)"}, {"C27xC27", "abelian(27,27)"},
           {"C9^3", "abelian(9,9,9)"}, {"C3^6", "abelian(3,3,3,3,3,3)"}, {"C11xC11", "abelian(11,11)"}, {"C2^2xC8", "abelian(2,2,8)"}})
    add(id, expr, {"abelian", "abelian_pgroup"});
  for (auto [id, expr] : std::vector<std::pair<std::string, std::string>>{
           {"meta9_4", "metacyclic(9,4)"}, {"meta27_10", "metacyclic(27,10)"}, {"meta8_3", "metacyclic(8,3)"}, {"meta8_5", "metacyclic(8,5)"},
           {"meta16_5", "metacyclic(16,5)"}, {"meta16_7", "metacyclic(16,7)"}, {"meta25_6", "metacyclic(25,6)"}, {"ut3_3", "ut3(3)"},
           {"ut3_5", "ut3(5)"}})
    add(id, expr, {"pgroup"});
  for (auto [id, expr] : std::vector<std::pair<std::string, std::string>>{
           {"sym3xC4", "direct_product(sym(3),cyclic(4))"}, {"sym3xC2", "direct_product(sym(3),cyclic(2))"},
           {"sym3xsym3", "direct_product(sym(3),sym(3))"}, {"sym4xC3", "direct_product(sym(4),cyclic(3))"},
           {"sym4xC15", "direct_product(sym(4),cyclic(15))"}, {"alt4xC5", "direct_product(alt(4),cyclic(5))"},
           {"alt5xC2", "direct_product(alt(5),cyclic(2))"}, {"alt5xC3", "direct_product(alt(5),cyclic(3))"},
           {"Q8xC3", "direct_product(q8,cyclic(3))"}, {"frob5_1_4xC3", "direct_product(frobenius(5,1,4),cyclic(3))"},
           {"frob17_1_4xC2", "direct_product(frobenius(17,1,4),cyclic(2))"}, {"D8xC9", "direct_product(dihedral(4),cyclic(9))"},
           {"frob7_1_3xfrob5_1_2", "direct_product(frobenius(7,1,3),frobenius(5,1,2))"}, {"SL2_5xC7", "direct_product(sl2_5,cyclic(7))"},
           {"C3xC9xD10", "direct_product(abelian(3,9),dihedral(5))"}})
    add(id, expr, {"product"});
  add("affine_C5^2_C4", "affine(5,2,[[[2,0],[0,2]]])", {"affine"});
  add("affine_C3^2_Q8", "affine(3,2,[[[0,1],[-1,0]],[[1,1],[1,-1]]])", {"affine"});

  auto aff = [&](std::string id, std::uint64_t p, std::size_t dim, json gens, std::vector<std::string> tags = {}) {
    m.affine.push_back({std::move(id), json{{"p", p}, {"n", dim}, {"generators", std::move(gens)}}, std::move(tags)});
  };
  aff("sl2_5_gl2_11", 11, 2, "sl2_5", {"small"});
  aff("q8_gl2_3", 3, 2, json::parse("[[[0,1],[-1,0]],[[1,1],[1,-1]]]"), {"small"});
  aff("neg_gl2_3", 3, 2, "minus_identity", {"small"});
  aff("singer_gl2_2", 2, 2, json::parse("[[[0,1],[1,1]]]"), {"small"});
  aff("diag_gl2_5", 5, 2, json::parse("[[[2,0],[0,3]]]"), {"small"});
  aff("mono_gl2_7", 7, 2, json::parse("[[[3,0],[0,1]],[[0,1],[1,0]]]"), {"small"});
  aff("mono_gl3_5", 5, 3, json::parse("[[[0,1,0],[0,0,1],[1,0,0]],[[-1,0,0],[0,1,0],[0,0,1]]]"), {"small"});
  aff("sl2_5_gl2_19", 19, 2, "sl2_5", {"small"});
  aff("sl2_5_gl2_29", 29, 2, "sl2_5", {"small"});
  aff("line_13_3", 13, 1, json::parse("[[[3]]]"), {"small", "line"});
  aff("line_31_5", 31, 1, json::parse("[[[2]]]"), {"small", "line"});
  aff("neg_gl3_7207", 7207, 3, "minus_identity", {"large"});
  return m;
}

// "default" or a path to a manifest JSON file.
inline Manifest load_manifest(const std::string& arg) {
  if (arg.empty() || arg == "default") return default_manifest();
  auto base = std::filesystem::path(arg).parent_path();
  return from_json(io::parse_json_text(io::read_file(arg), arg), base);
}

}  // namespace aprat::corpus
