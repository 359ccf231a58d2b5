#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aprat/character_table.hpp"
#include "aprat/rationality.hpp"
#include "aprat/subgroups.hpp"
#include "aprat/version.hpp"

namespace aprat::io {

using json = nlohmann::json;

// Least c | n with v in Q(zeta_c).
inline std::uint64_t value_conductor(const CyclotomicValue& v) {
  const std::uint64_t n = v.conductor_n();
  std::uint64_t c = 1;
  for (auto [q, k] : factorize(n)) {
    unsigned a = 0;
    for (; a < k; ++a) {
      auto gens = galois_generators(n, q, a);
      if (std::all_of(gens.begin(), gens.end(), [&](std::uint64_t m) { return v.galois(static_cast<std::int64_t>(m)) == v; })) break;
    }
    for (unsigned i = 0; i < a; ++i) c *= q;
  }
  return c;
}

inline std::vector<Point> images_of(const Permutation& x) { return {x.images().begin(), x.images().end()}; }

inline constexpr std::uint64_t kMaxExportCoefficients = 20'000'000;

inline json table_to_json(const CharacterTable& t, bool with_values = true) {
  const Group& g = t.group();
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "character_table";
  j["tool_version"] = kToolVersion;
  j["fingerprint"] = fingerprint(g);
  j["degree"] = g.degree();
  j["order"] = g.order();
  j["exponent"] = t.exponent();
  j["dixon_prime"] = t.dixon_prime();
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(images_of(x));
  j["generators"] = gens;
  json classes = json::array();
  for (const auto& c : t.classes()) classes.push_back({{"representative", images_of(c.representative)}, {"size", c.size}, {"order", c.element_order}});
  j["classes"] = classes;
  j["degrees"] = t.degrees();
  if (with_values && static_cast<std::uint64_t>(t.size()) * t.size() * euler_phi(t.exponent()) > kMaxExportCoefficients)
    throw ResourceLimitError("table export: value data too large, export eigenvalues only");
  json values = json::array(), eig = json::array();
  for (std::size_t r = 0; r < t.size(); ++r) {
    json row = json::array(), erow = json::array();
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (with_values) {
        auto v = t.value(r, c);
        row.push_back({{"conductor", value_conductor(v)}, {"coeffs", v.coeffs()}});
      }
      json terms = json::array();
      for (auto e : t.eigenvalues(r, c)) terms.push_back({e.exponent, e.multiplicity});
      erow.push_back(terms);
    }
    values.push_back(row);
    eig.push_back(erow);
  }
  if (with_values) j["values"] = values;
  j["eigenvalues"] = eig;
  return j;
}

// Rebuild a table for g from exported data. Throws if the data does not belong to g.
inline CharacterTable table_from_json(const Group& g, const json& j) {
  if (j.at("fingerprint").get<std::string>() != fingerprint(g)) throw std::invalid_argument("table data: fingerprint mismatch");
  std::vector<std::vector<Point>> gens;
  for (const auto& x : g.generators()) gens.push_back(images_of(x));
  if (j.at("generators").get<std::vector<std::vector<Point>>>() != gens) throw std::invalid_argument("table data: generator mismatch");
  auto degrees = j.at("degrees").get<std::vector<std::uint64_t>>();
  std::vector<std::vector<std::vector<EigenTerm>>> terms;
  for (const auto& row : j.at("eigenvalues")) {
    auto& tr = terms.emplace_back();
    for (const auto& cell : row) {
      auto& tc = tr.emplace_back();
      for (const auto& e : cell) tc.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
    }
  }
  return CharacterTable(g, j.at("dixon_prime").get<std::uint64_t>(), std::move(degrees), std::move(terms));
}

// Advisory on-disk table cache: <dir>/<tool version>/<fingerprint>.json.
class TableCache {
 public:
  explicit TableCache(std::optional<std::filesystem::path> dir = std::nullopt) : dir_(dir ? *dir : default_dir()) {}

  static std::filesystem::path default_dir() {
    if (const char* d = std::getenv("APRAT_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "aprat";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "aprat";
    return std::filesystem::temp_directory_path() / "aprat-cache";
  }

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const Group& g) const { return dir_ / kToolVersion / (fingerprint(g) + ".json"); }

  std::optional<CharacterTable> load(const Group& g) const {
    try {
      std::ifstream in(path_for(g));
      if (!in) return std::nullopt;
      json j = json::parse(in);
      if (j.at("tool_version").get<std::string>() != kToolVersion) return std::nullopt;
      return table_from_json(g, j);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  // Write to a temp file and rename over the target; failures are ignored.
  void store(const CharacterTable& t) const {
    std::lock_guard lock(write_mu());
    try {
      auto target = path_for(t.group());
      std::filesystem::create_directories(target.parent_path());
      auto tmp = target;
      tmp += ".tmp" + std::to_string(std::random_device{}());
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << table_to_json(t, false).dump();
        if (!out) {
          std::filesystem::remove(tmp);
          return;
        }
      }
      std::filesystem::rename(tmp, target);
    } catch (const std::exception&) {
    }
  }

  CharacterTable get(const Group& g, bool* hit = nullptr) const {
    if (auto t = load(g)) {
      if (hit) *hit = true;
      return std::move(*t);
    }
    if (hit) *hit = false;
    CharacterTable t(g);
    store(t);
    return t;
  }

 private:
  static std::mutex& write_mu() {
    static std::mutex mu;
    return mu;
  }

  std::filesystem::path dir_;
};

}  // namespace aprat::io
