#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aprat/affine.hpp"
#include "aprat/corpus.hpp"
#include "aprat/rationality.hpp"
#include "aprat/report.hpp"
#include "aprat/subgroups.hpp"
#include "aprat/table_io.hpp"

namespace aprat::runner {

using json = nlohmann::json;

enum class Suite { thm1_1, thm1_3, lemmas3, lemma4, mckay_navarro, affine_oracle, detector, pq_witness };

inline const std::vector<std::pair<std::string, Suite>>& suite_names() {
  static const std::vector<std::pair<std::string, Suite>> v{
      {"thm1.1", Suite::thm1_1},         {"thm1.3", Suite::thm1_3},   {"lemmas3", Suite::lemmas3},
      {"lemma4", Suite::lemma4},         {"mckay-navarro", Suite::mckay_navarro}, {"affine-oracle", Suite::affine_oracle},
      {"detector", Suite::detector},     {"pq-witness", Suite::pq_witness}};
  return v;
}

inline std::optional<Suite> parse_suite(const std::string& s) {
  for (const auto& [name, suite] : suite_names())
    if (name == s) return suite;
  return std::nullopt;
}

inline std::string suite_name(Suite s) {
  for (const auto& [name, suite] : suite_names())
    if (suite == s) return name;
  return "?";
}

enum class Status { passed, failed, skipped, input_error, resource_error, not_run };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::passed: return "pass";
    case Status::failed: return "fail";
    case Status::skipped: return "skip";
    case Status::input_error: return "input_error";
    case Status::resource_error: return "resource_error";
    case Status::not_run: return "not_run";
  }
  return "?";
}

struct EntryOutcome {
  std::string id;
  Status status = Status::passed;
  json result = json::object();
  std::vector<std::string> failures;
  std::vector<std::string> counterexamples;
  std::string error;
  double seconds = 0;
};

struct RunReport {
  std::string suite;
  std::string manifest_version;
  std::vector<EntryOutcome> entries;

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const EntryOutcome& e) { return e.status == s; }));
  }
  std::vector<std::string> counterexamples() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      for (const auto& c : e.counterexamples) out.push_back(e.id + ": " + c);
    return out;
  }
  // 0 ok, 1 assertion failure, 2 input error, 3 resource cap
  int exit_code() const {
    if (count(Status::failed)) return 1;
    if (count(Status::input_error)) return 2;
    if (count(Status::resource_error)) return 3;
    return 0;
  }

  json to_json(bool with_timing = false) const {
    json j = report::envelope("run_report");
    j["suite"] = suite;
    j["manifest_version"] = manifest_version;
    json entries_j = json::array(), failures = json::array();
    for (const auto& e : entries) {
      json x{{"id", e.id}, {"status", status_name(e.status)}, {"result", e.result}};
      if (!e.failures.empty()) x["failures"] = e.failures;
      if (!e.counterexamples.empty()) x["counterexamples"] = e.counterexamples;
      if (!e.error.empty()) x["error"] = e.error;
      if (with_timing) x["seconds"] = e.seconds;
      entries_j.push_back(std::move(x));
      for (const auto& f : e.failures) failures.push_back(e.id + ": " + f);
      if (!e.error.empty()) failures.push_back(e.id + ": " + e.error);
    }
    j["entries"] = std::move(entries_j);
    j["failures"] = std::move(failures);
    j["counterexamples"] = counterexamples();
    j["summary"] = {{"passed", count(Status::passed)},
                    {"failed", count(Status::failed)},
                    {"skipped", count(Status::skipped)},
                    {"input_errors", count(Status::input_error)},
                    {"resource_errors", count(Status::resource_error)},
                    {"not_run", count(Status::not_run)}};
    return j;
  }
};

struct Options {
  unsigned jobs = 1;
  bool fail_fast = false;
  const io::TableCache* cache = nullptr;
  std::function<bool(const std::string&)> filter;  // restrict to ids
};

inline CharacterTable table_for(const Group& g, const Options& o) { return o.cache ? o.cache->get(g) : CharacterTable(g); }

inline const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> v{2, 3, 5, 7, 11, 13};
  return v;
}

namespace detail {

inline std::string pkey(std::uint64_t p) { return "p" + std::to_string(p); }

inline void run_group_entry(Suite s, const corpus::GroupEntry& e, const Options& o, EntryOutcome& out) {
  Group g = corpus::build(e);
  out.result["fingerprint"] = fingerprint(g);
  out.result["order"] = g.order();
  auto primes = corpus::primes_for(e, g);
  if (s == Suite::pq_witness) {
    if (g.order() == 1) {
      out.status = Status::skipped;
      return;
    }
    auto t = table_for(g, o);
    json w = json::object();
    for (auto p : small_primes())
      for (auto q : small_primes()) {
        if (q < p) continue;
        auto r = find_pq_rational_witness(t, p, q);
        std::string key = std::to_string(p) + "," + std::to_string(q);
        if (r) w[key] = {{"row", *r}, {"degree", t.degrees()[*r]}};
        else {
          w[key] = nullptr;
          out.failures.push_back("no {" + key + "}-witness");
        }
      }
    out.result["witnesses"] = std::move(w);
    return;
  }
  if (primes.empty()) {
    out.status = Status::skipped;
    return;
  }
  if (s == Suite::mckay_navarro && !is_solvable(g)) {
    out.status = Status::skipped;
    out.result["reason"] = "not solvable";
    return;
  }
  if (s == Suite::lemmas3 && std::none_of(primes.begin(), primes.end(), [](std::uint64_t p) { return p > 2; })) {
    out.status = Status::skipped;
    out.result["reason"] = "no odd prime";
    return;
  }
  auto t = table_for(g, o);
  if (s == Suite::lemmas3) {
    auto b = verify_brauer_permutation(t);
    out.result["brauer_permutation"] = {{"ok", b.ok}, {"tested", b.checks.size()}};
    if (!b.ok) out.failures.push_back("fixed character and fixed class counts differ");
  }
  for (auto p : primes) {
    if (s == Suite::lemmas3 && p == 2) continue;
    auto pr = rationality_profile(t, p);
    json& slot = out.result[pkey(p)];
    auto tag = "p=" + std::to_string(p) + ": ";
    switch (s) {
      case Suite::thm1_1:
      case Suite::thm1_3: {
        auto r = s == Suite::thm1_1 ? verify_theorem_1_1(t, p, &pr) : verify_theorem_1_3(t, p, &pr);
        slot = report::to_json(r);
        if (!r.ok) out.failures.push_back(tag + r.detail);
        break;
      }
      case Suite::lemmas3: {
        auto r = verify_class_side_lemmas(t, p, {}, &pr);
        slot = report::to_json(r);
        for (const auto& v : r.violations) out.failures.push_back(tag + v);
        break;
      }
      case Suite::lemma4: {
        json pairs = json::array();
        std::vector<Group> normals;
        auto add = [&](Group n) {
          if (n.order() == g.order() || (g.order() / n.order()) % p == 0) return;
          for (const auto& m : normals)
            if (m.order() == n.order() && n.is_subgroup_of(m)) return;
          normals.push_back(std::move(n));
        };
        add(normal_closure(g, sylow_subgroup(g, p).generators()));
        add(derived_subgroup(g));
        for (const auto& n : normals) {
          auto tn = table_for(n, o);
          auto r = verify_over_normal_lemma(t, tn, p);
          pairs.push_back({{"n_order", n.order()}, {"ok", r.ok}, {"pairs_checked", r.pairs_checked}});
          for (const auto& v : r.violations) out.failures.push_back(tag + v);
        }
        slot = std::move(pairs);
        break;
      }
      case Suite::mckay_navarro: {
        auto r = mckay_navarro_check(t, p, &pr);
        slot = report::to_json(r);
        if (!r.equal) out.failures.push_back(tag + "lhs " + std::to_string(r.lhs) + " != rhs " + std::to_string(r.rhs));
        break;
      }
      case Suite::detector: {
        auto v = detect_cyclic_sylow(t, p, &pr);
        slot = report::to_json(v);
        if (v.actual_cyclic && !v.in_sp) out.failures.push_back(tag + "cyclic Sylow but count not in S_p");
        else if (!v.agree) out.counterexamples.push_back(tag + "count " + std::to_string(v.count) + " in S_p with noncyclic Sylow");
        break;
      }
      default:
        break;
    }
  }
}

inline void run_affine_entry(const corpus::AffineEntry& e, EntryOutcome& out) {
  MatGroup h = corpus::build(e);
  out.result["order_h"] = h.order();
  out.result["p"] = h.prime();
  out.result["n"] = h.dim();
  BigInt vsize = 1;
  for (std::size_t i = 0; i < h.dim(); ++i) vsize *= h.prime();
  auto cert = k_lower_bound_certificate(h);
  out.result["certificate"] = report::to_json(cert);
  if (vsize > kMaxAffineVectors) {
    out.result["method"] = "certificate";
    return;
  }
  auto r = k_semidirect(h);
  out.result["k"] = r.k_hv;
  out.result["orbit_count"] = r.orbits.size();
  if (cert.orbits != r.orbits.size()) out.failures.push_back("Burnside count differs from enumerated orbits");
  if (cert.bound > r.k_hv) out.failures.push_back("certificate bound exceeds k");
  if (!r.clifford_holds) out.failures.push_back("Clifford lower bound fails");
  if (r.sandwich_checked && !r.sandwich_holds) out.failures.push_back("sandwich bound fails");
  if (h.dim() == 1) {
    auto cf = metacyclic_k(h.prime(), h.order());
    out.result["closed_form"] = cf;
    if (cf != r.k_hv) out.failures.push_back("closed form " + std::to_string(cf) + " != " + std::to_string(r.k_hv));
  }
  if (vsize * h.order() <= kDefaultElementCap) {
    auto oracle = k_semidirect_oracle(h);
    out.result["oracle"] = oracle;
    if (oracle != r.k_hv) out.failures.push_back("oracle " + std::to_string(oracle) + " != " + std::to_string(r.k_hv));
  }
}

}  // namespace detail

inline RunReport run_suite(Suite s, const corpus::Manifest& m, const Options& o = {}) {
  RunReport rep;
  rep.suite = suite_name(s);
  rep.manifest_version = m.version;
  std::vector<std::function<void(EntryOutcome&)>> tasks;
  if (s == Suite::affine_oracle) {
    for (const auto& e : m.affine)
      if (!o.filter || o.filter(e.id)) {
        rep.entries.emplace_back().id = e.id;
        tasks.push_back([&e](EntryOutcome& out) { detail::run_affine_entry(e, out); });
      }
  } else {
    for (const auto& e : m.groups)
      if (!o.filter || o.filter(e.id)) {
        rep.entries.emplace_back().id = e.id;
        tasks.push_back([&e, s, &o](EntryOutcome& out) { detail::run_group_entry(s, e, o, out); });
      }
  }
  for (auto& e : rep.entries) e.status = Status::not_run;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      auto& out = rep.entries[i];
      auto t0 = std::chrono::steady_clock::now();
      out.status = Status::passed;
      try {
        tasks[i](out);
        if (!out.failures.empty()) out.status = Status::failed;
      } catch (const InputError& err) {
        out.status = Status::input_error;
        out.error = err.what();
      } catch (const ResourceLimitError& err) {
        out.status = Status::resource_error;
        out.error = err.what();
      } catch (const std::exception& err) {
        out.status = Status::failed;
        out.error = std::string("internal error: ") + err.what();
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (o.fail_fast && out.status != Status::passed && out.status != Status::skipped) stop.store(true);
    }
  };
  unsigned jobs = std::max(1u, o.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

}  // namespace aprat::runner
