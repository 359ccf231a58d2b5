#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "aprat/affine.hpp"
#include "aprat/corpus.hpp"
#include "aprat/group_io.hpp"
#include "aprat/rationality.hpp"
#include "aprat/report.hpp"
#include "aprat/runner.hpp"
#include "aprat/table_io.hpp"
#include "aprat/version.hpp"

using namespace aprat;
using json = nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

std::uint64_t require_prime(std::uint64_t p, const std::string& what = "--prime") {
  if (!is_prime(p)) throw InputError(what + ": " + std::to_string(p) + " is composite or less than 2");
  return p;
}

std::optional<io::TableCache> make_cache(bool disabled) {
  if (disabled) return std::nullopt;
  return io::TableCache();
}

json group_summary(const Group& g) {
  return json{{"fingerprint", fingerprint(g)}, {"order", g.order()}, {"degree", g.degree()}, {"classes", g.num_classes()}};
}

json analyze_prime(const CharacterTable& t, std::uint64_t p) {
  const Group& g = t.group();
  auto pr = rationality_profile(t, p);
  json j{{"fingerprint", pr.fingerprint}, {"p", p}, {"counts", report::to_json(pr.counts)}, {"levels", pr.level}};
  json v = json::object();
  if (g.order() % p) {
    std::cerr << "warning: " << p << " does not divide |G| = " << g.order() << "; verdicts skipped\n";
    j["verdicts"] = v;
    return j;
  }
  v["theorem_1_1"] = report::to_json(verify_theorem_1_1(t, p, &pr));
  v["theorem_1_3"] = report::to_json(verify_theorem_1_3(t, p, &pr));
  v["detector"] = report::to_json(detect_cyclic_sylow(t, p, &pr));
  if (is_solvable(g)) v["mckay_navarro"] = report::to_json(mckay_navarro_check(t, p, &pr));
  else v["mckay_navarro"] = nullptr;
  j["verdicts"] = v;
  j["blocks"] = pr.block;
  j["principal_block"] = pr.principal_block;
  return j;
}

std::vector<ModMatrix> parse_gens(const std::string& text, std::uint64_t p, std::size_t n) {
  if (!text.empty() && (std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) return io::named_matrices(text, p, n);
  json j = io::parse_json_text(text, "--gens");
  std::vector<std::vector<std::vector<std::int64_t>>> raw;
  try {
    raw = j.get<decltype(raw)>();
  } catch (const json::exception&) {
    throw InputError("--gens: expected [[[int,...],...],...]");
  }
  std::vector<ModMatrix> out;
  for (std::size_t g = 0; g < raw.size(); ++g) {
    if (raw[g].size() != n) throw InputError("--gens[" + std::to_string(g) + "]: expected " + std::to_string(n) + " rows");
    for (const auto& row : raw[g])
      if (row.size() != n) throw InputError("--gens[" + std::to_string(g) + "]: expected " + std::to_string(n) + " columns");
    out.push_back(ModMatrix::from_rows(raw[g], p));
  }
  return out;
}

std::uint64_t element_of_order(std::uint64_t p, std::uint64_t e) {
  auto g = primitive_root(p);
  return pow_mod(g, (p - 1) / e, p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aprat: almost p-rational characters, class counts of coprime affine groups, and corpus verification"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  unsigned jobs = 1;
  bool no_cache = false;
  app.add_option("--out,-o", out, "write output to a file instead of stdout");
  app.add_option("--jobs,-j", jobs, "worker threads for corpus runs")->check(CLI::Range(1u, 256u));
  app.add_flag("--no-cache", no_cache, "do not read or write the table cache");

  auto* analyze = app.add_subcommand("analyze", "rationality profile and verdicts for a group");
  std::string group_arg;
  std::vector<std::uint64_t> primes;
  analyze->add_option("group", group_arg, "construction such as frobenius(17,1,4), or a group JSON file")->required();
  analyze->add_option("--prime,-p", primes, "primes to analyze (default: all prime divisors of |G|)");

  auto* affine = app.add_subcommand("affine", "k(HV) for a coprime H <= GL_n(p)");
  std::string affine_arg, gens_text;
  std::uint64_t ap = 0, cyclic_e = 0;
  std::size_t an = 0;
  bool certificate = false;
  affine->add_option("input", affine_arg, "matrix group JSON file, or a named generator set such as sl2_5");
  affine->add_option("--p", ap, "prime");
  affine->add_option("--n", an, "dimension");
  affine->add_option("--gens", gens_text, "generators as JSON [[[...]]] or a named set");
  affine->add_option("--cyclic", cyclic_e, "H cyclic of order e acting on F_p (n = 1)");
  affine->add_flag("--certificate", certificate, "Burnside lower-bound certificate instead of enumeration");

  auto* verify = app.add_subcommand("verify", "run a verification suite over a corpus manifest");
  std::string suite_arg, manifest_arg = "default", csv_out;
  bool fail_fast = false, timing = false;
  std::vector<std::string> only;
  std::vector<std::string> suite_choices;
  for (const auto& [name, s] : runner::suite_names()) suite_choices.push_back(name);
  verify->add_option("--suite", suite_arg, "suite")->required()->check(CLI::IsMember(suite_choices));
  verify->add_option("--manifest", manifest_arg, "manifest file or 'default'");
  verify->add_option("--only", only, "restrict to these entry ids")->delimiter(',');
  verify->add_option("--csv", csv_out, "also write a CSV summary");
  verify->add_flag("--fail-fast", fail_fast, "stop at the first failing entry");
  verify->add_flag("--timing", timing, "include per-entry wall time (output is then not reproducible)");

  auto* sp = app.add_subcommand("sp", "the set S_p = {e + (p-1)/e : e | p-1}");
  std::uint64_t sp_p = 0;
  sp->add_option("--prime,-p", sp_p, "prime")->required();

  auto* cp = app.add_subcommand("classify-prime", "congruence conditions on p");
  std::uint64_t cp_p = 0;
  cp->add_option("--prime,-p", cp_p, "prime")->required();

  auto* table = app.add_subcommand("table", "export a character table as JSON");
  std::string table_arg;
  bool eigen_only = false;
  table->add_option("group", table_arg, "construction or group JSON file")->required();
  table->add_flag("--eigenvalues-only", eigen_only, "omit the dense cyclotomic values");

  auto* corpus_cmd = app.add_subcommand("corpus", "print or check a corpus manifest");
  std::string corpus_manifest = "default";
  bool ids_only = false, check = false;
  corpus_cmd->add_option("--manifest", corpus_manifest, "manifest file or 'default'");
  corpus_cmd->add_flag("--ids", ids_only, "list ids only");
  corpus_cmd->add_flag("--check", check, "build every entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      auto cache = make_cache(no_cache);
      Group g = io::load_group(group_arg);
      auto t = cache ? cache->get(g) : CharacterTable(g);
      if (primes.empty())
        for (auto [p, k] : factorize(g.order())) primes.push_back(p);
      json j = report::envelope("analysis");
      j["input"] = group_arg;
      j["group"] = group_summary(g);
      j["degrees"] = t.degrees();
      j["reports"] = json::array();
      for (auto p : primes) j["reports"].push_back(analyze_prime(t, require_prime(p)));
      emit(j, out);
      return 0;
    }

    if (*affine) {
      json j = report::envelope("affine");
      if (cyclic_e) {
        if (!an) an = 1;
        if (an != 1) throw InputError("--cyclic needs --n 1");
        require_prime(ap, "--p");
        if ((ap - 1) % cyclic_e) throw InputError("--cyclic: e must divide p-1");
        auto k = metacyclic_k(ap, cyclic_e);
        j["report"] = {{"p", ap}, {"n", 1}, {"order_h", cyclic_e}, {"k", k}, {"method", "closed_form"}};
        j["generator"] = element_of_order(ap, cyclic_e);
        emit(j, out);
        return 0;
      }
      std::optional<MatGroup> h;
      if (!affine_arg.empty() && io::looks_like_file(affine_arg)) {
        h.emplace(io::load_matgroup(affine_arg));
      } else {
        require_prime(ap, "--p");
        std::string gens = !gens_text.empty() ? gens_text : affine_arg;
        if (gens.empty()) throw InputError("affine: give an input file, a named set, or --gens");
        if (!an) an = gens == "sl2_5" ? 2 : 0;
        if (!an) throw InputError("affine: --n is required");
        h.emplace(ap, an, parse_gens(gens, ap, an));
      }
      if (certificate) {
        j["certificate"] = report::to_json(k_lower_bound_certificate(*h));
        emit(j, out);
        return 0;
      }
      ClassCountReport r;
      try {
        r = k_semidirect(*h);
      } catch (const ResourceLimitError& e) {
        throw ResourceLimitError(std::string(e.what()) + " (try --certificate)");
      }
      j["report"] = report::to_json(r);
      if (h->dim() >= 2) {
        auto s = sp_set(h->prime());
        j["sp"] = {{"values", s.values}, {"in_sp", s.contains(r.k_hv)}};
        if (s.contains(r.k_hv)) std::cerr << "COUNTEREXAMPLE: k(HV) = " << r.k_hv << " lies in S_" << h->prime() << " with n >= 2\n";
      }
      emit(j, out);
      return 0;
    }

    if (*verify) {
      auto suite = *runner::parse_suite(suite_arg);
      auto manifest = corpus::load_manifest(manifest_arg);
      auto cache = make_cache(no_cache);
      runner::Options o;
      o.jobs = jobs;
      o.fail_fast = fail_fast;
      o.cache = cache ? &*cache : nullptr;
      if (!only.empty()) o.filter = [&](const std::string& id) { return std::find(only.begin(), only.end(), id) != only.end(); };
      auto rep = runner::run_suite(suite, manifest, o);
      emit(rep.to_json(timing), out);
      if (!csv_out.empty()) {
        std::vector<std::pair<std::string, json>> rows;
        for (const auto& e : rep.entries)
          rows.emplace_back(e.id, json{{"status", runner::status_name(e.status)},
                                       {"failures", e.failures.size()},
                                       {"counterexamples", e.counterexamples.size()},
                                       {"order", e.result.value("order", json())},
                                       {"fingerprint", e.result.value("fingerprint", json())}});
        emit(report::to_csv(rows), csv_out);
      }
      auto ce = rep.counterexamples();
      if (!ce.empty()) {
        std::cerr << "==================== COUNTEREXAMPLE ====================\n";
        for (const auto& c : ce) std::cerr << "  " << c << "\n";
        std::cerr << "count in S_p with a noncyclic Sylow subgroup; please report\n";
        std::cerr << "========================================================\n";
      }
      std::cerr << rep.suite << ": " << rep.count(runner::Status::passed) << " passed, " << rep.count(runner::Status::failed) << " failed, "
                << rep.count(runner::Status::skipped) << " skipped";
      if (auto n = rep.count(runner::Status::input_error)) std::cerr << ", " << n << " input errors";
      if (auto n = rep.count(runner::Status::resource_error)) std::cerr << ", " << n << " over cap";
      if (auto n = rep.count(runner::Status::not_run)) std::cerr << ", " << n << " not run";
      std::cerr << "\n";
      for (const auto& e : rep.entries) {
        for (const auto& f : e.failures) std::cerr << "FAIL " << e.id << ": " << f << "\n";
        if (!e.error.empty()) std::cerr << "ERROR " << e.id << ": " << e.error << "\n";
      }
      return rep.exit_code();
    }

    if (*sp) {
      auto s = sp_set(require_prime(sp_p));
      json j = report::envelope("sp");
      j["p"] = sp_p;
      j["sp"] = s.values;
      emit(j, out);
      return 0;
    }

    if (*cp) {
      json j = report::envelope("classify_prime");
      j["verdict"] = report::to_json(classify_prime_conditions(require_prime(cp_p)));
      emit(j, out);
      return 0;
    }

    if (*table) {
      auto cache = make_cache(no_cache);
      Group g = io::load_group(table_arg);
      auto t = cache ? cache->get(g) : CharacterTable(g);
      auto orth = t.verify_orthogonality();
      json j = io::table_to_json(t, !eigen_only);
      j["orthogonality_ok"] = orth.ok;
      emit(j, out);
      return orth.ok ? 0 : 1;
    }

    if (*corpus_cmd) {
      auto m = corpus::load_manifest(corpus_manifest);
      if (check) {
        json j = report::envelope("corpus_check");
        j["version"] = m.version;
        j["groups"] = json::array();
        for (const auto& e : m.groups) {
          Group g = corpus::build(e);
          j["groups"].push_back({{"id", e.id}, {"order", g.order()}, {"classes", g.num_classes()}, {"fingerprint", fingerprint(g)}});
        }
        j["affine"] = json::array();
        for (const auto& e : m.affine) {
          auto h = corpus::build(e);
          j["affine"].push_back({{"id", e.id}, {"p", h.prime()}, {"n", h.dim()}, {"order_h", h.order()}});
        }
        emit(j, out);
      } else if (ids_only) {
        std::ostringstream os;
        for (const auto& e : m.groups) os << e.id << "\n";
        for (const auto& e : m.affine) os << e.id << "\n";
        emit(os.str(), out);
      } else {
        emit(corpus::to_json(m), out);
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
