#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aprat/affine.hpp"
#include "aprat/constructions.hpp"
#include "aprat/errors.hpp"
#include "aprat/group.hpp"
#include "aprat/matrix.hpp"

namespace aprat::io {

using json = nlohmann::json;

// Parsed construction term: a number, a matrix list, or name(args...).
struct Expr {
  enum class Kind { number, call, matrices } kind = Kind::number;
  std::int64_t number = 0;
  std::string name;
  std::vector<Expr> args;
  std::vector<std::vector<std::vector<std::int64_t>>> mats;
  std::string where;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = term();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("expression, column " + std::to_string(i_ + 1) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Expr term() {
    skip();
    Expr e;
    e.where = "column " + std::to_string(i_ + 1);
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t start = i_++;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      try {
        e.number = std::stoll(std::string(s_.substr(start, i_ - start)));
      } catch (const std::exception&) {
        i_ = start;
        fail("bad integer");
      }
      return e;
    }
    if (c == '[') {
      std::size_t start = i_;
      int depth = 0;
      for (; i_ < s_.size(); ++i_) {
        if (s_[i_] == '[') ++depth;
        if (s_[i_] == ']' && --depth == 0) break;
      }
      if (i_ >= s_.size()) fail("unterminated matrix list");
      ++i_;
      json j;
      try {
        j = json::parse(s_.substr(start, i_ - start));
        e.mats = j.get<decltype(e.mats)>();
      } catch (const json::exception&) {
        i_ = start;
        fail("matrix list must be [[[int,...],...],...]");
      }
      e.kind = Expr::Kind::matrices;
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a name or a number");
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    e.kind = Expr::Kind::call;
    e.name = std::string(s_.substr(start, i_ - start));
    std::transform(e.name.begin(), e.name.end(), e.name.begin(), [](unsigned char x) { return std::tolower(x); });
    if (eat('(')) {
      if (!eat(')')) {
        do e.args.push_back(term());
        while (eat(','));
        if (!eat(')')) fail("expected ')'");
      }
    }
    return e;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline std::uint64_t nonneg(const Expr& call, std::size_t k, std::uint64_t lo = 0) {
  if (k >= call.args.size()) throw InputError(call.name + ": missing argument " + std::to_string(k + 1));
  const Expr& a = call.args[k];
  if (a.kind != Expr::Kind::number) throw InputError(call.name + ": argument " + std::to_string(k + 1) + " must be an integer");
  if (a.number < static_cast<std::int64_t>(lo))
    throw InputError(call.name + ": argument " + std::to_string(k + 1) + " must be at least " + std::to_string(lo));
  return static_cast<std::uint64_t>(a.number);
}

inline void arity(const Expr& call, std::size_t lo, std::size_t hi) {
  if (call.args.size() < lo || call.args.size() > hi)
    throw InputError(call.name + ": expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                     " arguments, got " + std::to_string(call.args.size()));
}

inline std::uint64_t prime_arg(const Expr& call, std::size_t k) {
  auto p = nonneg(call, k, 2);
  if (!is_prime(p)) throw InputError(call.name + ": " + std::to_string(p) + " is not prime");
  return p;
}

inline std::vector<ModMatrix> to_matrices(const std::vector<std::vector<std::vector<std::int64_t>>>& raw, std::uint64_t p, std::size_t n,
                                          const std::string& where) {
  std::vector<ModMatrix> out;
  for (std::size_t g = 0; g < raw.size(); ++g) {
    if (raw[g].size() != n) throw InputError(where + "[" + std::to_string(g) + "]: expected " + std::to_string(n) + " rows");
    for (std::size_t r = 0; r < n; ++r)
      if (raw[g][r].size() != n)
        throw InputError(where + "[" + std::to_string(g) + "][" + std::to_string(r) + "]: expected " + std::to_string(n) + " entries");
    out.push_back(ModMatrix::from_rows(raw[g], p));
  }
  return out;
}

}  // namespace detail

inline Expr parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

// Named generator sets for GL_n(p).
inline std::vector<ModMatrix> named_matrices(const std::string& name, std::uint64_t p, std::size_t n) {
  if (name == "sl2_5") {
    if (n != 2) throw InputError("sl2_5 generators live in dimension 2");
    return construct::sl2_5_generators(p);
  }
  if (name == "minus_identity" || name == "neg") return {ModMatrix::scalar(n, p, p - 1)};
  if (name == "identity") return {ModMatrix::identity(n, p)};
  throw InputError("unknown matrix generator set '" + name + "'");
}

inline Group build_group(const Expr& e) {
  using namespace detail;
  if (e.kind != Expr::Kind::call) throw InputError("expected a group construction at " + e.where);
  const std::string& n = e.name;
  if (n == "cyclic" || n == "c") {
    arity(e, 1, 1);
    return construct::cyclic(nonneg(e, 0, 1));
  }
  if (n == "dihedral" || n == "d") {
    arity(e, 1, 1);
    return construct::dihedral(nonneg(e, 0, 1));
  }
  if (n == "sym" || n == "symmetric" || n == "s") {
    arity(e, 1, 1);
    return construct::symmetric(nonneg(e, 0, 1));
  }
  if (n == "alt" || n == "alternating" || n == "a") {
    arity(e, 1, 1);
    return construct::alternating(nonneg(e, 0, 1));
  }
  if (n == "frobenius") {
    arity(e, 3, 3);
    return construct::frobenius(prime_arg(e, 0), static_cast<unsigned>(nonneg(e, 1, 1)), nonneg(e, 2, 1));
  }
  if (n == "metacyclic") {
    arity(e, 2, 2);
    return construct::metacyclic(nonneg(e, 0, 1), nonneg(e, 1));
  }
  if (n == "abelian") {
    if (e.args.empty()) throw InputError("abelian: need at least one cyclic factor");
    std::vector<std::size_t> orders;
    for (std::size_t k = 0; k < e.args.size(); ++k) orders.push_back(nonneg(e, k, 1));
    return construct::abelian(orders);
  }
  if (n == "q8" || n == "quaternion") {
    arity(e, 0, 1);
    if (!e.args.empty() && nonneg(e, 0) != 8) throw InputError("quaternion: only order 8 is available");
    return construct::quaternion8();
  }
  if (n == "sl2_5") {
    arity(e, 0, 0);
    return construct::sl2_5();
  }
  if (n == "navarro") {
    arity(e, 0, 0);
    return construct::sl2_5_affine(11);
  }
  if (n == "sl2_5_affine") {
    arity(e, 1, 1);
    return construct::sl2_5_affine(prime_arg(e, 0));
  }
  if (n == "ut3" || n == "unitriangular") {
    arity(e, 1, 1);
    return construct::unitriangular3(prime_arg(e, 0));
  }
  if (n == "elementary_abelian_semidirect" || n == "affine") {
    arity(e, 3, 3);
    auto p = prime_arg(e, 0);
    auto dim = static_cast<std::size_t>(nonneg(e, 1, 1));
    const Expr& g = e.args[2];
    if (g.kind == Expr::Kind::matrices) return construct::elementary_abelian_semidirect(p, dim, to_matrices(g.mats, p, dim, "generators"));
    if (g.kind == Expr::Kind::call && g.args.empty()) return construct::elementary_abelian_semidirect(p, dim, named_matrices(g.name, p, dim));
    throw InputError(n + ": argument 3 must be a matrix list or a named generator set");
  }
  if (n == "direct_product" || n == "product") {
    if (e.args.empty()) throw InputError("direct_product: need at least one factor");
    std::vector<Group> fs;
    for (const auto& a : e.args) fs.push_back(build_group(a));
    return construct::direct_product(fs);
  }
  throw InputError("unknown construction '" + n + "' at " + e.where);
}

inline Group parse_group_expression(std::string_view text) { return build_group(parse_expression(text)); }

// Parse JSON text; syntax errors carry line and column.
inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < err.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field '" + key + "'");
  return *it;
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

inline Expr expr_from_json(const json& j, const std::string& path) {
  Expr e;
  e.where = path;
  if (j.is_number_integer()) {
    e.number = j.get<std::int64_t>();
    return e;
  }
  if (j.is_string()) {
    try {
      return parse_expression(j.get<std::string>());
    } catch (const InputError& err) {
      throw InputError(path + ": " + err.what());
    }
  }
  if (j.is_array()) {
    try {
      e.mats = j.get<decltype(e.mats)>();
    } catch (const json::exception&) {
      throw InputError(path + ": expected a list of integer matrices");
    }
    e.kind = Expr::Kind::matrices;
    return e;
  }
  if (j.is_object()) {
    const json& name = field(j, "construct", path);
    if (!name.is_string()) throw InputError(path + ".construct: expected a string");
    e.kind = Expr::Kind::call;
    e.name = name.get<std::string>();
    std::transform(e.name.begin(), e.name.end(), e.name.begin(), [](unsigned char x) { return std::tolower(x); });
    if (auto it = j.find("params"); it != j.end()) {
      if (!it->is_array()) throw InputError(path + ".params: expected an array");
      for (std::size_t k = 0; k < it->size(); ++k) e.args.push_back(expr_from_json((*it)[k], path + ".params[" + std::to_string(k) + "]"));
    }
    return e;
  }
  throw InputError(path + ": unsupported value");
}

}  // namespace detail

inline Group group_from_json(const json& j, const std::string& path = "$") {
  if (j.is_string() || (j.is_object() && j.contains("construct"))) {
    try {
      return build_group(detail::expr_from_json(j, path));
    } catch (const InputError& err) {
      std::string msg = err.what();
      if (msg.rfind(path, 0) == 0) throw;
      throw InputError(path + ": " + msg);
    }
  }
  auto deg = detail::as_int(detail::field(j, "degree", path), path + ".degree");
  if (deg < 0) throw InputError(path + ".degree: must be non-negative");
  const json& gens = detail::field(j, "generators", path);
  if (!gens.is_array()) throw InputError(path + ".generators: expected an array");
  std::vector<Permutation> perms;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::string gp = path + ".generators[" + std::to_string(k) + "]";
    const json& g = gens[k];
    if (!g.is_array()) throw InputError(gp + ": expected an image array");
    if (static_cast<std::int64_t>(g.size()) != deg)
      throw InputError(gp + ": has " + std::to_string(g.size()) + " images, degree is " + std::to_string(deg));
    std::vector<Point> im;
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto v = detail::as_int(g[i], gp + "[" + std::to_string(i) + "]");
      if (v < 0 || v >= deg) throw InputError(gp + "[" + std::to_string(i) + "]: image " + std::to_string(v) + " out of range");
      im.push_back(static_cast<Point>(v));
    }
    try {
      perms.emplace_back(std::move(im));
    } catch (const std::invalid_argument& err) {
      throw InputError(gp + ": " + err.what());
    }
  }
  return Group::generate(static_cast<std::size_t>(deg), std::move(perms));
}

inline MatGroup matgroup_from_json(const json& j, const std::string& path = "$") {
  auto p = detail::as_int(detail::field(j, "p", path), path + ".p");
  auto n = detail::as_int(detail::field(j, "n", path), path + ".n");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError(path + ".p: must be prime");
  if (n < 1) throw InputError(path + ".n: must be positive");
  const json& gens = detail::field(j, "generators", path);
  std::vector<ModMatrix> mats;
  if (gens.is_string()) {
    mats = named_matrices(gens.get<std::string>(), static_cast<std::uint64_t>(p), static_cast<std::size_t>(n));
  } else {
    std::vector<std::vector<std::vector<std::int64_t>>> raw;
    try {
      raw = gens.get<decltype(raw)>();
    } catch (const json::exception&) {
      throw InputError(path + ".generators: expected a list of integer matrices");
    }
    mats = detail::to_matrices(raw, static_cast<std::uint64_t>(p), static_cast<std::size_t>(n), path + ".generators");
  }
  try {
    return MatGroup(static_cast<std::uint64_t>(p), static_cast<std::size_t>(n), std::move(mats));
  } catch (const InputError& err) {
    throw InputError(path + ": " + err.what());
  }
}

inline bool looks_like_file(const std::string& arg) {
  return arg.ends_with(".json") || arg.find('/') != std::string::npos;
}

// A group argument: a JSON file path or a construction expression.
inline Group load_group(const std::string& arg) {
  if (looks_like_file(arg)) return group_from_json(parse_json_text(read_file(arg), arg), arg);
  return parse_group_expression(arg);
}

inline MatGroup load_matgroup(const std::string& path) { return matgroup_from_json(parse_json_text(read_file(path), path), path); }

}  // namespace aprat::io
