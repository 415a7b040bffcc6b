#ifndef NILGO_IO_HPP
#define NILGO_IO_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilgo/algebra.hpp"
#include "nilgo/matrix.hpp"
#include "nilgo/rational.hpp"

namespace nilgo {

inline constexpr const char* kToolVersion = "0.1.0";

struct ParseError : std::runtime_error {
  ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// On-disk description of a metric nilpotent Lie algebra. All numbers are
/// rational strings (INT("/"POSINT)?); floats never appear in the format, so
/// exactness survives serialization. Indices are 1-based in the file.
struct AlgebraFile {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> basis;
  // (i, j) -> { k -> coeff }, 0-based internally, i < j
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Rational>> brackets;
  // (i, j) -> value, 0-based, i <= j
  std::map<std::pair<std::size_t, std::size_t>, Rational> metric;
  std::map<std::string, std::string> attributes;

  MetricNilAlgebra to_algebra() const {
    std::vector<BracketTerm> terms;
    for (const auto& [ij, coeffs] : brackets)
      for (const auto& [k, c] : coeffs) terms.push_back({ij.first, ij.second, k, c});
    RatMatrix g(dim, dim);
    for (const auto& [ij, v] : metric) {
      g(ij.first, ij.second) = v;
      g(ij.second, ij.first) = v;
    }
    return MetricNilAlgebra(dim, basis, std::move(terms), std::move(g), name);
  }

  static AlgebraFile from_algebra(const MetricNilAlgebra& alg) {
    AlgebraFile f;
    f.name = alg.name();
    f.dim = alg.dim();
    f.basis = alg.basis_names();
    for (const auto& t : alg.structure()) f.brackets[{t.i, t.j}][t.k] += t.c;
    for (auto it = f.brackets.begin(); it != f.brackets.end();) {
      auto& coeffs = it->second;
      for (auto c = coeffs.begin(); c != coeffs.end();)
        c = c->second.is_zero() ? coeffs.erase(c) : std::next(c);
      it = coeffs.empty() ? f.brackets.erase(it) : std::next(it);
    }
    for (std::size_t i = 0; i < f.dim; ++i)
      for (std::size_t j = i; j < f.dim; ++j)
        if (!alg.metric()(i, j).is_zero()) f.metric[{i, j}] = alg.metric()(i, j);
    return f;
  }
};

namespace detail {

inline std::size_t parse_index(const nlohmann::json& j, const char* field, std::size_t dim,
                               const std::string& ctx) {
  if (!j.is_number_unsigned())
    throw ParseError(ctx + ": field '" + field + "' must be a positive integer");
  std::size_t v = j.get<std::size_t>();
  if (v < 1 || v > dim)
    throw ParseError(ctx + ": index " + std::to_string(v) + " out of range 1.." +
                     std::to_string(dim));
  return v - 1;
}

inline Rational parse_rat(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_string())
    throw ParseError(ctx + ": rationals must be strings like \"1/2\", got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

}  // namespace detail

inline AlgebraFile parse_algebra_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "name" && key != "dim" && key != "basis" && key != "brackets" &&
        key != "metric" && key != "attributes")
      throw ParseError("unknown top-level field '" + key + "'");

  AlgebraFile f;
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw ParseError("missing or invalid 'dim'");
  f.dim = j["dim"].get<std::size_t>();
  if (f.dim == 0) throw ParseError("'dim' must be at least 1");
  f.name = j.value("name", std::string{});
  if (j.contains("basis")) {
    if (!j["basis"].is_array() || j["basis"].size() != f.dim)
      throw ParseError("'basis' must list exactly dim labels");
    for (const auto& b : j["basis"]) f.basis.push_back(b.get<std::string>());
  }
  for (const auto& e : j.value("brackets", nlohmann::json::array())) {
    const std::string ctx = "brackets entry " + e.dump();
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("coeffs"))
      throw ParseError(ctx + ": need fields i, j, coeffs");
    std::size_t i = detail::parse_index(e["i"], "i", f.dim, ctx);
    std::size_t jj = detail::parse_index(e["j"], "j", f.dim, ctx);
    if (i >= jj) throw ParseError(ctx + ": brackets must be listed with i < j");
    if (f.brackets.count({i, jj})) throw ParseError(ctx + ": duplicate bracket (i, j)");
    for (const auto& [ks, val] : e["coeffs"].items()) {
      std::size_t k;
      try {
        std::size_t pos = 0;
        k = std::stoul(ks, &pos);
        if (pos != ks.size()) throw std::invalid_argument(ks);
      } catch (...) {
        throw ParseError(ctx + ": coefficient key '" + ks + "' is not an index");
      }
      if (k < 1 || k > f.dim) throw ParseError(ctx + ": coefficient index out of range");
      Rational c = detail::parse_rat(val, ctx);
      if (!c.is_zero()) f.brackets[{i, jj}][k - 1] = c;
    }
    if (f.brackets.count({i, jj}) && f.brackets[{i, jj}].empty()) f.brackets.erase({i, jj});
  }
  for (const auto& e : j.value("metric", nlohmann::json::array())) {
    const std::string ctx = "metric entry " + e.dump();
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("value"))
      throw ParseError(ctx + ": need fields i, j, value");
    std::size_t i = detail::parse_index(e["i"], "i", f.dim, ctx);
    std::size_t jj = detail::parse_index(e["j"], "j", f.dim, ctx);
    if (i > jj) throw ParseError(ctx + ": metric entries must be listed with i <= j");
    if (f.metric.count({i, jj})) throw ParseError(ctx + ": duplicate metric entry");
    Rational v = detail::parse_rat(e["value"], ctx);
    if (!v.is_zero()) f.metric[{i, jj}] = v;
  }
  if (j.contains("attributes")) {
    if (!j["attributes"].is_object()) throw ParseError("'attributes' must be an object");
    for (const auto& [k, v] : j["attributes"].items())
      f.attributes[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return f;
}

/// Canonical serialization: fixed field order, indices sorted ascending,
/// rationals in lowest terms. parse → serialize → parse is the identity.
inline std::string serialize_algebra_file(const AlgebraFile& f) {
  nlohmann::ordered_json j;
  j["name"] = f.name;
  j["dim"] = f.dim;
  j["basis"] = f.basis.empty() ? [&] {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < f.dim; ++i) names.push_back("e" + std::to_string(i + 1));
    return names;
  }() : f.basis;
  j["brackets"] = nlohmann::ordered_json::array();
  for (const auto& [ij, coeffs] : f.brackets) {
    if (coeffs.empty()) continue;
    nlohmann::ordered_json e;
    e["i"] = ij.first + 1;
    e["j"] = ij.second + 1;
    nlohmann::ordered_json cs;
    for (const auto& [k, c] : coeffs) cs[std::to_string(k + 1)] = c.str();
    e["coeffs"] = cs;
    j["brackets"].push_back(e);
  }
  j["metric"] = nlohmann::ordered_json::array();
  for (const auto& [ij, v] : f.metric) {
    nlohmann::ordered_json e;
    e["i"] = ij.first + 1;
    e["j"] = ij.second + 1;
    e["value"] = v.str();
    j["metric"].push_back(e);
  }
  if (!f.attributes.empty()) {
    nlohmann::ordered_json attrs;
    for (const auto& [k, v] : f.attributes) attrs[k] = v;
    j["attributes"] = attrs;
  }
  return j.dump(2) + "\n";
}

/// FNV-1a over the canonical bytes; pins the input in reports.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nilgo

#endif
