#pragma once

// JSON forms of the library types. Vectors are arrays of element indices;
// coordinates are 0-based. Readers throw std::invalid_argument on malformed
// input.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bigcount.hpp"
#include "counting.hpp"
#include "genclose.hpp"
#include "nearfield.hpp"
#include "nvspace.hpp"

namespace nearspace::json_io {

using nlohmann::json;

/// Numbers that fit in 64 bits stay numbers; larger ones become strings.
inline json big(const BigCount& x) {
  if (x >= 0 && x <= BigCount(UINT64_MAX)) return static_cast<std::uint64_t>(x);
  return x.str();
}

inline json to_json(const Vector& v) { return v.coords; }

inline json to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

inline json to_json(const CanonicalSubgroup& t) {
  json blocks = json::array();
  for (const auto& b : t.blocks) {
    json values = json::array();
    for (auto [j, x] : b.values) values.push_back({j, x});
    blocks.push_back({{"pivot", b.pivot}, {"values", values}});
  }
  return {{"n", t.n}, {"dim", t.dim()}, {"blocks", blocks}};
}

inline json to_json(const SimpleVector& e) {
  json entries = json::array();
  for (auto [j, x] : e.entries) entries.push_back({j, x});
  return {{"n", e.dim}, {"entries", entries}};
}

inline json to_json(const GenResult& r) {
  json certs = json::array();
  for (const auto& e : r.certificates) certs.push_back(to_json(e));
  return {{"subgroup", to_json(r.subgroup)},
          {"certificates", certs},
          {"column_classes", r.column_classes}};
}

inline json to_json(const ClosureTrace& t) {
  return {{"index", t.index}, {"levels", t.levels}, {"size", t.elements.size()}};
}

inline json to_json(const SearchReport& r) {
  json counts = json::object();
  for (auto [idx, c] : r.counts) counts[std::to_string(idx)] = c;
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  return {{"max_index", r.max_index}, {"instances", r.instances}, {"skipped", r.skipped},
          {"counts", counts},          {"witnesses", witnesses}};
}

inline json to_json(const AxiomReport& r) {
  json checks = json::array();
  for (std::size_t i = 0; i < axiom_count; ++i) {
    json c = {{"name", axiom_name(static_cast<Axiom>(i))}, {"passed", r.passed[i]}};
    if (!r.passed[i]) c["counterexample"] = r.counterexample[i];
    checks.push_back(c);
  }
  json out = {{"exhaustive", r.exhaustive}, {"samples", r.samples}, {"checks", checks}};
  if (r.properness_witness) {
    const auto& w = *r.properness_witness;
    out["properness_witness"] = {w.a, w.b, w.c};
  } else {
    out["properness_witness"] = nullptr;
  }
  return out;
}

inline json to_json(const CountTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json by_dim = json::array();
    for (const auto& x : row.by_dim) by_dim.push_back(big(x));
    rows.push_back({{"n", row.n}, {"by_dim", by_dim}, {"total", big(row.total)}});
  }
  return {{"q", t.q}, {"rows", rows}};
}

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) {
  throw std::invalid_argument("malformed JSON input: " + what);
}

inline std::size_t index_of(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    malformed(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline Element element_of(const json& j, Element order) {
  const std::size_t x = index_of(j, "element");
  if (x >= order)
    malformed("element " + std::to_string(x) + " is not below the order " + std::to_string(order));
  return static_cast<Element>(x);
}

}  // namespace detail

/// Accepts [[...], ...] or {"vectors": [[...], ...]}. All vectors must have
/// the same length; `n` (when nonzero) is enforced too.
inline std::vector<Vector> vectors_from_json(const json& j, Element order, std::size_t n = 0) {
  const json& arr = j.is_object() && j.contains("vectors") ? j.at("vectors") : j;
  if (!arr.is_array()) detail::malformed("expected an array of vectors");
  std::vector<Vector> out;
  for (const auto& row : arr) {
    if (!row.is_array()) detail::malformed("each vector must be an array");
    Vector v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) v[i] = detail::element_of(row[i], order);
    if (n == 0) n = v.size();
    if (v.size() != n)
      detail::malformed("vector of length " + std::to_string(v.size()) + ", expected " +
                        std::to_string(n));
    out.push_back(std::move(v));
  }
  return out;
}

/// Accepts a subgroup object or anything carrying one under "subgroup" (the
/// output of `gen`). The canonical-form invariants are checked.
inline CanonicalSubgroup subgroup_from_json(const json& j, Element order) {
  if (!j.is_object()) detail::malformed("expected a subgroup object");
  const json& s = j.contains("subgroup") ? j.at("subgroup") : j;
  if (!s.is_object() || !s.contains("n") || !s.contains("blocks"))
    detail::malformed("subgroup needs \"n\" and \"blocks\"");
  CanonicalSubgroup t;
  t.n = detail::index_of(s.at("n"), "n");
  if (!s.at("blocks").is_array()) detail::malformed("\"blocks\" must be an array");
  for (const auto& b : s.at("blocks")) {
    if (!b.is_object() || !b.contains("pivot") || !b.contains("values") || !b.at("values").is_array())
      detail::malformed("block needs \"pivot\" and \"values\"");
    Block block;
    block.pivot = detail::index_of(b.at("pivot"), "pivot");
    for (const auto& e : b.at("values")) {
      if (!e.is_array() || e.size() != 2) detail::malformed("block value must be [coordinate, element]");
      block.values.emplace_back(detail::index_of(e[0], "coordinate"), detail::element_of(e[1], order));
    }
    t.blocks.push_back(std::move(block));
  }
  if (auto why = t.invariant_violation(order); !why.empty()) detail::malformed(why);
  if (s.contains("dim") && detail::index_of(s.at("dim"), "dim") != t.dim())
    detail::malformed("\"dim\" disagrees with the number of blocks");
  return t;
}

}  // namespace nearspace::json_io
