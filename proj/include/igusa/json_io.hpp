#pragma once

// JSON forms of rational functions, dilatation traces, driver reports and
// counts. Integers that fit in 64 bits are written as JSON numbers, larger
// ones as decimal strings; readers accept both.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "igusa/ratfun.hpp"
#include "igusa/spf.hpp"
#include "igusa/sqh.hpp"

namespace igusa {

using json = nlohmann::json;

inline json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

inline mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw InvalidParameters("expected an integer, got " + j.dump());
}

inline json rational_to_json(const mpq_class& q) {
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

inline mpq_class rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidParameters("expected [num, den], got " + j.dump());
  mpq_class q(integer_from_json(j[0]), integer_from_json(j[1]));
  q.canonicalize();
  return q;
}

/// {"num": [[num,den], ...], "denom": [{"a":..,"b":..}, ...]}
inline json ratfun_to_json(const RatFun& r) {
  json num = json::array();
  for (const auto& c : r.numerator()) num.push_back(rational_to_json(c));
  json den = json::array();
  for (const auto& f : r.denominator()) den.push_back({{"a", f.a}, {"b", f.b}});
  return {{"num", num}, {"denom", den}};
}

inline RatFun ratfun_from_json(const json& j, std::uint32_t p) {
  qpoly::Poly num;
  for (const auto& c : j.at("num")) num.push_back(rational_from_json(c));
  std::vector<DenomFactor> den;
  for (const auto& f : j.at("denom")) den.push_back({f.at("a").get<std::uint32_t>(), f.at("b").get<std::uint32_t>()});
  return RatFun(p, std::move(num), std::move(den));
}

inline json stats_to_json(const TreeStats& s) {
  return {{"nodes", s.nodes},
          {"leaves", s.leaves},
          {"max_depth", s.max_depth},
          {"max_E", s.max_E},
          {"evaluations", s.evaluations}};
}

/// Nested tree; each node lists its children in evaluation order.
inline json trace_to_json(const std::vector<TraceNode>& trace) {
  if (trace.empty()) return nullptr;
  std::vector<json> nodes(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceNode& t = trace[i];
    nodes[i] = {{"center", t.center},
                {"depth", t.depth},
                {"e", t.e},
                {"E_accum", t.E_accum},
                {"nu", rational_to_json(t.nu)},
                {"sigma", rational_to_json(t.sigma)},
                {"singular", t.singular_count},
                {"children", json::array()}};
  }
  // Preorder: children come after their parent, so fold from the back.
  for (std::size_t i = trace.size(); i-- > 1;) {
    auto& siblings = nodes[*trace[i].parent]["children"];
    siblings.insert(siblings.begin(), std::move(nodes[i]));
  }
  return nodes[0];
}

/// Per-cell trees of a complement evaluation. "B" lists 1-based coordinates.
inline json cell_traces_to_json(const std::vector<CellTrace>& cells) {
  json out = json::array();
  for (const auto& c : cells) {
    json b = json::array(), a = json::array();
    for (std::size_t i = 0; i < c.cell.cell.nvars(); ++i)
      if (c.cell.cell.in_b[i]) {
        b.push_back(i + 1);
        a.push_back(c.cell.cell.a[i]);
      }
    out.push_back({{"sign", c.cell.sign},
                   {"B", b},
                   {"a", a},
                   {"e", c.e},
                   {"d_shift", c.d_shift},
                   {"tree", trace_to_json(c.nodes)}});
  }
  return out;
}

inline json weights_to_json(const WeightSystem& w) { return {{"weights", w.alpha}, {"d", w.d}}; }

inline json poles_to_json(const std::vector<mpq_class>& poles) {
  json out = json::array();
  for (const auto& q : poles) out.push_back(rational_to_json(q));
  return out;
}

/// {"weights": [...], "d": .., "k0": .., "zeta": .., "pole_real_parts": [...], "tree_stats": {...}}
inline json report_to_json(const RatFun& Z, const SqhReport& rep) {
  return {{"weights", rep.weights.alpha},
          {"d", rep.weights.d},
          {"k0", rep.k0},
          {"quasihomogeneous", rep.quasihomogeneous},
          {"cutoff", rep.cutoff},
          {"agreement_bound", rep.agreement_bound},
          {"zeta", ratfun_to_json(Z)},
          {"pole_real_parts", poles_to_json(rep.pole_real_parts)},
          {"tree_stats", stats_to_json(rep.stats)}};
}

inline json counts_to_json(std::uint32_t p, std::size_t n, const std::vector<mpz_class>& N) {
  json arr = json::array();
  for (const auto& v : N) arr.push_back(integer_to_json(v));
  return {{"p", p}, {"n", n}, {"N", arr}};
}

}  // namespace igusa
