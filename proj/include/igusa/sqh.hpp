#pragma once

// Zeta functions of semiquasihomogeneous polynomials F = f + g, where f is
// quasihomogeneous of weighted degree d for weights alpha and every monomial
// of g has weighted degree > d.
//
// With A = {v(x_i) >= alpha_i}, F(pi^alpha x) = pi^d F_1(x), so
//   Z(F) = C_0 + w Z(F_1),  w = p^{-|alpha|} t^d,  C_k = Z(F_k, complement of A).
// F_k converges pi-adically to f, and C_k = C_inf := Z(f, complement of A) as
// soon as F_k agrees with f modulo a power of pi that exceeds every
// multiplicity met in the dilatation trees of f on the complement cells.
// That power is read off the trees, which gives a certified cut-off K and
//   Z(F) = sum_{k<K} w^k C_k + w^K C_inf / (1 - w).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "igusa/poly.hpp"
#include "igusa/ratfun.hpp"
#include "igusa/region.hpp"
#include "igusa/spf.hpp"

namespace igusa {

struct WeightSystem {
  std::vector<std::uint32_t> alpha;
  std::uint32_t d = 0;

  std::uint32_t norm() const { return std::accumulate(alpha.begin(), alpha.end(), std::uint32_t{0}); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
    return s + ":" + std::to_string(d);
  }

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

template <CoefficientRing Ring>
struct SqhDecomposition {
  MultiPoly<Ring> f;  // weighted degree exactly d
  MultiPoly<Ring> g;  // weighted degree > d
  WeightSystem weights;

  bool quasihomogeneous() const { return g.is_zero(); }
};

namespace detail {

inline std::uint32_t gcd_of(const std::vector<std::uint32_t>& v) {
  std::uint32_t g = 0;
  for (auto a : v) g = std::gcd(g, a);
  return g;
}

/// Splits F along alpha at the minimal weighted degree.
template <CoefficientRing Ring>
SqhDecomposition<Ring> split_at_minimum(const MultiPoly<Ring>& F, const std::vector<std::uint32_t>& alpha) {
  std::uint64_t d = std::numeric_limits<std::uint64_t>::max();
  for (const auto& t : F.terms()) d = std::min(d, weighted_degree(t.first, alpha));
  SqhDecomposition<Ring> out{MultiPoly<Ring>(F.ring(), F.nvars()), MultiPoly<Ring>(F.ring(), F.nvars()),
                             {alpha, static_cast<std::uint32_t>(d)}};
  for (const auto& [e, c] : F.terms()) (weighted_degree(e, alpha) == d ? out.f : out.g).add_term(e, c);
  return out;
}

// Necessary condition for f to have an isolated singularity: every variable
// occurs in f as a pure power x_i^k or in a monomial x_i^a x_j (j != i).
template <CoefficientRing Ring>
bool covers_every_variable(const MultiPoly<Ring>& f) {
  const std::size_t n = f.nvars();
  std::vector<bool> covered(n, false);
  for (const auto& t : f.terms()) {
    const Exponent& e = t.first;
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) support.push_back(i);
    if (support.size() == 1) covered[support[0]] = true;
    if (support.size() == 2) {
      const auto i = support[0], j = support[1];
      if (e[j] == 1) covered[i] = true;
      if (e[i] == 1) covered[j] = true;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

}  // namespace detail

/// Finds (or validates) the weight system of F. Without a hint, searches
/// 1 <= alpha_i <= deg F with gcd 1, in order of |alpha| then lexicographic,
/// for the first alpha whose lowest-weight part involves every variable in
/// the way an isolated quasihomogeneous singularity must.
template <CoefficientRing Ring>
SqhDecomposition<Ring> detect_weights(const MultiPoly<Ring>& F, const std::optional<WeightSystem>& hint = {}) {
  if (F.is_zero()) throw ZeroPolynomial("cannot decompose the zero polynomial");
  if (F.has_constant_term())
    throw NotSemiQuasiHomogeneous("F has a constant term; evaluate it with the stationary phase formula directly");
  const std::size_t n = F.nvars();

  if (hint) {
    const WeightSystem& w = *hint;
    if (w.alpha.size() != n) throw InvalidHint("expected " + std::to_string(n) + " weights, got " + w.to_string());
    if (std::any_of(w.alpha.begin(), w.alpha.end(), [](auto a) { return a == 0; }) || w.d == 0)
      throw InvalidHint("weights and degree must be positive: " + w.to_string());
    if (detail::gcd_of(w.alpha) != 1) throw InvalidHint("weights must have gcd 1: " + w.to_string());
    SqhDecomposition<Ring> out{MultiPoly<Ring>(F.ring(), n), MultiPoly<Ring>(F.ring(), n), w};
    for (const auto& [e, c] : F.terms()) {
      const auto wd = weighted_degree(e, w.alpha);
      if (wd < w.d)
        throw InvalidHint("monomial of weighted degree " + std::to_string(wd) + " < d = " + std::to_string(w.d) +
                          " for weights " + w.to_string());
      (wd == w.d ? out.f : out.g).add_term(e, c);
    }
    if (out.f.is_zero()) throw InvalidHint("no monomial has weighted degree exactly " + std::to_string(w.d));
    if (!detail::covers_every_variable(out.f))
      throw InvalidHint("weighted-degree-" + std::to_string(w.d) + " part for " + w.to_string() +
                        " cannot have an isolated singularity");
    return out;
  }

  const std::uint32_t box = static_cast<std::uint32_t>(F.total_degree());
  if (checked_power(box, n) > 10'000'000)
    throw NotSemiQuasiHomogeneous("weight search box too large; pass explicit weights");
  std::vector<std::vector<std::uint32_t>> candidates;
  std::vector<std::uint32_t> alpha(n, 1);
  for (;;) {
    if (detail::gcd_of(alpha) == 1) candidates.push_back(alpha);
    std::size_t i = n;
    while (i-- > 0) {
      if (++alpha[i] <= box) break;
      alpha[i] = 1;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    const auto sa = std::accumulate(a.begin(), a.end(), 0u), sb = std::accumulate(b.begin(), b.end(), 0u);
    return sa != sb ? sa < sb : a < b;
  });
  for (const auto& a : candidates) {
    auto dec = detail::split_at_minimum(F, a);
    if (detail::covers_every_variable(dec.f)) return dec;
  }
  throw NotSemiQuasiHomogeneous("no weight system with entries up to " + std::to_string(box) + " fits F");
}

/// F_{k+1} = pi^{-d} F_k(pi^{alpha_1} x_1, ..., pi^{alpha_n} x_n).
template <CoefficientRing Ring>
MultiPoly<Ring> scale_step(const MultiPoly<Ring>& F, const WeightSystem& w) {
  const MultiPoly<Ring> scaled = substitute_scaling(F, w.alpha);
  try {
    return divide_by_uniformizer(scaled, w.d);
  } catch (const InsufficientValuation&) {
    throw InvariantViolation("F(pi^alpha x) is not divisible by pi^d; F is not semiquasihomogeneous for " +
                             w.to_string());
  }
}

struct CellTrace {
  SignedCell cell;
  std::uint64_t e = 0;
  std::uint64_t d_shift = 0;
  std::vector<TraceNode> nodes;
};

struct ComplementResult {
  RatFun zeta;
  TreeStats stats;
  std::vector<CellTrace> traces;  // filled when cfg.trace is set
  // Largest e_cell + E over all cells and tree nodes; any F' = F mod pi^m with
  // m beyond this bound has the same complement integral.
  std::uint64_t agreement_bound = 0;
};

template <CoefficientRing Ring>
ComplementResult complement_evaluation(const MultiPoly<Ring>& F, const WeightSystem& w, const SpfConfig& cfg = {}) {
  if (F.is_zero()) throw ZeroPolynomial("zeta function of the zero polynomial");
  const std::uint32_t p = F.ring().prime();
  ComplementResult out{RatFun(p), {}, {}, 0};
  for (const auto& sc : complement_cells(Polydisc(w.alpha))) {
    const auto change = cell_change_of_variables(F, sc.cell);
    SpfResult r = spf_zeta(change.f_b, change.target, cfg);
    out.stats += r.stats;
    if (cfg.trace) out.traces.push_back({sc, change.e, change.d_shift, std::move(r.trace)});
    out.agreement_bound = std::max(out.agreement_bound, change.e + r.stats.max_E);
    const mpq_class c = mpq_class(sc.sign) * inverse_prime_power(p, change.d_shift);
    out.zeta += r.zeta.scaled(c, change.e);
  }
  if (!out.zeta.denominator_divides({{1, 1}}))
    throw InvariantViolation("complement integral has denominator beyond (1 - t/p): " + out.zeta.to_string());
  return out;
}

/// Z(F, complement of A_alpha) as a rational function.
template <CoefficientRing Ring>
RatFun zeta_on_complement(const MultiPoly<Ring>& F, const WeightSystem& w, const SpfConfig& cfg = {}) {
  return complement_evaluation(F, w, cfg).zeta;
}

struct SqhConfig {
  SpfConfig spf;
  std::uint32_t max_iterations = 32;
};

struct SqhReport {
  WeightSystem weights;
  bool quasihomogeneous = false;
  std::uint64_t k0 = 0;           // C_k = C_inf for every k >= k0
  std::uint64_t cutoff = 0;       // first k with m_k above the agreement bound
  std::uint64_t agreement_bound = 0;
  std::vector<std::uint64_t> m;   // pi-valuation of F_k - f, k < cutoff (+1)
  std::vector<RatFun> complements;  // C_0 .. C_{cutoff-1}
  RatFun limit_complement{2};     // C_inf, placeholder prime until set
  std::vector<CellTrace> limit_trace;
  std::vector<std::vector<CellTrace>> step_traces;  // one per computed C_k
  std::vector<mpq_class> pole_real_parts;
  TreeStats stats;
};

struct SqhResult {
  RatFun zeta;
  SqhReport report;
};

template <CoefficientRing Ring>
SqhResult zeta_semiquasihomogeneous(const MultiPoly<Ring>& F, const std::optional<WeightSystem>& hint = {},
                                    const SqhConfig& cfg = {}) {
  if (cfg.max_iterations == 0) throw InvalidParameters("max_iterations must be at least 1");
  const auto dec = detect_weights(F, hint);
  const WeightSystem& w = dec.weights;
  const std::uint32_t p = F.ring().prime();

  SqhReport rep;
  rep.weights = w;
  rep.quasihomogeneous = dec.quasihomogeneous();

  ComplementResult limit = complement_evaluation(dec.f, w, cfg.spf);
  rep.stats += limit.stats;
  rep.limit_trace = std::move(limit.traces);
  rep.limit_complement = limit.zeta;
  rep.agreement_bound = limit.agreement_bound;

  RatFun Z(p);
  if (rep.quasihomogeneous) {
    Z = limit.zeta.geometric_close(w.norm(), w.d);
  } else {
    MultiPoly<Ring> Fk = F;
    std::uint64_t k = 0;
    for (;; ++k) {
      const std::uint64_t mk = content_valuation(Fk - dec.f);
      if (!rep.m.empty() && mk <= rep.m.back())
        throw InvariantViolation("valuation of F_k - f did not increase at k = " + std::to_string(k));
      rep.m.push_back(mk);
      if (mk > limit.agreement_bound) break;
      if (k >= cfg.max_iterations)
        throw StabilizationNotReached("no certified stabilization within " + std::to_string(cfg.max_iterations) +
                                      " iterations (F_k - f has valuation " + std::to_string(mk) +
                                      ", needs more than " + std::to_string(limit.agreement_bound) + ")");
      ComplementResult ck = complement_evaluation(Fk, w, cfg.spf);
      rep.stats += ck.stats;
      if (cfg.spf.trace) rep.step_traces.push_back(std::move(ck.traces));
      rep.complements.push_back(ck.zeta);
      Fk = scale_step(Fk, w);
    }
    rep.cutoff = k;
    rep.k0 = k;
    while (rep.k0 > 0 && rep.complements[rep.k0 - 1] == limit.zeta) --rep.k0;

    const mpq_class wc = inverse_prime_power(p, w.norm());
    mpq_class wk = 1;
    for (std::uint64_t j = 0; j < rep.k0; ++j) {
      Z += rep.complements[j].scaled(wk, j * w.d);
      wk *= wc;
    }
    Z += limit.zeta.scaled(wk, rep.k0 * w.d).geometric_close(w.norm(), w.d);
  }

  if (!Z.denominator_divides({{1, 1}, {w.norm(), w.d}}))
    throw InvariantViolation("denominator of Z does not divide (1 - t/p)(1 - p^-|alpha| t^d): " + Z.to_string());
  rep.pole_real_parts = Z.pole_real_parts();
  return {std::move(Z), std::move(rep)};
}

}  // namespace igusa
