#pragma once

// Recursive stationary phase evaluation of Z(f, D) = int_D |f|^s as a RatFun:
//   Z(f,D) = nu + sigma (1-1/p) t/(1-t/p) + sum_{P singular} p^{-n} t^{e_P} Z(f_P)
// with f_P = pi^{-e_P} f(P + pi x) and P running over lifted singular residues.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "igusa/counting.hpp"
#include "igusa/neron.hpp"
#include "igusa/ratfun.hpp"
#include "igusa/region.hpp"

namespace igusa {

struct SpfConfig {
  std::uint32_t max_depth = 64;
  std::uint64_t budget = kDefaultEnumerationCap;
  bool trace = false;
  std::uint32_t lifting_shift = 0;  // residues lift to a + shift*pi
};

struct TreeStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t max_E = 0;
  std::uint64_t evaluations = 0;

  TreeStats& operator+=(const TreeStats& o) {
    nodes += o.nodes;
    leaves += o.leaves;
    max_depth = std::max(max_depth, o.max_depth);
    max_E = std::max(max_E, o.max_E);
    evaluations += o.evaluations;
    return *this;
  }
};

struct TraceNode {
  std::optional<std::size_t> parent;
  std::vector<std::string> center;  // lifted residue point, empty at the root
  std::uint64_t depth = 0;
  std::uint64_t e = 0;
  std::uint64_t E_accum = 0;
  mpq_class nu;
  mpq_class sigma;
  std::size_t singular_count = 0;
};

struct SpfResult {
  RatFun zeta;
  TreeStats stats;
  std::vector<TraceNode> trace;  // preorder; empty unless requested
};

/// (1 - 1/p) t / (1 - t/p), the contribution of a smooth zero of measure 1.
inline RatFun smooth_zero_series(std::uint32_t p) {
  const mpq_class c(static_cast<long>(p - 1), static_cast<unsigned long>(p));
  return RatFun(p, {mpq_class(0), c}, {{1, 1}});
}

namespace detail {

template <CoefficientRing Ring>
class SpfEvaluator {
 public:
  SpfEvaluator(const Ring& ring, const SpfConfig& cfg)
      : cfg_(cfg), lifting_(ring, cfg.lifting_shift), p_(ring.prime()), smooth_(smooth_zero_series(p_)) {}

  RatFun run(const MultiPoly<Ring>& f, const ResidueRegion& region) {
    auto [e0, g] = normalize_content(f);
    RatFun z = node(g, region, 0, e0, e0, std::nullopt, {});
    return z.scaled(mpq_class(1), e0);
  }

  TreeStats stats;
  std::vector<TraceNode> trace;

 private:
  RatFun node(const MultiPoly<Ring>& f, const ResidueRegion& region, std::uint64_t depth, std::uint64_t e,
              std::uint64_t E, std::optional<std::size_t> parent, std::vector<std::string> center) {
    if (depth > cfg_.max_depth)
      throw DepthExceeded("dilatation tree deeper than " + std::to_string(cfg_.max_depth) +
                          "; the region probably meets a non-isolated singularity");
    const std::uint64_t remaining = cfg_.budget > stats.evaluations ? cfg_.budget - stats.evaluations : 0;
    const PointClassification pc = classify_points(f, region, remaining);
    stats.evaluations += pc.evaluations;
    if (stats.evaluations > cfg_.budget)
      throw BudgetExceeded("stationary phase evaluation exceeded " + std::to_string(cfg_.budget) +
                           " point evaluations");
    ++stats.nodes;
    stats.max_depth = std::max(stats.max_depth, depth);
    stats.max_E = std::max(stats.max_E, E);
    if (pc.singular.empty()) ++stats.leaves;

    std::optional<std::size_t> self;
    if (cfg_.trace) {
      self = trace.size();
      trace.push_back({parent, std::move(center), depth, e, E, pc.nu, pc.sigma, pc.singular.size()});
    }

    RatFun z = RatFun::constant(p_, pc.nu) + smooth_.scaled(pc.sigma);
    const std::size_t n = f.nvars();
    const mpq_class weight = inverse_prime_power(p_, n);
    const std::vector<std::uint32_t> ones(n, 1);
    const ResidueRegion full = ResidueRegion::full(p_, n);
    for (const auto& pt : pc.singular) {
      const Point<Ring> lifted = lift_point(lifting_, pt);
      auto d = dilate(f, std::span<const typename Ring::element_type>(lifted),
                      std::span<const std::uint32_t>(ones));
      std::vector<std::string> label;
      if (cfg_.trace)
        for (const auto& c : lifted) label.push_back(f.ring().to_string(c));
      const RatFun child = node(d.f_p, full, depth + 1, d.e, E + d.e, self, std::move(label));
      z += child.scaled(weight, d.e);
    }
    return z;
  }

  SpfConfig cfg_;
  Lifting<Ring> lifting_;
  std::uint32_t p_;
  RatFun smooth_;
};

}  // namespace detail

/// int_D |f|^s. A positive content e0 is divided out and restored as t^{e0}.
template <CoefficientRing Ring>
SpfResult spf_zeta(const MultiPoly<Ring>& f, const ResidueRegion& region, const SpfConfig& cfg = {}) {
  if (f.is_zero()) throw ZeroPolynomial("the zeta function of 0 is not defined");
  if (region.nvars() != f.nvars() || region.prime() != f.ring().prime())
    throw InvalidParameters("region does not match the polynomial");
  if (cfg.max_depth == 0) throw InvalidParameters("max_depth must be at least 1");
  detail::SpfEvaluator<Ring> ev(f.ring(), cfg);
  RatFun z = ev.run(f, region);
  return {std::move(z), ev.stats, std::move(ev.trace)};
}

template <CoefficientRing Ring>
SpfResult spf_zeta(const MultiPoly<Ring>& f, const SpfConfig& cfg = {}) {
  return spf_zeta(f, ResidueRegion::full(f.ring().prime(), f.nvars()), cfg);
}

/// Rebuilds sum over trace nodes of p^{-n depth} t^{E} (nu + sigma S(t)).
inline RatFun reconstruct_from_trace(const std::vector<TraceNode>& trace, std::uint32_t p, std::size_t n) {
  const RatFun smooth = smooth_zero_series(p);
  RatFun z(p);
  for (const auto& node : trace) {
    const RatFun local = RatFun::constant(p, node.nu) + smooth.scaled(node.sigma);
    z += local.scaled(inverse_prime_power(p, n * node.depth), node.E_accum);
  }
  return z;
}

/// Expected t-coefficients of int_D |f|^s from counting: the coefficient of
/// t^j is the measure of {x in D : v(f(x)) = j}, i.e. M_j - M_{j+1} with
/// M_0 = measure(D) and M_j = N_j(D) p^{-nj}. Returns c_0..c_{J-1}.
template <CoefficientRing Ring>
std::vector<mpq_class> measure_series(const MultiPoly<Ring>& f, const ResidueRegion& region, std::uint32_t J,
                                      std::uint64_t budget = kDefaultEnumerationCap) {
  const auto N = count_solutions(f, region, J, budget);
  const std::uint32_t p = f.ring().prime();
  std::vector<mpq_class> M(J + 1);
  M[0] = region.measure();
  for (std::uint32_t j = 1; j <= J; ++j)
    M[j] = mpq_class(mpz_class(static_cast<unsigned long>(N[j]))) * inverse_prime_power(p, std::uint64_t(f.nvars()) * j);
  std::vector<mpq_class> c(J);
  for (std::uint32_t j = 0; j < J; ++j) {
    c[j] = M[j] - M[j + 1];
    c[j].canonicalize();
  }
  return c;
}

/// True iff the expansion of Z matches the counted measures for t^0..t^{J-1}.
template <CoefficientRing Ring>
bool series_check(const MultiPoly<Ring>& f, const ResidueRegion& region, const RatFun& Z, std::uint32_t J,
                  std::uint64_t budget = kDefaultEnumerationCap) {
  if (J == 0) return true;
  const auto expected = measure_series(f, region, J, budget);
  const auto got = Z.series(J - 1);
  return std::equal(expected.begin(), expected.end(), got.begin());
}

}  // namespace igusa
