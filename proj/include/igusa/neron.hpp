#pragma once

// Point classification of the reduction, dilatations f -> pi^{-e} f(P + pi^m x),
// and the Neron-type measures L(f,P), l(f,P) with the mu-procedure.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "igusa/poly.hpp"
#include "igusa/region.hpp"

namespace igusa {

enum class PointClass { NonVanishing, SmoothZero, SingularZero };

struct PointClassification {
  mpq_class nu;     // p^{-n} #{points where the reduction is nonzero}
  mpq_class sigma;  // p^{-n} #{smooth zeros}
  std::vector<FieldPoint> singular;
  std::uint64_t evaluations = 0;
};

/// Classifies every residue point of the region. f must have unit content.
template <CoefficientRing Ring>
PointClassification classify_points(const MultiPoly<Ring>& f, const ResidueRegion& region,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  const ResiduePoly fbar = reduce_mod_pi(f);
  const std::size_t n = f.nvars();
  if (region.nvars() != n) throw InvalidParameters("region and polynomial sizes differ");
  std::vector<ResiduePoly> grad;
  for (std::size_t i = 0; i < n; ++i) grad.push_back(fbar.partial_derivative(i));

  std::uint64_t nonvanishing = 0, smooth = 0;
  PointClassification out;
  region.for_each_point(
      [&](const FieldPoint& pt) {
        ++out.evaluations;
        if (fbar.evaluate(pt) != 0) {
          ++nonvanishing;
          return;
        }
        const bool is_smooth =
            std::any_of(grad.begin(), grad.end(), [&](const ResiduePoly& g) { return g.evaluate(pt) != 0; });
        if (is_smooth) ++smooth;
        else out.singular.push_back(pt);
      },
      cap);

  const mpq_class scale = inverse_prime_power(f.ring().prime(), n);
  out.nu = mpq_class(mpz_class(static_cast<unsigned long>(nonvanishing))) * scale;
  out.sigma = mpq_class(mpz_class(static_cast<unsigned long>(smooth))) * scale;
  out.nu.canonicalize();
  out.sigma.canonicalize();

  const mpq_class total =
      out.nu + out.sigma + mpq_class(mpz_class(static_cast<unsigned long>(out.singular.size()))) * scale;
  if (total != region.measure())
    throw InvariantViolation("point classification does not partition the region");
  return out;
}

template <CoefficientRing Ring>
struct Dilatation {
  MultiPoly<Ring> f_p;
  std::uint64_t e;
};

/// f(P + pi^m x) = pi^e f_P(x) with f_P of unit content.
template <CoefficientRing Ring>
Dilatation<Ring> dilate(const MultiPoly<Ring>& f, std::span<const typename Ring::element_type> center,
                        std::span<const std::uint32_t> scale) {
  const MultiPoly<Ring> moved = substitute_affine(f, center, scale);
  auto [e, fp] = normalize_content(moved);
  if (!(multiply_by_uniformizer(fp, e) == moved))
    throw InvariantViolation("dilatation identity failed");
  return {std::move(fp), e};
}

template <CoefficientRing Ring>
Point<Ring> lift_point(const Lifting<Ring>& lifting, const FieldPoint& pt) {
  Point<Ring> out;
  out.reserve(pt.size());
  for (auto a : pt) out.push_back(lifting(a));
  return out;
}

/// L(f,P) = min(v(f(P)), v(df/dx_i(P))); infinite when P is a singular zero.
template <CoefficientRing Ring>
ExtNat L_measure(const MultiPoly<Ring>& f, std::span<const typename Ring::element_type> pt) {
  ExtNat m = f.ring().valuation(evaluate(f, pt));
  for (std::size_t i = 0; i < f.nvars(); ++i)
    m = std::min(m, f.ring().valuation(evaluate(partial_derivative(f, i), pt)));
  return m;
}

/// l(f,P) = min_i v(df/dx_i(P)).
template <CoefficientRing Ring>
ExtNat l_measure(const MultiPoly<Ring>& f, std::span<const typename Ring::element_type> pt) {
  ExtNat m = ExtNat::infinity();
  for (std::size_t i = 0; i < f.nvars(); ++i)
    m = std::min(m, f.ring().valuation(evaluate(partial_derivative(f, i), pt)));
  return m;
}

template <CoefficientRing Ring>
struct MuResult {
  std::uint64_t mu;
  MultiPoly<Ring> f_out;
  std::uint64_t e_out;
};

/// Smallest mu >= 1 such that pi^{-e} f(P + pi^mu x) reduces to a nonzero
/// constant or to a nonzero linear form. Requires L(f,P) finite and P a
/// singular zero of the reduction. The search is bounded by L(f,P) + 2.
template <CoefficientRing Ring>
MuResult<Ring> mu_procedure(const MultiPoly<Ring>& f, std::span<const typename Ring::element_type> pt) {
  const ExtNat L = L_measure(f, pt);
  if (L.is_infinite()) throw NotApplicable("L(f,P) is infinite: P is a singular point of f");
  if (content_valuation(f) != 0) throw NotApplicable("f must have unit content");
  const ResiduePoly fbar = reduce_mod_pi(f);
  FieldPoint pbar;
  for (const auto& c : pt) pbar.push_back(f.ring().reduce(c));
  if (fbar.evaluate(pbar) != 0) throw NotApplicable("reduction does not vanish at P");
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (fbar.partial_derivative(i).evaluate(pbar) != 0)
      throw NotApplicable("reduction is smooth at P");

  const std::uint64_t limit = L.value() + 2;
  for (std::uint64_t mu = 1; mu <= limit; ++mu) {
    const std::vector<std::uint32_t> scale(f.nvars(), static_cast<std::uint32_t>(mu));
    auto d = dilate(f, pt, std::span<const std::uint32_t>(scale));
    const ResiduePoly r = reduce_mod_pi(d.f_p);
    if (r.is_constant() || r.is_linear_form()) return {mu, std::move(d.f_p), d.e};
  }
  throw InvariantViolation("mu-procedure exceeded L(f,P) + 2 = " + std::to_string(limit));
}

}  // namespace igusa
