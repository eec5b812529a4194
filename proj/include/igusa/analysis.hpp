#pragma once

// Poincare series P(t) = sum N_j (p^{-n} t)^j, congruence counts, the
// finite-range growth statistic for N_j, and the closed form of
// Z(alpha x^n + beta y^m) obtained by splitting O_K^2 by (v(x), v(y)).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "igusa/counting.hpp"
#include "igusa/ratfun.hpp"
#include "igusa/spf.hpp"
#include "igusa/sqh.hpp"

namespace igusa {

struct PoincareSeries {
  RatFun P;
  std::size_t n;
  std::uint32_t p;

  /// N_0..N_J, checked to be nonnegative integers.
  std::vector<mpz_class> counts(std::size_t J) const {
    const auto c = P.series(J);
    std::vector<mpz_class> N;
    for (std::size_t j = 0; j <= J; ++j) {
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), p, n * j);
      mpq_class v = c[j] * mpq_class(scale);
      v.canonicalize();
      if (v.get_den() != 1 || sgn(v) < 0)
        throw InvariantViolation("N_" + std::to_string(j) + " = " + v.get_str() +
                                 " is not a nonnegative integer");
      N.push_back(v.get_num());
    }
    if (N[0] != 1) throw InvariantViolation("N_0 must be 1");
    return N;
  }
};

/// P(t) = (1 - t Z(t)) / (1 - t). Z(1) = 1 for any zeta function over the
/// whole space, so the division is exact; otherwise Z is rejected.
inline PoincareSeries poincare_from_zeta(const RatFun& Z, std::size_t n) {
  const std::uint32_t p = Z.prime();
  const qpoly::Poly D = Z.denominator_polynomial();
  const qpoly::Poly top = qpoly::sub(D, qpoly::shift_scale(Z.numerator(), mpq_class(1), 1));
  auto [q, r] = qpoly::divmod(top, {mpq_class(1), mpq_class(-1)});
  if (!r.empty()) throw InvariantViolation("Z(1) != 1: not the zeta function of a polynomial on O_K^n");
  PoincareSeries out{RatFun(p, std::move(q), Z.denominator()), n, p};
  const auto c0 = out.P.series(0);
  if (c0[0] != 1) throw InvariantViolation("P(0) != 1");
  return out;
}

/// Exhaustive counts N_0..N_J over the whole space.
template <CoefficientRing Ring>
std::vector<std::uint64_t> oracle_counts(const MultiPoly<Ring>& F, std::uint32_t J,
                                         std::uint64_t budget = kDefaultEnumerationCap) {
  return count_solutions(F, ResidueRegion::full(F.ring().prime(), F.nvars()), J, budget);
}

struct BoundReport {
  bool above_one = false;         // |alpha|/d > 1
  mpq_class growth_exponent;      // n - min(1, |alpha|/d)
  std::vector<mpq_class> ratios;  // N_j^d / p^{j(nd - min(d, |alpha|))}, j >= 1
  mpq_class max_ratio;
};

/// Compares N_j with p^{j (n - min(1, |alpha|/d))} over the computed range.
/// Powers are raised to d to stay in integers.
inline BoundReport bound_check(const std::vector<mpz_class>& N, const WeightSystem& w, std::size_t n,
                               std::uint32_t p) {
  BoundReport rep;
  const std::uint64_t a = w.norm(), d = w.d;
  rep.above_one = a > d;
  const std::uint64_t m = std::min(a, d);
  rep.growth_exponent = mpq_class(static_cast<long>(n * d - m), static_cast<unsigned long>(d));
  rep.growth_exponent.canonicalize();
  for (std::size_t j = 1; j < N.size(); ++j) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), N[j].get_mpz_t(), d);
    mpz_ui_pow_ui(den.get_mpz_t(), p, j * (n * d - m));
    mpq_class r(num, den);
    r.canonicalize();
    rep.ratios.push_back(r);
    if (j == 1 || r > rep.max_ratio) rep.max_ratio = r;
  }
  return rep;
}

/// Z(alpha x^n + beta y^m) for coprime n, m > 1 and a unit alpha, computed
/// cell by cell over (v(x), v(y)) and closed with the self-similarity of the
/// box {v(x) >= m, v(y) >= n}. Independent of the recursive engine.
template <CoefficientRing Ring>
RatFun binomial_closed_form(std::uint32_t n, std::uint32_t m, const typename Ring::element_type& alpha,
                             const typename Ring::element_type& beta, const Ring& ring) {
  if (n <= 1 || m <= 1) throw InvalidParameters("exponents must exceed 1");
  if (std::gcd(n, m) != 1) throw InvalidParameters("exponents must be coprime");
  const std::uint32_t p = ring.prime();
  if (n % p == 0 && m % p == 0) throw InvalidParameters("residue characteristic divides both exponents");
  if (ring.valuation(alpha) != ExtNat(0)) throw InvalidParameters("alpha must be a unit");
  if (ring.is_zero(beta)) throw InvalidParameters("beta must be nonzero");

  const std::uint64_t v = ring.valuation(beta).value();
  const std::uint64_t g = v / n, r = v % n;
  const PrimeField& F = ring.residue_field();
  const std::uint32_t abar = ring.reduce(alpha);
  const std::uint32_t mubar = ring.reduce(ring.divide_by_uniformizer(beta, v));

  // nu and sigma of abar x^n + mubar y^m on (F_p^*)^2.
  std::uint64_t nonzero = 0, smooth = 0;
  for (std::uint32_t x = 1; x < p; ++x)
    for (std::uint32_t y = 1; y < p; ++y) {
      const std::uint32_t h = F.add(F.mul(abar, F.pow(x, n)), F.mul(mubar, F.pow(y, m)));
      if (h != 0) {
        ++nonzero;
        continue;
      }
      const bool dx = F.mul(F.mul(abar, F.from_integer(n)), F.pow(x, n - 1)) != 0;
      const bool dy = F.mul(F.mul(mubar, F.from_integer(m)), F.pow(y, m - 1)) != 0;
      if (!dx && !dy) throw InvariantViolation("singular zero on the unit torus");
      ++smooth;
    }
  const mpq_class p2 = inverse_prime_power(p, 2);
  const mpq_class nu = mpq_class(mpz_class(static_cast<unsigned long>(nonzero))) * p2;
  const mpq_class sigma = mpq_class(mpz_class(static_cast<unsigned long>(smooth))) * p2;
  const mpq_class unit(static_cast<long>(p - 1), static_cast<unsigned long>(p));
  const RatFun unit_torus = RatFun::constant(p, nu) + smooth_zero_series(p).scaled(sigma);

  RatFun Z(p);
  // v(x) = k < m, v(y) >= n: the x-term dominates.
  for (std::uint64_t k = 0; k < m; ++k)
    Z += RatFun::monomial(p, unit * inverse_prime_power(p, n + k), k * n);
  // v(x) = i < m + g + r, v(y) = j < n: compare ni with v + mj.
  for (std::uint64_t i = 0; i < m + g + r; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      const mpq_class cell = inverse_prime_power(p, i + j);
      const std::int64_t L = static_cast<std::int64_t>(j * m + v) - static_cast<std::int64_t>(i * n);
      if (L > 0) Z += RatFun::monomial(p, unit * unit * cell, n * i);
      else if (L < 0) Z += RatFun::monomial(p, unit * unit * cell, v + m * j);
      else Z += unit_torus.scaled(cell, n * i);
    }
  // v(x) >= m + g + r, v(y) = k < n: the y-term dominates.
  for (std::uint64_t k = 0; k < n; ++k)
    Z += RatFun::monomial(p, unit * inverse_prime_power(p, m + g + r + k), v + m * k);
  return Z.geometric_close(n + m, n * m);
}

}  // namespace igusa
