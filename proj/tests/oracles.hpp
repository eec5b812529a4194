#pragma once

// Naive reference counts for the tests: enumerate every x in (O/pi^J)^n,
// evaluate f(x) exactly and read off its valuation. No pruning, no shared
// code with the library's digit search.

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "igusa/poly.hpp"

namespace igusa::testing {

/// All elements of O/pi^J as ring elements (integers in [0,p^J) or
/// polynomials in u of degree < J).
template <CoefficientRing Ring>
std::vector<typename Ring::element_type> residues_mod(const Ring& R, std::uint32_t J) {
  std::vector<typename Ring::element_type> out{R.zero()};
  for (std::uint32_t k = 0; k < J; ++k) {
    std::vector<typename Ring::element_type> next;
    const auto piece = R.uniformizer_power(k);
    for (std::uint32_t a = 0; a < R.prime(); ++a)
      for (const auto& x : out) next.push_back(typename Ring::element_type(x + R.from_integer(a) * piece));
    out = std::move(next);
  }
  return out;
}

/// histogram[j] = #{x in (O/pi^J)^n : pred(x), min(v(f(x)), J) = j}, j = 0..J.
template <CoefficientRing Ring>
std::vector<std::uint64_t> valuation_histogram(
    const MultiPoly<Ring>& f, std::uint32_t J,
    const std::function<bool(const std::vector<typename Ring::element_type>&)>& pred = nullptr) {
  const Ring& R = f.ring();
  const auto res = residues_mod(R, J);
  const std::size_t n = f.nvars();
  std::vector<std::uint64_t> hist(J + 1, 0);
  std::vector<std::size_t> idx(n, 0);
  std::vector<typename Ring::element_type> x(n, R.zero());
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x[i] = res[idx[i]];
    if (!pred || pred(x)) {
      const ExtNat v = R.valuation(evaluate(f, std::span<const typename Ring::element_type>(x)));
      const std::uint64_t j = v >= ExtNat(J) ? J : v.value();
      ++hist[j];
    }
    std::size_t i = n;
    while (i-- > 0) {
      if (++idx[i] < res.size()) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return hist;
}

/// N_0..N_J computed from the histogram at level J.
template <CoefficientRing Ring>
std::vector<std::uint64_t> naive_counts(const MultiPoly<Ring>& f, std::uint32_t J) {
  const auto hist = valuation_histogram(f, J);
  const std::uint64_t p = f.ring().prime();
  std::vector<std::uint64_t> N(J + 1, 0);
  for (std::uint32_t j = 0; j <= J; ++j) {
    std::uint64_t at_least = 0;
    for (std::uint32_t k = j; k <= J; ++k) at_least += hist[k];
    std::uint64_t fibre = 1;  // p^{n(J-j)} lifts of each class mod pi^j
    for (std::uint64_t k = 0; k < f.nvars() * (J - j); ++k) fibre *= p;
    N[j] = at_least / fibre;
  }
  return N;
}

/// Measures of {x : pred(x), v(f(x)) = j} for j < J.
template <CoefficientRing Ring>
std::vector<mpq_class> naive_measures(
    const MultiPoly<Ring>& f, std::uint32_t J,
    const std::function<bool(const std::vector<typename Ring::element_type>&)>& pred = nullptr) {
  const auto hist = valuation_histogram(f, J, pred);
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), f.ring().prime(), f.nvars() * J);
  std::vector<mpq_class> out;
  for (std::uint32_t j = 0; j < J; ++j) {
    mpq_class m(mpz_class(std::to_string(hist[j])), total);
    m.canonicalize();
    out.push_back(m);
  }
  return out;
}

}  // namespace igusa::testing
