#pragma once

// Exhaustive congruence counting: N_j(D) = #{x mod pi^j : x mod pi in D, f(x) = 0 mod pi^j}.
// Digits of x are chosen one pi-adic level at a time; a point modulo pi^{k+1}
// can only be a solution if its truncation modulo pi^k is one, so the search
// descends only below solutions. Every candidate that could be a solution is
// still evaluated.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "igusa/coeff.hpp"
#include "igusa/poly.hpp"
#include "igusa/region.hpp"

namespace igusa {

namespace detail {

// Arithmetic in Z/p^J with J fixed; residues fit in 63 bits.
class IntegerTruncation {
 public:
  using value_type = std::uint64_t;

  IntegerTruncation(const MultiPoly<ZpRing>& f, std::uint32_t J) : p_(f.ring().prime()) {
    pow_.push_back(1);
    for (std::uint32_t k = 0; k < J; ++k) {
      if (pow_.back() > (std::uint64_t{1} << 62) / p_)
        throw BudgetExceeded("p^" + std::to_string(J) + " exceeds the 62-bit counting range");
      pow_.push_back(pow_.back() * p_);
    }
    mod_ = pow_.back();
    const mpz_class m(std::to_string(mod_));
    for (const auto& [e, c] : f.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
      terms_.push_back({e, std::stoull(r.get_str())});
    }
    n_ = f.nvars();
    for (std::size_t i = 0; i < n_; ++i) deg_.push_back(f.degree_in(i));
  }

  value_type zero() const { return 0; }
  void set_digit(value_type& x, std::uint32_t k, std::uint32_t d) const { x += pow_[k] * d; }
  void clear_digit(value_type& x, std::uint32_t k, std::uint32_t d) const { x -= pow_[k] * d; }

  /// True iff the value is divisible by pi^k.
  bool divisible(value_type v, std::uint32_t k) const { return v % pow_[k] == 0; }

  value_type evaluate(const std::vector<value_type>& x) const {
    thread_local std::vector<std::vector<value_type>> powers;
    powers.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      powers[i].assign(deg_[i] + 1, 1);
      for (std::uint32_t k = 1; k <= deg_[i]; ++k) powers[i][k] = mul(powers[i][k - 1], x[i]);
    }
    value_type acc = 0;
    for (const auto& [e, c] : terms_) {
      value_type v = c;
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) v = mul(v, powers[i][e[i]]);
      acc += v;
      if (acc >= mod_) acc -= mod_;
    }
    return acc;
  }

 private:
  value_type mul(value_type a, value_type b) const {
    __extension__ using wide = unsigned __int128;
    return static_cast<value_type>(static_cast<wide>(a) * b % mod_);
  }

  std::uint32_t p_;
  std::vector<std::uint64_t> pow_;
  std::uint64_t mod_ = 1;
  std::vector<std::pair<Exponent, value_type>> terms_;
  std::vector<std::uint32_t> deg_;
  std::size_t n_ = 0;
};

// Arithmetic in F_p[u]/u^J: digit vectors of length J.
class PolynomialTruncation {
 public:
  using value_type = std::vector<std::uint32_t>;

  PolynomialTruncation(const MultiPoly<FpPiRing>& f, std::uint32_t J)
      : field_(f.ring().residue_field()), J_(J) {
    for (const auto& [e, c] : f.terms()) {
      value_type v(J_, 0);
      for (std::uint32_t k = 0; k < J_; ++k) v[k] = c.coeff(k);
      terms_.push_back({e, std::move(v)});
    }
    n_ = f.nvars();
    for (std::size_t i = 0; i < n_; ++i) deg_.push_back(f.degree_in(i));
  }

  value_type zero() const { return value_type(J_, 0); }
  void set_digit(value_type& x, std::uint32_t k, std::uint32_t d) const { x[k] = d; }
  void clear_digit(value_type& x, std::uint32_t k, std::uint32_t) const { x[k] = 0; }

  bool divisible(const value_type& v, std::uint32_t k) const {
    for (std::uint32_t i = 0; i < k && i < J_; ++i)
      if (v[i]) return false;
    return true;
  }

  value_type evaluate(const std::vector<value_type>& x) const {
    std::vector<std::vector<value_type>> powers(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      value_type one(J_, 0);
      if (J_) one[0] = 1;
      powers[i].push_back(one);
      for (std::uint32_t k = 1; k <= deg_[i]; ++k) powers[i].push_back(mul(powers[i].back(), x[i]));
    }
    value_type acc(J_, 0);
    for (const auto& [e, c] : terms_) {
      value_type v = c;
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) v = mul(v, powers[i][e[i]]);
      for (std::uint32_t k = 0; k < J_; ++k) acc[k] = field_.add(acc[k], v[k]);
    }
    return acc;
  }

 private:
  value_type mul(const value_type& a, const value_type& b) const {
    value_type r(J_, 0);
    for (std::uint32_t i = 0; i < J_; ++i) {
      if (!a[i]) continue;
      for (std::uint32_t j = 0; i + j < J_; ++j) r[i + j] = field_.add(r[i + j], field_.mul(a[i], b[j]));
    }
    return r;
  }

  PrimeField field_;
  std::uint32_t J_;
  std::vector<std::pair<Exponent, value_type>> terms_;
  std::vector<std::uint32_t> deg_;
  std::size_t n_ = 0;
};

template <class Arith>
class DigitSearch {
 public:
  DigitSearch(const Arith& arith, std::uint32_t p, std::size_t n, std::uint32_t J, std::uint64_t budget)
      : arith_(arith), p_(p), n_(n), J_(J), budget_(budget), counts_(J + 1, 0) {}

  std::vector<std::uint64_t> run(const ResidueRegion& region) {
    counts_[0] = 1;
    if (J_ == 0) return counts_;
    std::vector<typename Arith::value_type> x(n_, arith_.zero());
    region.for_each_point([&](const FieldPoint& pt) {
      for (std::size_t i = 0; i < n_; ++i) arith_.set_digit(x[i], 0, pt[i]);
      if (check(x, 1)) descend(x, 1);
      for (std::size_t i = 0; i < n_; ++i) arith_.clear_digit(x[i], 0, pt[i]);
    });
    return counts_;
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  bool check(const std::vector<typename Arith::value_type>& x, std::uint32_t level) {
    if (++evaluations_ > budget_)
      throw BudgetExceeded("congruence counting exceeded " + std::to_string(budget_) + " evaluations");
    return arith_.divisible(arith_.evaluate(x), level);
  }

  // x is a solution modulo pi^level; count it and try every next digit.
  void descend(std::vector<typename Arith::value_type>& x, std::uint32_t level) {
    ++counts_[level];
    if (level == J_) return;
    FieldPoint digits(n_, 0);
    for (;;) {
      for (std::size_t i = 0; i < n_; ++i) arith_.set_digit(x[i], level, digits[i]);
      if (check(x, level + 1)) descend(x, level + 1);
      for (std::size_t i = 0; i < n_; ++i) arith_.clear_digit(x[i], level, digits[i]);
      std::size_t i = n_;
      while (i-- > 0) {
        if (++digits[i] < p_) break;
        digits[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) return;
    }
  }

  const Arith& arith_;
  std::uint32_t p_;
  std::size_t n_;
  std::uint32_t J_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace detail

/// N_0..N_J over the region (N_0 = 1 by convention).
template <CoefficientRing Ring>
std::vector<std::uint64_t> count_solutions(const MultiPoly<Ring>& f, const ResidueRegion& region,
                                           std::uint32_t J, std::uint64_t budget = kDefaultEnumerationCap) {
  if (region.nvars() != f.nvars()) throw InvalidParameters("region and polynomial sizes differ");
  const std::uint32_t p = f.ring().prime();
  if constexpr (Ring::char_zero) {
    detail::IntegerTruncation arith(f, J);
    return detail::DigitSearch<detail::IntegerTruncation>(arith, p, f.nvars(), J, budget).run(region);
  } else {
    detail::PolynomialTruncation arith(f, J);
    return detail::DigitSearch<detail::PolynomialTruncation>(arith, p, f.nvars(), J, budget).run(region);
  }
}

}  // namespace igusa
