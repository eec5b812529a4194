#pragma once

// Coefficient rings O_K for the two supported local fields:
//   ZpRing  - integers Z inside Z_p (K = Q_p, uniformizer p)
//   FpPiRing - polynomials F_p[u] inside F_p[[u]] (K = F_p((u)), uniformizer u)
// Both residue fields are the prime field F_p.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "igusa/errors.hpp"

namespace igusa {

/// Natural number or infinity. Used for valuations (v(0) = infinity).
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : v_(v) {}  // NOLINT: implicit by intent

  static constexpr ExtNat infinity() { return ExtNat(kInf); }

  constexpr bool is_infinite() const { return v_ == kInf; }
  constexpr bool is_finite() const { return v_ != kInf; }

  std::uint64_t value() const {
    if (is_infinite()) throw InvariantViolation("value() of infinite ExtNat");
    return v_;
  }

  constexpr auto operator<=>(const ExtNat&) const = default;

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtNat(a.v_ + b.v_);
  }

  std::string to_string() const {
    return is_infinite() ? std::string("inf") : std::to_string(v_);
  }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v_ = kInf;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The residue field F_p. Elements are representatives in [0, p).
class PrimeField {
 public:
  using element_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p > (1u << 16))
      throw InvalidParameters("residue characteristic must be a prime below 65536, got " +
                              std::to_string(p));
  }

  std::uint32_t prime() const { return p_; }

  element_type add(element_type a, element_type b) const { return (a + b) % p_; }
  element_type sub(element_type a, element_type b) const { return (a + p_ - b) % p_; }
  element_type neg(element_type a) const { return (p_ - a) % p_; }
  element_type mul(element_type a, element_type b) const {
    return static_cast<element_type>(std::uint64_t(a) * b % p_);
  }
  element_type pow(element_type a, std::uint64_t k) const {
    element_type r = 1 % p_;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  element_type from_integer(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<element_type>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Characteristic zero: Z with the p-adic valuation.

class ZpRing {
 public:
  using element_type = mpz_class;
  static constexpr bool char_zero = true;

  explicit ZpRing(std::uint32_t p) : field_(p), p_(p) {}

  std::uint32_t prime() const { return p_; }
  std::uint32_t characteristic() const { return 0; }
  const PrimeField& residue_field() const { return field_; }
  std::string name() const { return "Z_" + std::to_string(p_); }

  element_type zero() const { return 0; }
  element_type one() const { return 1; }
  element_type from_integer(long long v) const { return mpz_class(static_cast<long>(v)); }
  element_type from_mpz(const mpz_class& v) const { return v; }

  element_type uniformizer_power(std::uint64_t k) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, k);
    return r;
  }

  bool is_zero(const element_type& x) const { return sgn(x) == 0; }

  ExtNat valuation(const element_type& x) const {
    if (is_zero(x)) return ExtNat::infinity();
    mpz_class rest;
    mpz_class prime(p_);
    return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
  }

  std::uint32_t reduce(const element_type& x) const {
    return static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p_));
  }

  element_type lift(std::uint32_t a) const { return mpz_class(a % p_); }

  element_type divide_by_uniformizer(const element_type& x, std::uint64_t k) const {
    if (k == 0 || is_zero(x)) return x;
    if (valuation(x) < ExtNat(k))
      throw InsufficientValuation("v(" + x.get_str() + ") < " + std::to_string(k));
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), x.get_mpz_t(), uniformizer_power(k).get_mpz_t());
    return r;
  }

  element_type multiply_by_uniformizer(const element_type& x, std::uint64_t k) const {
    if (k == 0) return x;
    return element_type(x * uniformizer_power(k));
  }

  std::string to_string(const element_type& x) const { return x.get_str(); }

  friend bool operator==(const ZpRing& a, const ZpRing& b) { return a.p_ == b.p_; }

 private:
  PrimeField field_;
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Characteristic p: polynomials in the uniformizer u over F_p.

class PiPoly {
 public:
  PiPoly() = default;
  explicit PiPoly(std::uint32_t p) : p_(p) {}
  PiPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
  }

  static PiPoly constant(std::uint32_t p, std::uint32_t a) { return PiPoly(p, {a}); }
  static PiPoly monomial(std::uint32_t p, std::uint32_t a, std::uint64_t k) {
    std::vector<std::uint32_t> c(k + 1, 0);
    c[k] = a;
    return PiPoly(p, std::move(c));
  }

  std::uint32_t prime() const { return p_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  ExtNat order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return i;
    return ExtNat::infinity();
  }

  friend PiPoly operator+(const PiPoly& a, const PiPoly& b) {
    const std::uint32_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + b.coeff(i)) % p;
    return PiPoly(p, std::move(c));
  }
  friend PiPoly operator-(const PiPoly& a) {
    std::vector<std::uint32_t> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.p_ - a.c_[i]) % a.p_;
    return PiPoly(a.p_, std::move(c));
  }
  friend PiPoly operator-(const PiPoly& a, const PiPoly& b) { return a + (-b); }
  friend PiPoly operator*(const PiPoly& a, const PiPoly& b) {
    const std::uint32_t p = a.p_ ? a.p_ : b.p_;
    if (a.is_zero() || b.is_zero()) return PiPoly(p);
    std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        acc[i + j] = (acc[i + j] + std::uint64_t(a.c_[i]) * b.c_[j]) % p;
    }
    std::vector<std::uint32_t> c(acc.begin(), acc.end());
    return PiPoly(p, std::move(c));
  }
  PiPoly& operator+=(const PiPoly& o) { return *this = *this + o; }
  PiPoly& operator*=(const PiPoly& o) { return *this = *this * o; }

  friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.c_ == b.c_; }
  friend auto operator<=>(const PiPoly& a, const PiPoly& b) { return a.c_ <=> b.c_; }

  /// Shift by u^k in either direction; shifting down requires order >= k.
  PiPoly shifted_up(std::uint64_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<std::uint32_t> c(k, 0);
    c.insert(c.end(), c_.begin(), c_.end());
    return PiPoly(p_, std::move(c));
  }
  PiPoly shifted_down(std::uint64_t k) const {
    if (is_zero() || k == 0) return *this;
    return PiPoly(p_, std::vector<std::uint32_t>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(c_[i]);
        continue;
      }
      if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
      s += "u";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> c_;  // low to high
};

class FpPiRing {
 public:
  using element_type = PiPoly;
  static constexpr bool char_zero = false;

  explicit FpPiRing(std::uint32_t p) : field_(p), p_(p) {}

  std::uint32_t prime() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  const PrimeField& residue_field() const { return field_; }
  std::string name() const { return "F_" + std::to_string(p_) + "[[u]]"; }

  element_type zero() const { return PiPoly(p_); }
  element_type one() const { return PiPoly::constant(p_, 1); }
  element_type from_integer(long long v) const {
    return PiPoly::constant(p_, field_.from_integer(v));
  }
  element_type from_mpz(const mpz_class& v) const {
    return PiPoly::constant(p_, static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p_)));
  }

  element_type uniformizer_power(std::uint64_t k) const { return PiPoly::monomial(p_, 1, k); }

  bool is_zero(const element_type& x) const { return x.is_zero(); }
  ExtNat valuation(const element_type& x) const { return x.order(); }
  std::uint32_t reduce(const element_type& x) const { return x.coeff(0); }
  element_type lift(std::uint32_t a) const { return PiPoly::constant(p_, a % p_); }

  element_type divide_by_uniformizer(const element_type& x, std::uint64_t k) const {
    if (k == 0 || x.is_zero()) return x;
    if (x.order() < ExtNat(k))
      throw InsufficientValuation("v(" + x.to_string() + ") < " + std::to_string(k));
    return x.shifted_down(k);
  }

  element_type multiply_by_uniformizer(const element_type& x, std::uint64_t k) const {
    return x.shifted_up(k);
  }

  std::string to_string(const element_type& x) const { return x.to_string(); }

  friend bool operator==(const FpPiRing& a, const FpPiRing& b) { return a.p_ == b.p_; }

 private:
  PrimeField field_;
  std::uint32_t p_;
};

template <class R>
concept CoefficientRing = requires(const R r, const typename R::element_type x, std::uint32_t a,
                                   std::uint64_t k) {
  typename R::element_type;
  { R::char_zero } -> std::convertible_to<bool>;
  { r.prime() } -> std::convertible_to<std::uint32_t>;
  { r.residue_field() } -> std::convertible_to<const PrimeField&>;
  { r.zero() } -> std::same_as<typename R::element_type>;
  { r.one() } -> std::same_as<typename R::element_type>;
  { r.from_integer(0LL) } -> std::same_as<typename R::element_type>;
  { r.uniformizer_power(k) } -> std::same_as<typename R::element_type>;
  { r.is_zero(x) } -> std::convertible_to<bool>;
  { r.valuation(x) } -> std::same_as<ExtNat>;
  { r.reduce(x) } -> std::convertible_to<std::uint32_t>;
  { r.lift(a) } -> std::same_as<typename R::element_type>;
  { r.divide_by_uniformizer(x, k) } -> std::same_as<typename R::element_type>;
  { r.multiply_by_uniformizer(x, k) } -> std::same_as<typename R::element_type>;
  { x + x } -> std::convertible_to<typename R::element_type>;
  { x * x } -> std::convertible_to<typename R::element_type>;
  { x - x } -> std::convertible_to<typename R::element_type>;
};

/// Fixed set of representatives of F_p inside O_K: a -> lift(a) + shift*u.
/// shift = 0 is the canonical lifting; other shifts exist to test that results
/// do not depend on the choice of representatives.
template <CoefficientRing Ring>
class Lifting {
 public:
  using element_type = typename Ring::element_type;

  explicit Lifting(const Ring& ring, std::uint32_t shift = 0) {
    const element_type offset = ring.multiply_by_uniformizer(ring.from_integer(shift), 1);
    table_.reserve(ring.prime());
    for (std::uint32_t a = 0; a < ring.prime(); ++a) {
      element_type v = ring.lift(a) + offset;
      if (ring.reduce(v) != a) throw InvariantViolation("lifting does not reduce to its residue");
      table_.push_back(std::move(v));
    }
  }

  const element_type& operator()(std::uint32_t a) const { return table_.at(a); }
  std::size_t size() const { return table_.size(); }

 private:
  std::vector<element_type> table_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// p^n, or nullopt-like max() if it overflows.
inline std::uint64_t checked_power(std::uint64_t p, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p)
      return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

using FieldPoint = std::vector<std::uint32_t>;

/// Calls fn on every point of F_p^n in lexicographic order.
template <class Fn>
void for_each_point(const PrimeField& field, std::size_t n, Fn&& fn,
                    std::uint64_t cap = kDefaultEnumerationCap) {
  const std::uint64_t total = checked_power(field.prime(), n);
  if (total > cap)
    throw BudgetExceeded(std::to_string(field.prime()) + "^" + std::to_string(n) +
                         " points exceed the enumeration cap " + std::to_string(cap));
  FieldPoint pt(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    fn(std::as_const(pt));
    for (std::size_t i = n; i-- > 0;) {
      if (++pt[i] < field.prime()) break;
      pt[i] = 0;
    }
  }
}

inline std::vector<FieldPoint> enumerate_points(const PrimeField& field, std::size_t n,
                                                std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<FieldPoint> out;
  for_each_point(field, n, [&](const FieldPoint& pt) { out.push_back(pt); }, cap);
  return out;
}

}  // namespace igusa
