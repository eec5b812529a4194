#pragma once

// Rational functions in t = q^{-s} with q = p substituted. The denominator is
// kept as a multiset of factors (1 - p^{-a} t^b), which is the shape every
// zeta function produced by the engine has.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "igusa/errors.hpp"

namespace igusa {

/// Dense polynomials in t with rational coefficients, low degree first.
namespace qpoly {

using Poly = std::vector<mpq_class>;

inline void trim(Poly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

/// c * t^e * a
inline Poly shift_scale(const Poly& a, const mpq_class& c, std::size_t e) {
  if (a.empty() || sgn(c) == 0) return {};
  Poly r(a.size() + e);
  for (std::size_t i = 0; i < a.size(); ++i) r[i + e] = a[i] * c;
  trim(r);
  return r;
}

/// 1 - c t^b
inline Poly binomial(const mpq_class& c, std::size_t b) {
  Poly r(b + 1);
  r[0] = 1;
  r[b] -= c;
  trim(r);
  return r;
}

/// Exact quotient a / (1 - c t^b), or nullopt when it leaves a remainder.
inline std::optional<Poly> divide_binomial(const Poly& a, const mpq_class& c, std::size_t b) {
  if (a.empty()) return Poly{};
  if (a.size() <= b) return std::nullopt;
  const std::size_t qlen = a.size() - b;
  Poly q(qlen);
  for (std::size_t k = 0; k < qlen; ++k) {
    q[k] = a[k];
    if (k >= b) q[k] += c * q[k - b];
  }
  // Remaining coefficients must match -c*q[k-b].
  for (std::size_t k = qlen; k < a.size(); ++k) {
    mpq_class expect = 0;
    if (k >= b && k - b < qlen) expect = -c * q[k - b];
    if (a[k] != expect) return std::nullopt;
  }
  trim(q);
  return q;
}

/// Polynomial long division; returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw InvalidParameters("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1);
  const mpq_class& lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpq_class coef = a[k + b.size() - 1] / lead;
    q[k] = coef;
    if (sgn(coef) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= coef * b[j];
  }
  trim(q);
  trim(a);
  return {q, a};
}

inline mpq_class evaluate(const Poly& a, const mpq_class& t) {
  mpq_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + a[i];
  return acc;
}

}  // namespace qpoly

/// The factor (1 - p^{-a} t^b).
struct DenomFactor {
  std::uint32_t a = 1;
  std::uint32_t b = 1;

  friend auto operator<=>(const DenomFactor&, const DenomFactor&) = default;
};

/// p^{-k} as an exact rational.
inline mpq_class inverse_prime_power(std::uint32_t p, std::uint64_t k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), p, k);
  return mpq_class(mpz_class(1), den);
}

class RatFun {
 public:
  explicit RatFun(std::uint32_t p) : p_(p) {}

  RatFun(std::uint32_t p, qpoly::Poly numerator, std::vector<DenomFactor> denominator)
      : p_(p), num_(std::move(numerator)), den_(std::move(denominator)) {
    for (const auto& f : den_)
      if (f.a == 0 || f.b == 0)
        throw InvalidParameters("denominator factor needs a >= 1 and b >= 1");
    canonicalize();
  }

  static RatFun constant(std::uint32_t p, const mpq_class& c) { return RatFun(p, {c}, {}); }

  /// c * t^e
  static RatFun monomial(std::uint32_t p, const mpq_class& c, std::size_t e) {
    return RatFun(p, qpoly::shift_scale({mpq_class(1)}, c, e), {});
  }

  /// 1 / (1 - p^{-a} t^b)
  static RatFun geometric(std::uint32_t p, std::uint32_t a, std::uint32_t b) {
    return RatFun(p, {mpq_class(1)}, {{a, b}});
  }

  std::uint32_t prime() const { return p_; }
  const qpoly::Poly& numerator() const { return num_; }
  const std::vector<DenomFactor>& denominator() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  bool is_polynomial() const { return den_.empty(); }

  mpq_class factor_coefficient(const DenomFactor& f) const { return inverse_prime_power(p_, f.a); }

  qpoly::Poly denominator_polynomial() const {
    qpoly::Poly d{mpq_class(1)};
    for (const auto& f : den_) d = qpoly::mul(d, qpoly::binomial(factor_coefficient(f), f.b));
    return d;
  }

  friend RatFun operator+(const RatFun& x, const RatFun& y) {
    check_prime(x, y);
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    // Common denominator: multiset union with maximal multiplicity.
    std::vector<DenomFactor> common;
    std::set_union(x.den_.begin(), x.den_.end(), y.den_.begin(), y.den_.end(),
                   std::back_inserter(common));
    qpoly::Poly nx = x.num_, ny = y.num_;
    auto fill = [&](const std::vector<DenomFactor>& have, qpoly::Poly& n) {
      std::vector<DenomFactor> missing;
      std::set_difference(common.begin(), common.end(), have.begin(), have.end(),
                          std::back_inserter(missing));
      for (const auto& f : missing) n = qpoly::mul(n, qpoly::binomial(x.factor_coefficient(f), f.b));
    };
    fill(x.den_, nx);
    fill(y.den_, ny);
    return RatFun(x.p_, qpoly::add(nx, ny), std::move(common));
  }

  friend RatFun operator-(const RatFun& x) {
    qpoly::Poly n = x.num_;
    for (auto& c : n) c = -c;
    RatFun r(x.p_);
    r.num_ = std::move(n);
    r.den_ = x.den_;
    return r;
  }

  friend RatFun operator-(const RatFun& x, const RatFun& y) { return x + (-y); }

  friend RatFun operator*(const RatFun& x, const RatFun& y) {
    check_prime(x, y);
    std::vector<DenomFactor> den = x.den_;
    den.insert(den.end(), y.den_.begin(), y.den_.end());
    return RatFun(x.p_, qpoly::mul(x.num_, y.num_), std::move(den));
  }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }

  /// c * t^e * r
  RatFun scaled(const mpq_class& c, std::size_t e = 0) const {
    return RatFun(p_, qpoly::shift_scale(num_, c, e), den_);
  }

  /// r / (1 - p^{-a} t^b)
  RatFun geometric_close(std::uint32_t a, std::uint32_t b) const {
    std::vector<DenomFactor> den = den_;
    den.push_back({a, b});
    return RatFun(p_, num_, std::move(den));
  }

  /// Taylor coefficients c_0..c_J at t = 0.
  std::vector<mpq_class> series(std::size_t J) const {
    std::vector<mpq_class> c(J + 1);
    for (std::size_t i = 0; i < num_.size() && i <= J; ++i) c[i] = num_[i];
    for (const auto& f : den_) {
      const mpq_class q = factor_coefficient(f);
      for (std::size_t j = f.b; j <= J; ++j) c[j] += q * c[j - f.b];
    }
    return c;
  }

  /// Real parts -a/b of the poles in s, ascending and without repeats.
  std::vector<mpq_class> pole_real_parts() const {
    std::vector<mpq_class> out;
    for (const auto& f : den_) {
      mpq_class v(-static_cast<long>(f.a), static_cast<unsigned long>(f.b));
      v.canonicalize();
      out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// True iff the function can be written with denominator prod(bound).
  bool denominator_divides(const std::vector<DenomFactor>& bound) const {
    qpoly::Poly b{mpq_class(1)};
    for (const auto& f : bound) b = qpoly::mul(b, qpoly::binomial(factor_coefficient(f), f.b));
    return qpoly::divmod(qpoly::mul(num_, b), denominator_polynomial()).second.empty();
  }

  /// Value at a rational t (the denominator must not vanish there).
  mpq_class evaluate(const mpq_class& t) const {
    const mpq_class d = qpoly::evaluate(denominator_polynomial(), t);
    if (sgn(d) == 0) throw InvalidParameters("evaluation at a pole");
    return qpoly::evaluate(num_, t) / d;
  }

  friend bool operator==(const RatFun& x, const RatFun& y) {
    if (x.p_ != y.p_) return false;
    if (x.den_ == y.den_) return x.num_ == y.num_;
    return qpoly::mul(x.num_, y.denominator_polynomial()) ==
           qpoly::mul(y.num_, x.denominator_polynomial());
  }

  std::string to_string() const;
  std::string to_latex() const;

 private:
  static void check_prime(const RatFun& x, const RatFun& y) {
    if (x.p_ != y.p_) throw InvalidParameters("rational functions for different primes");
  }

  void canonicalize() {
    qpoly::trim(num_);
    std::sort(den_.begin(), den_.end());
    if (num_.empty()) {
      den_.clear();
      return;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < den_.size(); ++i) {
        if (i > 0 && den_[i] == den_[i - 1]) continue;
        if (auto q = qpoly::divide_binomial(num_, factor_coefficient(den_[i]), den_[i].b)) {
          num_ = std::move(*q);
          den_.erase(den_.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }

  std::uint32_t p_;
  qpoly::Poly num_;
  std::vector<DenomFactor> den_;  // sorted
};

namespace detail {

inline std::string t_power(std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return "t";
  return "t^" + std::to_string(k);
}

inline std::string render_qpoly(const qpoly::Poly& a) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (sgn(a[k]) == 0) continue;
    const mpq_class mag = abs(a[k]);
    std::string term;
    if (k == 0) term = mag.get_str();
    else if (mag == 1) term = t_power(k);
    else term = mag.get_str() + "*" + t_power(k);
    if (s.empty()) s = sgn(a[k]) < 0 ? "-" + term : term;
    else s += (sgn(a[k]) < 0 ? " - " : " + ") + term;
  }
  return s;
}

}  // namespace detail

inline std::string RatFun::to_string() const {
  const std::string n = detail::render_qpoly(num_);
  if (den_.empty()) return n;
  std::string d;
  for (std::size_t i = 0; i < den_.size();) {
    std::size_t j = i;
    while (j < den_.size() && den_[j] == den_[i]) ++j;
    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), p_, den_[i].a);
    d += "(1 - " + detail::t_power(den_[i].b) + "/" + pa.get_str() + ")";
    if (j - i > 1) d += "^" + std::to_string(j - i);
    i = j;
  }
  return "(" + n + ")/" + (den_.size() > 1 ? "(" + d + ")" : d);
}

inline std::string RatFun::to_latex() const {
  auto coeff = [](const mpq_class& c) {
    if (c.get_den() == 1) return c.get_num().get_str();
    return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
  };
  std::string n;
  for (std::size_t k = 0; k < num_.size(); ++k) {
    if (sgn(num_[k]) == 0) continue;
    const mpq_class mag = abs(num_[k]);
    std::string term;
    if (k == 0) term = coeff(mag);
    else term = (mag == 1 ? std::string() : coeff(mag)) + detail::t_power(k);
    if (n.empty()) n = sgn(num_[k]) < 0 ? "-" + term : term;
    else n += (sgn(num_[k]) < 0 ? " - " : " + ") + term;
  }
  if (n.empty()) n = "0";
  if (den_.empty()) return n;
  std::string d;
  for (std::size_t i = 0; i < den_.size();) {
    std::size_t j = i;
    while (j < den_.size() && den_[j] == den_[i]) ++j;
    d += "(1 - " + std::to_string(p_) + "^{-" + std::to_string(den_[i].a) + "}" +
         detail::t_power(den_[i].b) + ")";
    if (j - i > 1) d += "^{" + std::to_string(j - i) + "}";
    i = j;
  }
  return "\\frac{" + n + "}{" + d + "}";
}

}  // namespace igusa
