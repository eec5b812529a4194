#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "igusa/coeff.hpp"
#include "igusa/errors.hpp"

namespace igusa {

using Exponent = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

inline std::uint64_t weighted_degree(std::span<const std::uint32_t> exponent,
                                     std::span<const std::uint32_t> weights) {
  if (exponent.size() != weights.size())
    throw InvalidParameters("weighted_degree: length mismatch");
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < exponent.size(); ++i) d += std::uint64_t(exponent[i]) * weights[i];
  return d;
}

/// Polynomial over F_p, the reduction of a MultiPoly modulo the uniformizer.
class ResiduePoly {
 public:
  using term_map = std::map<Exponent, std::uint32_t, GradedLexLess>;

  ResiduePoly(PrimeField field, std::size_t nvars) : field_(field), n_(nvars) {}

  const PrimeField& field() const { return field_; }
  std::size_t nvars() const { return n_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, std::uint32_t c) {
    if (e.size() != n_) throw InvalidParameters("exponent length mismatch");
    c %= field_.prime();
    if (!c) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (!it->second) terms_.erase(it);
    }
  }

  bool is_constant() const {
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
  }

  /// Nonzero homogeneous linear form (no constant term).
  bool is_linear_form() const {
    if (terms_.empty()) return false;
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return total_degree(t.first) == 1; });
  }

  ResiduePoly partial_derivative(std::size_t i) const {
    ResiduePoly d(field_, n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent de = e;
      --de[i];
      d.add_term(de, field_.mul(c, field_.from_integer(e[i])));
    }
    return d;
  }

  std::uint32_t evaluate(std::span<const std::uint32_t> pt) const {
    std::uint32_t acc = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t v = c;
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) v = field_.mul(v, field_.pow(pt[i], e[i]));
      acc = field_.add(acc, v);
    }
    return acc;
  }

  friend bool operator==(const ResiduePoly& a, const ResiduePoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  friend ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b) {
    ResiduePoly r(a.field_, a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, a.field_.mul(ca, cb));
      }
    return r;
  }

 private:
  PrimeField field_;
  std::size_t n_;
  term_map terms_;
};

/// Sparse multivariate polynomial with coefficients in O_K. Stored
/// coefficients are never zero and every exponent has length nvars().
template <CoefficientRing Ring>
class MultiPoly {
 public:
  using ring_type = Ring;
  using coeff_type = typename Ring::element_type;
  using term_map = std::map<Exponent, coeff_type, GradedLexLess>;

  MultiPoly(Ring ring, std::size_t nvars) : ring_(std::move(ring)), n_(nvars) {}

  static MultiPoly constant(const Ring& ring, std::size_t nvars, const coeff_type& c) {
    MultiPoly f(ring, nvars);
    f.add_term(Exponent(nvars, 0), c);
    return f;
  }
  static MultiPoly monomial(const Ring& ring, const Exponent& e, const coeff_type& c) {
    MultiPoly f(ring, e.size());
    f.add_term(e, c);
    return f;
  }
  static MultiPoly variable(const Ring& ring, std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(ring, e, ring.one());
  }

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return n_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  coeff_type coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(const Exponent& e, const coeff_type& c) {
    if (e.size() != n_) throw InvalidParameters("exponent length mismatch");
    if (ring_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = coeff_type(it->second + c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, igusa::total_degree(t.first));
    return d;
  }

  std::uint32_t degree_in(std::size_t i) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first[i]);
    return d;
  }

  bool has_constant_term() const { return terms_.count(Exponent(n_, 0)) != 0; }

  MultiPoly scaled(const coeff_type& c) const {
    MultiPoly r(ring_, n_);
    for (const auto& [e, a] : terms_) r.add_term(e, coeff_type(a * c));
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_compatible(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.ring_, a.n_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, coeff_type(-c));
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_compatible(a, b);
    MultiPoly r(a.ring_, a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, coeff_type(ca * cb));
      }
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  static void check_compatible(const MultiPoly& a, const MultiPoly& b) {
    if (a.n_ != b.n_ || !(a.ring_ == b.ring_))
      throw InvalidParameters("polynomials over different rings or variable counts");
  }

  Ring ring_;
  std::size_t n_;
  term_map terms_;
};

template <CoefficientRing Ring>
using Point = std::vector<typename Ring::element_type>;

/// Minimum valuation of the coefficients of f.
template <CoefficientRing Ring>
std::uint64_t content_valuation(const MultiPoly<Ring>& f) {
  if (f.is_zero()) throw ZeroPolynomial("content of the zero polynomial");
  ExtNat m = ExtNat::infinity();
  for (const auto& t : f.terms()) m = std::min(m, f.ring().valuation(t.second));
  return m.value();
}

template <CoefficientRing Ring>
MultiPoly<Ring> divide_by_uniformizer(const MultiPoly<Ring>& f, std::uint64_t k) {
  if (k == 0) return f;
  MultiPoly<Ring> r(f.ring(), f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, f.ring().divide_by_uniformizer(c, k));
  return r;
}

template <CoefficientRing Ring>
MultiPoly<Ring> multiply_by_uniformizer(const MultiPoly<Ring>& f, std::uint64_t k) {
  if (k == 0) return f;
  MultiPoly<Ring> r(f.ring(), f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, f.ring().multiply_by_uniformizer(c, k));
  return r;
}

/// Divides out the content; returns (content valuation, unit-content part).
template <CoefficientRing Ring>
std::pair<std::uint64_t, MultiPoly<Ring>> normalize_content(const MultiPoly<Ring>& f) {
  const std::uint64_t e = content_valuation(f);
  return {e, divide_by_uniformizer(f, e)};
}

template <CoefficientRing Ring>
ResiduePoly reduce_mod_pi(const MultiPoly<Ring>& f) {
  if (!f.is_zero() && content_valuation(f) > 0)
    throw NonUnitContent("reduction requires a coefficient of valuation 0");
  if (f.is_zero()) throw ZeroPolynomial("reduction of the zero polynomial");
  ResiduePoly r(f.ring().residue_field(), f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, f.ring().reduce(c));
  return r;
}

/// Formal derivative with respect to variable i (0-based).
template <CoefficientRing Ring>
MultiPoly<Ring> partial_derivative(const MultiPoly<Ring>& f, std::size_t i) {
  if (i >= f.nvars()) throw InvalidParameters("variable index out of range");
  MultiPoly<Ring> d(f.ring(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent de = e;
    --de[i];
    d.add_term(de, typename Ring::element_type(f.ring().from_integer(e[i]) * c));
  }
  return d;
}

template <CoefficientRing Ring>
typename Ring::element_type evaluate(const MultiPoly<Ring>& f,
                                     std::span<const typename Ring::element_type> pt) {
  using C = typename Ring::element_type;
  if (pt.size() != f.nvars()) throw InvalidParameters("evaluate: point length mismatch");
  const Ring& R = f.ring();
  std::vector<std::vector<C>> powers(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    powers[i].push_back(R.one());
    for (std::uint32_t k = 1; k <= f.degree_in(i); ++k)
      powers[i].push_back(C(powers[i].back() * pt[i]));
  }
  C acc = R.zero();
  for (const auto& [e, c] : f.terms()) {
    C v = c;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (e[i]) v = C(v * powers[i][e[i]]);
    acc = C(acc + v);
  }
  return acc;
}

/// f(center_1 + u^{m_1} x_1, ..., center_n + u^{m_n} x_n), expanded exactly.
template <CoefficientRing Ring>
MultiPoly<Ring> substitute_affine(const MultiPoly<Ring>& f,
                                  std::span<const typename Ring::element_type> center,
                                  std::span<const std::uint32_t> scale) {
  using C = typename Ring::element_type;
  const std::size_t n = f.nvars();
  if (center.size() != n || scale.size() != n)
    throw InvalidParameters("substitute_affine: center/scale length mismatch");
  const Ring& R = f.ring();

  // expansions[i][k][j] = coefficient of x_i^j in (center_i + u^{m_i} x_i)^k
  std::vector<std::vector<std::vector<C>>> expansions(n);
  for (std::size_t i = 0; i < n; ++i) {
    const C lin = R.uniformizer_power(scale[i]);
    auto& ex = expansions[i];
    ex.push_back({R.one()});
    for (std::uint32_t k = 1; k <= f.degree_in(i); ++k) {
      const auto& prev = ex.back();
      std::vector<C> next(prev.size() + 1, R.zero());
      for (std::size_t j = 0; j < prev.size(); ++j) {
        next[j] = C(next[j] + prev[j] * center[i]);
        next[j + 1] = C(next[j + 1] + prev[j] * lin);
      }
      ex.push_back(std::move(next));
    }
  }

  MultiPoly<Ring> out(R, n);
  for (const auto& [e, c] : f.terms()) {
    // Expand the product over variables one at a time.
    std::vector<std::pair<Exponent, C>> partial{{Exponent(n, 0), c}};
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      const auto& uni = expansions[i][e[i]];
      std::vector<std::pair<Exponent, C>> next;
      next.reserve(partial.size() * uni.size());
      for (const auto& [pe, pc] : partial)
        for (std::size_t j = 0; j < uni.size(); ++j) {
          if (R.is_zero(uni[j])) continue;
          Exponent ne = pe;
          ne[i] = static_cast<std::uint32_t>(j);
          next.emplace_back(std::move(ne), C(pc * uni[j]));
        }
      partial = std::move(next);
    }
    for (const auto& [pe, pc] : partial) out.add_term(pe, pc);
  }
  return out;
}

/// Substitutes x_i -> u^{scale_i} x_i (center zero).
template <CoefficientRing Ring>
MultiPoly<Ring> substitute_scaling(const MultiPoly<Ring>& f, std::span<const std::uint32_t> scale) {
  if (scale.size() != f.nvars()) throw InvalidParameters("substitute_scaling: length mismatch");
  MultiPoly<Ring> out(f.ring(), f.nvars());
  for (const auto& [e, c] : f.terms())
    out.add_term(e, f.ring().multiply_by_uniformizer(c, weighted_degree(e, scale)));
  return out;
}

}  // namespace igusa
