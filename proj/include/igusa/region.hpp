#pragma once

// Integration domains inside O_K^n. A ResidueRegion is the preimage of a
// subset of F_p^n under reduction; polydiscs A_r and their complements are
// handled through signed valuation cells.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "igusa/coeff.hpp"
#include "igusa/poly.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

class ResidueRegion {
 public:
  /// allowed[i][a] says whether residue a is allowed in coordinate i.
  using Product = std::vector<std::vector<bool>>;
  using Explicit = std::set<FieldPoint>;

  static ResidueRegion full(std::uint32_t p, std::size_t n) {
    return product(p, Product(n, std::vector<bool>(p, true)));
  }

  static ResidueRegion empty(std::uint32_t p, std::size_t n) {
    return product(p, Product(n, std::vector<bool>(p, false)));
  }

  static ResidueRegion product(std::uint32_t p, Product allowed) {
    for (const auto& a : allowed)
      if (a.size() != p) throw InvalidParameters("product region: mask length must be p");
    ResidueRegion r(p, allowed.size());
    r.data_ = std::move(allowed);
    return r;
  }

  /// Units on the coordinates flagged in mask, everything elsewhere.
  static ResidueRegion units_on(std::uint32_t p, const std::vector<bool>& mask) {
    Product allowed(mask.size(), std::vector<bool>(p, true));
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) allowed[i][0] = false;
    return product(p, std::move(allowed));
  }

  static ResidueRegion explicit_set(std::uint32_t p, std::size_t n, Explicit points) {
    for (const auto& pt : points) {
      if (pt.size() != n) throw InvalidParameters("explicit region: point length mismatch");
      for (auto c : pt)
        if (c >= p) throw InvalidParameters("explicit region: coordinate not reduced mod p");
    }
    ResidueRegion r(p, n);
    r.data_ = std::move(points);
    return r;
  }

  std::uint32_t prime() const { return p_; }
  std::size_t nvars() const { return n_; }
  bool is_product() const { return std::holds_alternative<Product>(data_); }

  bool is_full() const {
    if (!is_product()) return count() == checked_power(p_, n_);
    for (const auto& a : std::get<Product>(data_))
      if (std::find(a.begin(), a.end(), false) != a.end()) return false;
    return true;
  }

  std::uint64_t count() const {
    if (auto* pts = std::get_if<Explicit>(&data_)) return pts->size();
    std::uint64_t c = 1;
    for (const auto& a : std::get<Product>(data_))
      c *= static_cast<std::uint64_t>(std::count(a.begin(), a.end(), true));
    return c;
  }

  bool is_empty() const { return count() == 0; }

  bool contains(std::span<const std::uint32_t> pt) const {
    if (pt.size() != n_) return false;
    if (auto* pts = std::get_if<Explicit>(&data_))
      return pts->count(FieldPoint(pt.begin(), pt.end())) != 0;
    const auto& allowed = std::get<Product>(data_);
    for (std::size_t i = 0; i < n_; ++i)
      if (pt[i] >= p_ || !allowed[i][pt[i]]) return false;
    return true;
  }

  /// Residues allowed in coordinate i (product regions only).
  std::vector<std::uint32_t> allowed_in(std::size_t i) const {
    const auto& allowed = std::get<Product>(data_);
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < p_; ++a)
      if (allowed[i][a]) out.push_back(a);
    return out;
  }

  /// Haar measure: |points| * p^{-n}.
  mpq_class measure() const {
    return mpq_class(mpz_class(static_cast<unsigned long>(count()))) *
           inverse_prime_power(p_, n_);
  }

  /// Visits every residue point of the region in lexicographic order.
  template <class Fn>
  void for_each_point(Fn&& fn, std::uint64_t cap = kDefaultEnumerationCap) const {
    if (count() > cap)
      throw BudgetExceeded("region has " + std::to_string(count()) +
                           " residue points, cap is " + std::to_string(cap));
    if (auto* pts = std::get_if<Explicit>(&data_)) {
      for (const auto& pt : *pts) fn(pt);
      return;
    }
    std::vector<std::vector<std::uint32_t>> choices(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      choices[i] = allowed_in(i);
      if (choices[i].empty()) return;
    }
    std::vector<std::size_t> idx(n_, 0);
    FieldPoint pt(n_);
    for (;;) {
      for (std::size_t i = 0; i < n_; ++i) pt[i] = choices[i][idx[i]];
      fn(std::as_const(pt));
      std::size_t i = n_;
      while (i-- > 0) {
        if (++idx[i] < choices[i].size()) break;
        idx[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) return;
    }
  }

  friend bool operator==(const ResidueRegion& a, const ResidueRegion& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  ResidueRegion(std::uint32_t p, std::size_t n) : p_(p), n_(n) {}

  std::uint32_t p_;
  std::size_t n_;
  std::variant<Product, Explicit> data_;
};

/// A_r = { x : v(x_i) >= r_i }.
struct Polydisc {
  std::vector<std::uint32_t> r;

  explicit Polydisc(std::vector<std::uint32_t> radii) : r(std::move(radii)) {
    for (auto ri : r)
      if (ri == 0) throw InvalidParameters("polydisc radii must be positive");
  }

  std::size_t nvars() const { return r.size(); }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto ri : r) s += ri;
    return s;
  }
};

/// D(B,a) = { x : v(x_i) = a_i for i in B }, other coordinates free.
struct ValuationCell {
  std::vector<bool> in_b;
  std::vector<std::uint32_t> a;  // a[i] meaningful only when in_b[i]

  std::size_t nvars() const { return in_b.size(); }
  std::size_t size_b() const { return static_cast<std::size_t>(std::count(in_b.begin(), in_b.end(), true)); }
  std::uint64_t d_shift() const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (in_b[i]) s += a[i];
    return s;
  }

  /// Exact Haar measure p^{-sum a} (1 - 1/p)^{|B|}.
  mpq_class measure(std::uint32_t p) const {
    mpq_class m = inverse_prime_power(p, d_shift());
    const mpq_class unit(static_cast<long>(p - 1), static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < size_b(); ++i) m *= unit;
    m.canonicalize();
    return m;
  }
};

struct SignedCell {
  int sign;
  ValuationCell cell;
};

/// Inclusion-exclusion over the sets {v(x_i) < r_i}: for every nonempty B
/// and every a with a_i < r_i on B, the cell D(B,a) with sign (-1)^{|B|-1}.
/// Intersections of product cells are product cells, so this list is final.
inline std::vector<SignedCell> complement_cells(const Polydisc& A) {
  const std::size_t n = A.nvars();
  if (n >= 32) throw InvalidParameters("too many variables for cell decomposition");
  std::vector<SignedCell> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    ValuationCell c{std::vector<bool>(n, false), std::vector<std::uint32_t>(n, 0)};
    std::vector<std::size_t> b;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        c.in_b[i] = true;
        b.push_back(i);
      }
    const int sign = b.size() % 2 == 1 ? 1 : -1;
    // odometer over a_i in [0, r_i) for i in B
    for (;;) {
      out.push_back({sign, c});
      std::size_t k = b.size();
      while (k-- > 0) {
        if (++c.a[b[k]] < A.r[b[k]]) break;
        c.a[b[k]] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

template <CoefficientRing Ring>
struct CellChange {
  std::uint64_t e;        // content of f(pi^a y) on the cell
  std::uint64_t d_shift;  // Jacobian exponent sum_{i in B} a_i
  MultiPoly<Ring> f_b;    // unit-content polynomial on the target
  ResidueRegion target;   // units on B, everything elsewhere
};

/// x_i = pi^{a_i} y_i on B. Contract:
///   int_{D(B,a)} |f|^s = p^{-d_shift} t^e int_{target} |f_B|^s.
template <CoefficientRing Ring>
CellChange<Ring> cell_change_of_variables(const MultiPoly<Ring>& f, const ValuationCell& cell) {
  if (cell.nvars() != f.nvars()) throw InvalidParameters("cell and polynomial sizes differ");
  if (cell.size_b() == 0) throw InvalidParameters("cell with empty B is the empty set");
  std::vector<std::uint32_t> scale(f.nvars(), 0);
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (cell.in_b[i]) scale[i] = cell.a[i];
  auto [e, fb] = normalize_content(substitute_scaling(f, scale));
  return {e, cell.d_shift(), std::move(fb),
          ResidueRegion::units_on(f.ring().prime(), cell.in_b)};
}

}  // namespace igusa
