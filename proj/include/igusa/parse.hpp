#pragma once

// Text form of polynomials:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := nat | 'u' ['^' nat] | var ['^' nat]
//   var    := 'x' | 'y' | 'z' | 'w' | 'x' nat
// 'u' is the uniformizer and is only accepted over F_p[[u]].

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "igusa/poly.hpp"

namespace igusa {

namespace detail {

template <CoefficientRing Ring>
class PolyParser {
 public:
  using C = typename Ring::element_type;

  PolyParser(std::string_view text, const Ring& ring) : s_(text), ring_(ring) {}

  MultiPoly<Ring> parse(std::optional<std::size_t> n_hint) {
    skip_ws();
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    parse_term(negate);
    for (;;) {
      skip_ws();
      if (pos_ == s_.size()) break;
      const char op = s_[pos_];
      if (op != '+' && op != '-') fail("expected '+', '-' or end of input");
      ++pos_;
      parse_term(op == '-');
    }

    std::size_t n = std::max<std::size_t>(max_index_ + 1, 1);
    if (!any_var_) n = 1;
    if (n_hint) {
      if (*n_hint < n && any_var_)
        throw SyntaxError(0, "polynomial uses " + std::to_string(n) +
                                 " variables but the hint allows " + std::to_string(*n_hint));
      n = std::max<std::size_t>(*n_hint, 1);
    }
    MultiPoly<Ring> f(ring_, n);
    for (auto& [vars, coeff] : terms_) {
      Exponent e(n, 0);
      for (const auto& [idx, pw] : vars) e[idx] += pw;
      f.add_term(e, coeff);
    }
    return f;
  }

 private:
  using RawTerm = std::pair<std::vector<std::pair<std::size_t, std::uint32_t>>, C>;

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::uint32_t parse_exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    const std::string digits = read_digits();
    if (digits.empty()) fail("expected a natural number after '^'");
    if (digits.size() > 6) throw SyntaxError(at, "exponent too large");
    return static_cast<std::uint32_t>(std::stoul(digits));
  }

  void parse_term(bool negate) {
    RawTerm term{{}, ring_.one()};
    parse_factor(term);
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      parse_factor(term);
    }
    if (negate) term.second = C(-term.second);
    terms_.push_back(std::move(term));
  }

  void parse_factor(RawTerm& term) {
    skip_ws();
    const std::size_t at = pos_;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const mpz_class v(read_digits());
      term.second = C(term.second * ring_.from_mpz(v));
      return;
    }
    if (c == 'u') {
      ++pos_;
      if constexpr (Ring::char_zero) {
        throw UniformizerInCharZero("'u' at position " + std::to_string(at) +
                                    " is only meaningful over F_p[[u]]");
      } else {
        const std::uint32_t k = parse_exponent();
        term.second = C(term.second * ring_.uniformizer_power(k));
        return;
      }
    }
    std::size_t idx = 0;
    if (c == 'x') {
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::string digits = read_digits();
        const unsigned long k = digits.size() > 4 ? 0 : std::stoul(digits);
        if (k == 0) throw SyntaxError(at, "variable index must be in 1..9999");
        idx = k - 1;
        set_style(Style::Indexed, at);
      } else {
        idx = 0;
        set_style(Style::Letters, at);
      }
    } else if (c == 'y' || c == 'z' || c == 'w') {
      ++pos_;
      idx = c == 'y' ? 1 : c == 'z' ? 2 : 3;
      set_style(Style::Letters, at);
    } else if (c == '\0') {
      fail("unexpected end of input");
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    const std::uint32_t k = parse_exponent();
    any_var_ = true;
    max_index_ = std::max(max_index_, idx);
    term.first.emplace_back(idx, k);
  }

  enum class Style { Unset, Letters, Indexed };

  void set_style(Style s, std::size_t at) {
    if (style_ != Style::Unset && style_ != s)
      throw SyntaxError(at, "cannot mix x,y,z,w with indexed variables x1,x2,...");
    style_ = s;
  }

  std::string_view s_;
  const Ring& ring_;
  std::size_t pos_ = 0;
  std::vector<RawTerm> terms_;
  std::size_t max_index_ = 0;
  bool any_var_ = false;
  Style style_ = Style::Unset;
};

inline std::string variable_name(std::size_t i, std::size_t n) {
  static constexpr const char* kLetters[] = {"x", "y", "z", "w"};
  if (n <= 4) return kLetters[i];
  return "x" + std::to_string(i + 1);
}

}  // namespace detail

/// Parses a polynomial. Variables are named x,y,z,w or x1..xk; the number of
/// variables is the highest index used, or n_hint when that is larger.
template <CoefficientRing Ring>
MultiPoly<Ring> parse_polynomial(std::string_view text, const Ring& ring,
                                 std::optional<std::size_t> n_hint = std::nullopt) {
  return detail::PolyParser<Ring>(text, ring).parse(n_hint);
}

/// Canonical text form, terms in descending graded-lex order. Over F_p[[u]]
/// each coefficient is expanded into its u-power terms so the output parses
/// back under the same grammar.
template <CoefficientRing Ring>
std::string render(const MultiPoly<Ring>& f) {
  if (f.is_zero()) return "0";
  const std::size_t n = f.nvars();
  auto monomial_text = [&](const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      if (!s.empty()) s += "*";
      s += detail::variable_name(i, n);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  };
  // (negative, magnitude text) pieces
  std::vector<std::pair<bool, std::string>> pieces;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const std::string mono = monomial_text(it->first);
    auto emit = [&](bool neg, const std::string& coeff_text, bool coeff_is_one) {
      std::string s;
      if (mono.empty()) s = coeff_text;
      else if (coeff_is_one) s = mono;
      else s = coeff_text + "*" + mono;
      pieces.emplace_back(neg, s);
    };
    if constexpr (Ring::char_zero) {
      const mpz_class& c = it->second;
      const mpz_class mag = abs(c);
      emit(sgn(c) < 0, mag.get_str(), mag == 1);
    } else {
      const auto& cs = it->second.coeffs();
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (!cs[k]) continue;
        std::string ct;
        if (cs[k] != 1 || k == 0) ct = std::to_string(cs[k]);
        if (k > 0) {
          if (!ct.empty()) ct += "*";
          ct += "u";
          if (k > 1) ct += "^" + std::to_string(k);
        }
        emit(false, ct, cs[k] == 1 && k == 0);
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& [neg, s] = pieces[i];
    if (i == 0) out += neg ? "-" + s : s;
    else out += (neg ? " - " : " + ") + s;
  }
  return out;
}

}  // namespace igusa
