#include <random>

#include <gtest/gtest.h>

#include "igusa/json_io.hpp"
#include "igusa/ratfun.hpp"

using namespace igusa;

namespace {

mpq_class Q(long n, unsigned long d = 1) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

RatFun random_ratfun(std::mt19937_64& rng, std::uint32_t p) {
  std::uniform_int_distribution<int> len(0, 4), coef(-9, 9), fa(1, 3), fb(1, 3), nf(0, 2);
  qpoly::Poly num(len(rng));
  for (auto& c : num) c = Q(coef(rng), 1 + static_cast<unsigned long>(std::abs(coef(rng))));
  std::vector<DenomFactor> den(nf(rng));
  for (auto& f : den) f = {static_cast<std::uint32_t>(fa(rng)), static_cast<std::uint32_t>(fb(rng))};
  return RatFun(p, num, den);
}

}  // namespace

TEST(RatFun, GeometricIdentity) {
  const RatFun one = RatFun::constant(5, 1);
  const RatFun tail(5, {0, Q(1, 5)}, {{1, 1}});
  const RatFun sum = one + tail;
  EXPECT_EQ(sum.numerator(), (qpoly::Poly{1}));
  EXPECT_EQ(sum.denominator(), (std::vector<DenomFactor>{{1, 1}}));
  EXPECT_EQ(sum.to_string(), "(1)/(1 - t/5)");
}

TEST(RatFun, ScaleAndZero) {
  const RatFun r = RatFun::constant(5, 1).scaled(Q(1, 25), 3);
  EXPECT_EQ(r.numerator(), (qpoly::Poly{0, 0, 0, Q(1, 25)}));
  const RatFun x(5, {1, 2}, {{1, 1}});
  EXPECT_EQ(x + RatFun(5), x);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_TRUE((x - x).denominator().empty());
}

TEST(RatFun, GeometricClose) {
  const RatFun g = RatFun::constant(5, 1).geometric_close(5, 6);
  EXPECT_EQ(g.denominator(), (std::vector<DenomFactor>{{5, 6}}));
  qpoly::Poly factor(7);
  factor[0] = 1;
  factor[6] = -Q(1, 3125);
  const RatFun cancels = RatFun(5, factor, {}).geometric_close(5, 6);
  EXPECT_EQ(cancels, RatFun::constant(5, 1));
  EXPECT_TRUE(cancels.is_polynomial());
  EXPECT_TRUE(RatFun(5).geometric_close(5, 6).is_zero());
}

TEST(RatFun, Series) {
  EXPECT_EQ(RatFun::geometric(5, 1, 1).series(3), (std::vector<mpq_class>{1, Q(1, 5), Q(1, 25), Q(1, 125)}));
  EXPECT_EQ(RatFun::monomial(5, 1, 2).series(3), (std::vector<mpq_class>{0, 0, 1, 0}));
  const RatFun r(5, {Q(4, 5)}, {{1, 1}});
  EXPECT_EQ(r.series(2), (std::vector<mpq_class>{Q(4, 5), Q(4, 25), Q(4, 125)}));
}

TEST(RatFun, PoleRealParts) {
  const RatFun r(5, {1}, {{1, 1}, {5, 6}});
  EXPECT_EQ(r.pole_real_parts(), (std::vector<mpq_class>{Q(-1), Q(-5, 6)}));
  EXPECT_TRUE(RatFun::monomial(5, 3, 4).pole_real_parts().empty());
  EXPECT_EQ(RatFun(7, {1}, {{3, 2}}).pole_real_parts(), (std::vector<mpq_class>{Q(-3, 2)}));
}

TEST(RatFun, CanonicalCancellation) {
  // (1 - t^2/25) / ((1 - t/5)(1 - p^-2 t^2)) = 1/(1 - t/5)
  const RatFun r(5, {1, 0, Q(-1, 25)}, {{1, 1}, {2, 2}});
  EXPECT_EQ(r.denominator().size(), 1u);
  EXPECT_EQ(r, RatFun::geometric(5, 1, 1));
  // (1 + t/5)/(1 - t^2/25) equals 1/(1 - t/5) although no listed factor divides.
  const RatFun s(5, {1, Q(1, 5)}, {{2, 2}});
  EXPECT_EQ(s.denominator().size(), 1u);
  EXPECT_EQ(s, RatFun::geometric(5, 1, 1));
}

TEST(RatFun, DenominatorDivides) {
  const RatFun r(5, {1, Q(1, 5)}, {{2, 2}});
  EXPECT_TRUE(r.denominator_divides({{1, 1}}));
  EXPECT_FALSE(RatFun::geometric(5, 1, 2).denominator_divides({{1, 1}}));
  EXPECT_TRUE(RatFun::geometric(5, 1, 1).denominator_divides({{1, 1}, {5, 6}}));
}

TEST(RatFun, SeriesIsAdditiveAndStable) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const RatFun a = random_ratfun(rng, 3), b = random_ratfun(rng, 3);
    const auto sa = a.series(20), sb = b.series(20), ss = (a + b).series(20);
    for (std::size_t j = 0; j <= 20; ++j) EXPECT_EQ(ss[j], sa[j] + sb[j]);
    const auto prod = (a * b).series(20);
    for (std::size_t j = 0; j <= 20; ++j) {
      mpq_class c = 0;
      for (std::size_t k = 0; k <= j; ++k) c += sa[k] * sb[j - k];
      EXPECT_EQ(prod[j], c);
    }
    // Re-canonicalizing an already canonical value changes nothing.
    const RatFun again(a.prime(), a.numerator(), a.denominator());
    EXPECT_EQ(again.numerator(), a.numerator());
    EXPECT_EQ(again.series(20), sa);
  }
}

TEST(RatFun, CrossMultipliedEquality) {
  const RatFun a(7, {2}, {{1, 1}});
  const RatFun b = a.geometric_close(2, 3).scaled(1) * RatFun(7, {1, 0, 0, Q(-1, 49)}, {});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, a.scaled(Q(1, 2)));
  EXPECT_NE(RatFun::constant(5, 1), RatFun::constant(7, 1));
}

TEST(RatFun, Evaluate) {
  EXPECT_EQ(RatFun(5, {Q(4, 5)}, {{1, 1}}).evaluate(1), 1);
  EXPECT_THROW(RatFun::geometric(5, 1, 1).evaluate(5), InvalidParameters);
}

TEST(RatFun, JsonRoundTrip) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const RatFun r = random_ratfun(rng, 5);
    const json j = json::parse(ratfun_to_json(r).dump());
    EXPECT_EQ(ratfun_from_json(j, 5), r);
    EXPECT_EQ(ratfun_to_json(ratfun_from_json(j, 5)), ratfun_to_json(r));
  }
  // Large coefficients travel as strings.
  const RatFun big = RatFun::constant(5, 1).scaled(inverse_prime_power(5, 40));
  const json j = ratfun_to_json(big);
  EXPECT_TRUE(j["num"][0][1].is_string());
  EXPECT_EQ(ratfun_from_json(j, 5), big);
}

TEST(RatFun, Rendering) {
  const RatFun r(5, {Q(4, 5)}, {{1, 1}, {5, 6}});
  EXPECT_EQ(r.to_string(), "(4/5)/((1 - t/5)(1 - t^6/3125))");
  EXPECT_EQ(r.to_latex(), "\\frac{\\frac{4}{5}}{(1 - 5^{-1}t)(1 - 5^{-5}t^6)}");
  EXPECT_EQ(RatFun(3, {1}, {{1, 1}, {1, 1}}).to_string(), "(1)/((1 - t/3)^2)");
}
