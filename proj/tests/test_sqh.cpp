#include <gtest/gtest.h>

#include "igusa/analysis.hpp"
#include "igusa/parse.hpp"
#include "igusa/sqh.hpp"

using namespace igusa;

namespace {

WeightSystem W(std::vector<std::uint32_t> alpha, std::uint32_t d) { return {std::move(alpha), d}; }

RatFun one_minus_w(std::uint32_t p, const WeightSystem& w) {
  qpoly::Poly q(w.d + 1);
  q[0] = 1;
  q[w.d] = -inverse_prime_power(p, w.norm());
  return RatFun(p, q, {});
}

}  // namespace

TEST(Weights, Detection) {
  ZpRing R(5);
  EXPECT_EQ(detect_weights(parse_polynomial("x^2 + y^3", R)).weights, W({3, 2}, 6));
  EXPECT_EQ(detect_weights(parse_polynomial("x^2 + y^2 + z^2", R)).weights, W({1, 1, 1}, 2));
  EXPECT_EQ(detect_weights(parse_polynomial("x^3 + y^4", R)).weights, W({4, 3}, 12));
  EXPECT_EQ(detect_weights(parse_polynomial("x", R)).weights, W({1}, 1));

  const auto dec = detect_weights(parse_polynomial("x^2 + y^3 + x*y^2", R));
  EXPECT_EQ(dec.weights, W({3, 2}, 6));
  EXPECT_EQ(dec.f, parse_polynomial("x^2 + y^3", R));
  EXPECT_EQ(dec.g, parse_polynomial("x*y^2", R));
  EXPECT_FALSE(dec.quasihomogeneous());
  EXPECT_TRUE(detect_weights(parse_polynomial("x^2 + 5*y^3", R)).quasihomogeneous());
}

TEST(Weights, HintsAndRejections) {
  ZpRing R(5);
  const auto F = parse_polynomial("x^2 + y^3 + x*y", R);
  EXPECT_THROW(detect_weights(F, W({3, 2}, 6)), InvalidHint);
  EXPECT_EQ(detect_weights(parse_polynomial("x^2 + y^3", R), W({3, 2}, 6)).weights, W({3, 2}, 6));
  EXPECT_THROW(detect_weights(parse_polynomial("x^2 + y^3", R), W({1, 1}, 2)), InvalidHint);
  EXPECT_THROW(detect_weights(parse_polynomial("1 + x^2", R)), NotSemiQuasiHomogeneous);
  // No monomial of x^2*y^2 is a pure power or of the form x_i^a x_j.
  EXPECT_THROW(detect_weights(parse_polynomial("x^2*y^2", R)), NotSemiQuasiHomogeneous);
}

TEST(ScaleStep, Examples) {
  ZpRing R(5);
  const WeightSystem w = W({3, 2}, 6);
  EXPECT_EQ(scale_step(parse_polynomial("x^2 + y^3 + x*y^2", R), w), parse_polynomial("x^2 + y^3 + 5*x*y^2", R));
  EXPECT_EQ(scale_step(parse_polynomial("x^2 + y^3 + x^3", R), w), parse_polynomial("x^2 + y^3 + 125*x^3", R));
  EXPECT_EQ(scale_step(parse_polynomial("x^2 + y^3", R), w), parse_polynomial("x^2 + y^3", R));
  EXPECT_THROW(scale_step(parse_polynomial("x*y", R), w), InvariantViolation);
}

TEST(Complement, LineAndSmallCases) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    ZpRing R(p);
    const mpq_class unit(static_cast<long>(p - 1), static_cast<unsigned long>(p));
    EXPECT_EQ(zeta_on_complement(parse_polynomial("x", R), W({1}, 1)), RatFun::constant(p, unit));
  }
}

TEST(Sqh, QuasihomogeneousShortcut) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    ZpRing R(p);
    for (const char* text : {"x^2 + y^3", "x^2 + y^2 + z^2", "x^3 + y^4"}) {
      const auto F = parse_polynomial(text, R);
      const auto res = zeta_semiquasihomogeneous(F);
      EXPECT_TRUE(res.report.quasihomogeneous);
      EXPECT_EQ(res.report.k0, 0u);
      EXPECT_EQ(res.zeta * one_minus_w(p, res.report.weights), zeta_on_complement(F, res.report.weights))
          << text << " p=" << p;
    }
  }
}

TEST(Sqh, CuspPerturbation) {
  ZpRing R(5);
  const auto res = zeta_semiquasihomogeneous(parse_polynomial("x^2 + y^3 + x*y^2", R));
  EXPECT_EQ(res.report.k0, 1u);
  EXPECT_EQ(res.report.cutoff, 5u);
  EXPECT_EQ(res.report.agreement_bound, 4u);
  EXPECT_EQ(res.report.m, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(res.report.complements.size(), 5u);
  for (std::size_t k = 1; k < res.report.complements.size(); ++k)
    EXPECT_EQ(res.report.complements[k], res.report.limit_complement);
  EXPECT_NE(res.report.complements[0], res.report.limit_complement);
  const auto N = poincare_from_zeta(res.zeta, 2).counts(3);
  EXPECT_EQ(N, (std::vector<mpz_class>{1, 4, 40, 200}));
}

TEST(Sqh, CuspPerturbationAtSeven) {
  ZpRing R(7);
  const auto F = parse_polynomial("x^2 + y^3 + x*y^2", R);
  const auto res = zeta_semiquasihomogeneous(F);
  EXPECT_TRUE(res.zeta.denominator_divides({{1, 1}, {5, 6}}));
  EXPECT_TRUE(series_check(F, ResidueRegion::full(7, 2), res.zeta, 4));
  EXPECT_EQ(poincare_from_zeta(res.zeta, 2).counts(4), (std::vector<mpz_class>{1, 6, 84, 588, 4116}));
}

TEST(Sqh, DiagonalQuadric) {
  ZpRing R(5);
  const auto res = zeta_semiquasihomogeneous(parse_polynomial("x^2 + y^2 + z^2", R));
  EXPECT_TRUE(res.zeta.denominator_divides({{1, 1}, {3, 2}}));
  EXPECT_EQ(poincare_from_zeta(res.zeta, 3).counts(3), (std::vector<mpz_class>{1, 25, 725, 18125}));
  for (const auto& pole : res.report.pole_real_parts)
    EXPECT_TRUE(pole == -1 || pole == mpq_class(-3, 2)) << pole;
}

TEST(Sqh, StepsBeyondCutoffAgreeWithLimit) {
  // The certificate claims C_k = C_inf for all k >= cutoff; check a few directly.
  ZpRing R(3);
  for (const char* text : {"x^2 + y^3 + x*y^2", "x^2 + y^3 + y^4"}) {
    const auto F = parse_polynomial(text, R);
    const auto res = zeta_semiquasihomogeneous(F);
    const WeightSystem& w = res.report.weights;
    auto Fk = F;
    for (std::uint64_t k = 0; k < res.report.cutoff + 3; ++k) {
      if (k >= res.report.k0) {
        EXPECT_EQ(zeta_on_complement(Fk, w), res.report.limit_complement) << text << " k=" << k;
      }
      Fk = scale_step(Fk, w);
    }
    for (std::size_t k = 1; k < res.report.m.size(); ++k) EXPECT_GT(res.report.m[k], res.report.m[k - 1]);
  }
}

TEST(Sqh, ConstantTermOfSeriesIsNonvanishingMeasure) {
  ZpRing R(5);
  for (const char* text : {"x^2 + y^3", "x^2 + y^3 + x*y^2", "x^3 + y^4", "x^2 + 5*y^3"}) {
    const auto F = parse_polynomial(text, R);
    const auto Z = zeta_semiquasihomogeneous(F).zeta;
    EXPECT_EQ(Z.series(0)[0], measure_series(F, ResidueRegion::full(5, 2), 1)[0]) << text;
  }
}

TEST(Sqh, CharacteristicP) {
  FpPiRing R(5);
  const auto F = parse_polynomial("x^2 + y^3 + u*x*y^2", R);
  const auto res = zeta_semiquasihomogeneous(F);
  EXPECT_TRUE(series_check(F, ResidueRegion::full(5, 2), res.zeta, 4));
}

TEST(Sqh, IterationCap) {
  ZpRing R(5);
  SqhConfig cfg;
  cfg.max_iterations = 1;
  EXPECT_THROW(zeta_semiquasihomogeneous(parse_polynomial("x^2 + y^3 + x*y^2", R), std::nullopt, cfg),
               StabilizationNotReached);
  cfg.max_iterations = 0;
  EXPECT_THROW(zeta_semiquasihomogeneous(parse_polynomial("x^2 + y^3", R), std::nullopt, cfg), InvalidParameters);
}

TEST(Sqh, TracesCoverEveryCell) {
  ZpRing R(5);
  SqhConfig cfg;
  cfg.spf.trace = true;
  const auto res = zeta_semiquasihomogeneous(parse_polynomial("x^2 + y^3 + x*y^2", R), std::nullopt, cfg);
  EXPECT_EQ(res.report.limit_trace.size(), complement_cells(Polydisc({3, 2})).size());
  EXPECT_EQ(res.report.step_traces.size(), res.report.complements.size());
  for (const auto& ct : res.report.limit_trace) EXPECT_FALSE(ct.nodes.empty());
}
