#include <random>

#include <gtest/gtest.h>

#include "igusa/parse.hpp"
#include "igusa/region.hpp"
#include "igusa/spf.hpp"
#include "oracles.hpp"

using namespace igusa;

namespace {

mpq_class Q(long n, unsigned long d = 1) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace

TEST(ComplementCells, OneVariable) {
  const auto cells = complement_cells(Polydisc({1}));
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].sign, 1);
  EXPECT_EQ(cells[0].cell.in_b, std::vector<bool>{true});
  EXPECT_EQ(cells[0].cell.a[0], 0u);
}

TEST(ComplementCells, TwoVariablesInclusionExclusion) {
  const auto cells = complement_cells(Polydisc({1, 1}));
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].sign, 1);
  EXPECT_EQ(cells[0].cell.in_b, (std::vector<bool>{true, false}));
  EXPECT_EQ(cells[1].sign, 1);
  EXPECT_EQ(cells[1].cell.in_b, (std::vector<bool>{false, true}));
  EXPECT_EQ(cells[2].sign, -1);
  EXPECT_EQ(cells[2].cell.in_b, (std::vector<bool>{true, true}));
}

TEST(ComplementCells, BoxThreeByTwo) {
  // a_1 in {0,1,2} alone, a_2 in {0,1} alone, and the 6 joint cells.
  const auto cells = complement_cells(Polydisc({3, 2}));
  EXPECT_EQ(cells.size(), 3u + 2u + 6u);
  int joint = 0;
  for (const auto& c : cells)
    if (c.cell.size_b() == 2) {
      ++joint;
      EXPECT_EQ(c.sign, -1);
      EXPECT_LT(c.cell.a[0], 3u);
      EXPECT_LT(c.cell.a[1], 2u);
    }
  EXPECT_EQ(joint, 6);
}

TEST(ComplementCells, SignedMeasuresSumToComplement) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint32_t> radius(1, 4), nvars(1, 3);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint32_t> r(nvars(rng));
      for (auto& x : r) x = radius(rng);
      const Polydisc A(r);
      mpq_class total = 0;
      for (const auto& c : complement_cells(A)) total += c.sign * c.cell.measure(p);
      EXPECT_EQ(total, 1 - inverse_prime_power(p, A.total()));
    }
}

TEST(CellChange, Examples) {
  ZpRing R(5);
  const auto f = parse_polynomial("x^2 + y^3", R);
  ValuationCell c1{{true, false}, {1, 0}};
  auto ch = cell_change_of_variables(f, c1);
  EXPECT_EQ(ch.e, 0u);
  EXPECT_EQ(ch.d_shift, 1u);
  EXPECT_EQ(ch.f_b, parse_polynomial("25*x^2 + y^3", R));
  EXPECT_EQ(ch.target, ResidueRegion::units_on(5, {true, false}));
  EXPECT_EQ(ch.target.measure(), Q(4, 5));

  const auto g = parse_polynomial("x", R);
  ValuationCell c2{{true}, {2}};
  auto ch2 = cell_change_of_variables(g, c2);
  EXPECT_EQ(ch2.e, 2u);
  EXPECT_EQ(ch2.d_shift, 2u);
  EXPECT_EQ(ch2.f_b, g);

  ValuationCell c3{{true, true}, {3, 2}};
  auto ch3 = cell_change_of_variables(f, c3);
  EXPECT_EQ(ch3.e, 6u);
  EXPECT_EQ(ch3.d_shift, 5u);
  EXPECT_EQ(ch3.f_b, f);
  EXPECT_EQ(ch3.target.count(), 16u);

  EXPECT_THROW(cell_change_of_variables(f, ValuationCell{{false, false}, {0, 0}}), InvalidParameters);
}

TEST(CellChange, ContractAgainstNaiveMeasures) {
  // int_{D(B,a)} |f|^s = p^{-d} t^e int_{target} |f_B|^s, compared through
  // t-coefficients: engine on the right, naive enumeration on the left.
  ZpRing R(3);
  const std::uint32_t J = 6;
  for (const char* text : {"x^2 + y^3", "x*y + 3*y^2", "x^3 - y^2 + x*y"}) {
    const auto f = parse_polynomial(text, R);
    for (const auto& sc : complement_cells(Polydisc({2, 1}))) {
      const auto ch = cell_change_of_variables(f, sc.cell);
      const RatFun rhs = spf_zeta(ch.f_b, ch.target).zeta.scaled(inverse_prime_power(3, ch.d_shift), ch.e);
      const auto cell = sc.cell;
      const auto lhs = igusa::testing::naive_measures(f, J, [&](const std::vector<mpz_class>& x) {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (cell.in_b[i] && R.valuation(x[i]) != ExtNat(cell.a[i])) return false;
        return true;
      });
      EXPECT_EQ(rhs.series(J - 1), lhs) << text;
    }
  }
}

TEST(Region, Measures) {
  EXPECT_EQ(ResidueRegion::full(7, 3).measure(), 1);
  EXPECT_EQ(ResidueRegion::units_on(5, {true, false}).measure(), Q(4, 5));
  const ResidueRegion ex = ResidueRegion::explicit_set(5, 2, {{0, 1}, {2, 2}, {4, 0}});
  EXPECT_EQ(ex.measure(), Q(3, 25));
  EXPECT_TRUE(ex.contains(std::vector<std::uint32_t>{2, 2}));
  EXPECT_FALSE(ex.contains(std::vector<std::uint32_t>{2, 3}));
  EXPECT_TRUE(ResidueRegion::empty(3, 2).is_empty());
  EXPECT_EQ(ResidueRegion::empty(3, 2).measure(), 0);
  EXPECT_THROW(ResidueRegion::explicit_set(5, 2, {{5, 0}}), InvalidParameters);
}

TEST(Region, ProductIterationMatchesContains) {
  const ResidueRegion r = ResidueRegion::units_on(3, {false, true, true});
  std::uint64_t seen = 0;
  r.for_each_point([&](const FieldPoint& pt) {
    EXPECT_TRUE(r.contains(pt));
    ++seen;
  });
  EXPECT_EQ(seen, r.count());
  EXPECT_EQ(seen, 12u);
  EXPECT_THROW(ResidueRegion::full(2, 30).for_each_point([](const FieldPoint&) {}, 1000), BudgetExceeded);
}
