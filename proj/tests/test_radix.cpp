#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "moran/error.hpp"
#include "moran/families.hpp"
#include "moran/radix.hpp"

using namespace moran;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

DigitString ds(int base, std::vector<int> digits, std::vector<int> period = {}) {
  return DigitString{base, std::move(digits), std::move(period)};
}

CylinderAddress addr(std::vector<int> symbols, std::vector<int> gaps = {}) {
  return CylinderAddress{std::move(symbols), std::move(gaps)};
}

}  // namespace

TEST(Rational, CanonicalAndParsing) {
  EXPECT_EQ(to_string(q(-10, 24)), "-5/12");
  EXPECT_EQ(to_string(q(3, -6)), "-1/2");
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(parse_rational("-0.25"), q(-1, 4));
  EXPECT_EQ(parse_rational("6/8"), q(3, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_EQ(inv_pow(-3, 3), q(-1, 27));
  EXPECT_EQ(pow_int(q(2, 3), -2), q(9, 4));
}

TEST(Sadic, Examples) {
  EXPECT_EQ(eval_sadic(ds(3, {1, 0, 2})), q(11, 27));
  EXPECT_EQ(eval_sadic(ds(3, {})), Rational(0));
  EXPECT_EQ(eval_sadic(ds(3, {}, {2})), Rational(1));
  EXPECT_THROW(eval_sadic(ds(3, {3})), InvalidDigit);
}

TEST(Sadic, PeriodicTailMatchesPartialSums) {
  const DigitString d = ds(5, {1, 4}, {0, 3, 2});
  const Rational exact = eval_sadic(d);
  DigitString partial = ds(5, {1, 4});
  for (int rep = 0; rep < 12; ++rep) partial.digits.insert(partial.digits.end(), {0, 3, 2});
  const Rational diff = exact - eval_sadic(partial);
  EXPECT_GE(diff, 0);
  EXPECT_LE(diff, inv_pow(5, 38));
}

TEST(NegaSadic, Examples) {
  EXPECT_EQ(eval_negasadic(ds(3, {1})), q(-1, 3));
  EXPECT_EQ(eval_negasadic(ds(3, {}, {2, 0})), q(-3, 4));
  EXPECT_EQ(eval_negasadic(ds(3, {}, {0, 2})), q(1, 4));
  EXPECT_THROW(eval_negasadic(ds(3, {1, 5})), InvalidDigit);
}

TEST(NegaSadic, RangeProperty) {
  std::mt19937 rng(7);
  for (int s = 2; s <= 7; ++s) {
    std::uniform_int_distribution<int> dig(0, s - 1), len(0, 8);
    for (int trial = 0; trial < 200; ++trial) {
      DigitString d = ds(s, {});
      for (int i = len(rng); i > 0; --i) d.digits.push_back(dig(rng));
      for (int i = len(rng); i > 0; --i) d.period.push_back(dig(rng));
      const Rational v = eval_negasadic(d);
      EXPECT_LE(q(-s, s + 1), v);
      EXPECT_LE(v, q(1, s + 1));
    }
  }
}

TEST(Cantor, Examples) {
  const CantorBasis b = CantorBasis::periodic({2, 3, 4});
  const std::vector<int> eps{1, 2, 3};
  EXPECT_EQ(eval_cantor(eps, b, false), q(23, 24));
  EXPECT_EQ(eval_cantor(eps, b, true), q(-7, 24));
  EXPECT_THROW(eval_cantor(std::vector<int>{2}, b, false), InvalidDigit);
}

TEST(Cantor, ConstantBasisIsSadic) {
  std::mt19937 rng(11);
  for (int s = 2; s <= 9; ++s) {
    std::uniform_int_distribution<int> dig(0, s - 1);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> d(static_cast<std::size_t>(trial % 13));
      for (auto& x : d) x = dig(rng);
      EXPECT_EQ(eval_cantor(d, CantorBasis::constant(s), false), eval_sadic(ds(s, d)));
    }
  }
}

TEST(Cantor, GeometricBasis) {
  const CantorBasis b = CantorBasis::geometric(2);
  EXPECT_EQ(b.at(3), Integer(8));
  EXPECT_NEAR(b.log_at(40), 40 * std::log(2.0), 1e-9);
  EXPECT_EQ(eval_cantor(std::vector<int>{1, 3}, b, false), q(1, 2) + q(3, 8));
  EXPECT_FALSE(b.period().has_value());
}

TEST(NegaCantor, Examples) {
  EXPECT_EQ(eval_negas_cantor(std::vector<int>{1, 1, 1}, GapSequence::constant(1), 3), q(-7, 27));
  EXPECT_EQ(eval_negas_cantor(std::vector<int>{1, 1}, GapSequence::explicit_list({3, 3}), 2), q(-7, 64));
  EXPECT_EQ(eval_negas_cantor(std::vector<int>{0, 0, 0, 0}, GapSequence::periodic({3, 5}), 4), Rational(0));
  EXPECT_THROW(eval_negas_cantor(std::vector<int>{1, 1, 1}, GapSequence::explicit_list({1, 1}), 3), DomainError);
}

TEST(Lemma1, Examples) {
  EXPECT_TRUE(lemma1_check(GapSequence::periodic({3, 5, 7}), 30));
  EXPECT_TRUE(lemma1_check(GapSequence::constant(1), 30));
  EXPECT_FALSE(lemma1_check(GapSequence::explicit_list({3, 4, 5}), 3));
  EXPECT_TRUE(lemma1_check(GapSequence::explicit_list({3, 4, 5}), 1));
}

// With odd gaps the alternating Cantor series with d_n = s^(m_n) and the
// nega-s-adic Cantor series agree; they also match the series in powers of -s.
TEST(Lemma1, OddGapsGiveEqualSeries) {
  std::mt19937 rng(3);
  for (int s = 2; s <= 5; ++s) {
    std::uniform_int_distribution<int> gap(0, 3), dig(0, s - 1);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> m(6);
      std::vector<long> d;
      std::vector<int> e(6);
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = 2 * gap(rng) + 1;
        d.push_back(static_cast<long>(std::pow(s, m[i])));
        e[i] = dig(rng);
      }
      const GapSequence g = GapSequence::explicit_list(m);
      ASSERT_TRUE(lemma1_check(g, 6));
      EXPECT_EQ(eval_negas_cantor(e, g, s), eval_cantor(e, CantorBasis::periodic(d), true));
      EXPECT_EQ(eval_negas_cantor(e, g, s), eval_nega_series(e, g, s));
    }
  }
}

TEST(Lemma1, EvenGapBreaksEquality) {
  const GapSequence g = GapSequence::explicit_list({2});
  EXPECT_FALSE(lemma1_check(g, 1));
  EXPECT_NE(eval_negas_cantor(std::vector<int>{1}, g, 3), eval_nega_series(std::vector<int>{1}, g, 3));
}

TEST(Digits, Examples) {
  EXPECT_EQ(digits_from_rational(q(1, 3), 3, 3, false).digits, (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(digits_from_rational(Rational(0), 4, 5, true).digits, (std::vector<int>(5, 0)));
  const DigitString d = digits_from_rational(q(-1, 4), 3, 4, true);
  EXPECT_LE(abs(eval_negasadic(d) - q(-1, 4)), inv_pow(3, 4) * q(3, 2));
  EXPECT_THROW(digits_from_rational(Rational(1), 3, 3, false), DomainError);
  EXPECT_THROW(digits_from_rational(q(1, 2), 3, 3, true), DomainError);
}

TEST(Digits, GreedyNeverEndsInTopRun) {
  // 1/3 in base 3 is 0.1000..., never 0.0222...
  const DigitString d = digits_from_rational(q(1, 3), 3, 12, false);
  EXPECT_EQ(d.digits.front(), 1);
  for (std::size_t i = 1; i < d.digits.size(); ++i) EXPECT_EQ(d.digits[i], 0);
}

TEST(Digits, RoundTripProperty) {
  std::mt19937 rng(5);
  for (int s = 2; s <= 7; ++s) {
    std::uniform_int_distribution<long> num(0, 10000);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 15);
      const Rational bound = inv_pow(s, n) * q(s, s - 1);
      const Rational x = q(num(rng), 10001);
      EXPECT_LE(abs(eval_sadic(digits_from_rational(x, s, n, false)) - x), bound);
      // map [0, 1) onto [-s/(s+1), 1/(s+1)]
      const Rational y = x - q(s, s + 1);
      EXPECT_LE(abs(eval_negasadic(digits_from_rational(y, s, n, true)) - y), bound);
    }
  }
}

TEST(FamilyPoint, Examples) {
  const FamilySpec nega = FamilySpec::nega_su(3, 0);
  EXPECT_EQ(eval_family_point(nega, addr({1, 1, 1})), q(-7, 27));

  const FamilySpec sm = FamilySpec::sminus(3);
  EXPECT_EQ(eval_family_point(sm, addr({2, 1})), q(-5, 27));
  EXPECT_EQ(eval_family_point(nega, addr({2, 1})), q(5, 27));

  const FamilySpec s3 = FamilySpec::s_family(3);
  EXPECT_EQ(eval_family_point(s3, addr({}), addr({2})), q(1, 4));
  EXPECT_EQ(eval_family_point(s3, addr({}), addr({1})), q(1, 2));

  EXPECT_THROW(eval_family_point(FamilySpec::su(5, 2), addr({2})), FamilyConstraint);
  EXPECT_THROW(eval_family_point(s3, addr({0})), FamilyConstraint);
}

TEST(FamilyPoint, MatchesSadicExpansion) {
  // S_(s,u): the value with a u-run closure equals the s-adic value of the
  // expanded digits followed by u forever.
  for (int s = 3; s <= 6; ++s)
    for (int u = 0; u < s; ++u) {
      const FamilySpec fam = u == 0 ? FamilySpec::s_family(s) : FamilySpec::su(s, u);
      for (std::size_t depth = 0; depth <= 3; ++depth)
        for (const auto& a : enumerate_addresses(fam, depth)) {
          DigitString d = expand_address(fam, a);
          d.period = {u};
          if (u == 0) d.period.clear();
          EXPECT_EQ(eval_family_point(fam, a), eval_sadic(d)) << fam.to_string() << " " << to_string(a);
        }
    }
}

TEST(FamilyPoint, NegaFamilyMatchesNegaExpansion) {
  for (int s = 3; s <= 5; ++s)
    for (int u = 0; u < s; ++u) {
      const FamilySpec fam = FamilySpec::nega_su(s, u);
      for (const auto& a : enumerate_addresses(fam, 3)) {
        DigitString d = expand_address(fam, a);
        if (u != 0) d.period = {u};
        EXPECT_EQ(eval_family_point(fam, a), eval_negasadic(d)) << fam.to_string() << " " << to_string(a);
      }
    }
}

TEST(FamilyPoint, MdIsNegaCantorSeries) {
  const FamilySpec md = FamilySpec::md(3);
  const CylinderAddress a = addr({2, 1, 2}, {3, 5, 3});
  EXPECT_EQ(eval_family_point(md, a),
            eval_negas_cantor(std::vector<int>{2, 1, 2}, GapSequence::explicit_list({3, 5, 3}), 3));
  EXPECT_EQ(eval_family_point(md, a), eval_negasadic(expand_address(md, a)));
}

TEST(ExpandAddress, Examples) {
  EXPECT_EQ(expand_address(FamilySpec::s_family(3), addr({2, 1})).digits, (std::vector<int>{0, 2, 1}));
  EXPECT_EQ(expand_address(FamilySpec::su(5, 2), addr({3, 1})).digits, (std::vector<int>{2, 2, 3, 1}));
  EXPECT_EQ(expand_address(FamilySpec::md(3), addr({2, 1}, {3, 3})).digits, (std::vector<int>{0, 0, 2, 0, 0, 1}));
  EXPECT_THROW(expand_address(FamilySpec::su(5, 2), addr({2})), FamilyConstraint);
}
