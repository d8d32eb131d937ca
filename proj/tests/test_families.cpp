#include <gtest/gtest.h>

#include <cmath>

#include "moran/error.hpp"
#include "moran/families.hpp"

using namespace moran;

namespace {


DigitString digits(int base, std::vector<int> d) { return DigitString{base, std::move(d), {}}; }

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(Blocks, SFamily) {
  const BlockSet b = blocks_of_family(FamilySpec::s_family(3));
  EXPECT_EQ(b.blocks, (std::vector<std::vector<int>>{{0, 2}, {1}}));
  EXPECT_EQ(b.histogram.at(1), 1u);
  EXPECT_EQ(b.histogram.at(2), 1u);
  EXPECT_FALSE(b.degenerate());
}

TEST(Blocks, DegenerateSu) {
  const FamilySpec fam = FamilySpec::su(3, 1);
  const BlockSet b = blocks_of_family(fam);
  EXPECT_EQ(b.blocks, (std::vector<std::vector<int>>{{1, 2}}));
  EXPECT_TRUE(b.degenerate());
  EXPECT_TRUE(fam.degenerate());
}

TEST(Blocks, TildeCount) {
  for (int s = 3; s <= 12; ++s) {
    const BlockSet b = blocks_of_family(FamilySpec::tilde(s));
    EXPECT_EQ(b.size(), static_cast<std::uint64_t>(s * s - 3 * s + 3)) << "s=" << s;
    std::uint64_t total = 0;
    for (const auto& [k, n] : b.histogram) total += n;
    EXPECT_EQ(total, b.size());
  }
  EXPECT_EQ(blocks_of_family(FamilySpec::tilde(4)).size(), 7u);
}

TEST(Blocks, SuLengths) {
  for (int s = 3; s <= 9; ++s)
    for (int u = 0; u < s; ++u) {
      const FamilySpec fam = u == 0 ? FamilySpec::s_family(s) : FamilySpec::su(s, u);
      const BlockSet b = blocks_of_family(fam);
      std::map<int, std::uint64_t> want;
      for (int p = 1; p < s; ++p)
        if (p != u) want[p] = 1;
      EXPECT_EQ(b.histogram, want) << fam.to_string();
      EXPECT_EQ(b.size(), static_cast<std::uint64_t>(u == 0 ? s - 1 : s - 2));
      for (const auto& blk : b.blocks) {
        const int c = blk.back();
        EXPECT_EQ(static_cast<int>(blk.size()), c);
        for (std::size_t i = 0; i + 1 < blk.size(); ++i) EXPECT_EQ(blk[i], u);
      }
    }
}

TEST(Blocks, MdIsAnalytic) {
  const BlockSet b = blocks_of_family(FamilySpec::md(4));
  ASSERT_TRUE(b.tail.has_value());
  EXPECT_EQ(b.tail->first, 3);
  EXPECT_EQ(b.tail->step, 2);
  EXPECT_EQ(b.tail->count, 3u);
  EXPECT_TRUE(b.blocks.empty());
  EXPECT_FALSE(b.degenerate());
}

TEST(Blocks, CantorHasNone) {
  EXPECT_THROW(blocks_of_family(FamilySpec::cantor(CantorBasis::constant(3), {{0, 2}})), Unsupported);
}

TEST(Specs, Invariants) {
  EXPECT_THROW(FamilySpec::s_family(2), DomainError);
  EXPECT_THROW(FamilySpec::su(4, 4), DomainError);
  EXPECT_THROW(FamilySpec::md(1), DomainError);
  EXPECT_THROW(FamilySpec::md_periodic(3, {3, 4}), DomainError);
  EXPECT_THROW(FamilySpec::md_periodic(3, {1}), DomainError);
  EXPECT_THROW(FamilySpec::cantor(CantorBasis::constant(3), {{0, 3}}), InvalidDigit);
  EXPECT_THROW(FamilySpec::cantor(CantorBasis::constant(3), {{}}), DomainError);
  EXPECT_NO_THROW(FamilySpec::md(2));
}

TEST(Parse, Grammar) {
  EXPECT_EQ(parse_family("S(s=3)"), FamilySpec::s_family(3));
  EXPECT_EQ(parse_family("Su(s=5,u=2)"), FamilySpec::su(5, 2));
  EXPECT_EQ(parse_family(" NSu( s = 5 , u = 2 ) "), FamilySpec::nega_su(5, 2));
  EXPECT_EQ(parse_family("Sminus(s=3)"), FamilySpec::sminus(3));
  EXPECT_EQ(parse_family("Tilde(s=4)"), FamilySpec::tilde(4));
  EXPECT_EQ(parse_family("MD(s=2)"), FamilySpec::md(2));
  EXPECT_EQ(parse_family("MDper(s=3,m=[3,5])"), FamilySpec::md_periodic(3, {3, 5}));
  EXPECT_EQ(parse_family("Blocks(s=3,B=[0 2;1])"), FamilySpec::block_list(3, {{0, 2}, {1}}));
  EXPECT_EQ(parse_family("Blocks(s=3,B=[02;1])"), FamilySpec::block_list(3, {{0, 2}, {1}}));
  EXPECT_EQ(parse_family("Cantor(d=[3],I=[{0,2}])"), FamilySpec::cantor(CantorBasis::periodic({3}), {{0, 2}}));
  EXPECT_EQ(parse_family("Cantor(d=geom(2),I=[{0,1}])").basis.kind(), CantorBasis::Kind::Geometric);
}

TEST(Parse, RoundTripsThroughToString) {
  for (const char* text : {"S(s=3)", "Su(s=5,u=2)", "NSu(s=5,u=2)", "Sminus(s=4)", "Tilde(s=6)", "MD(s=2)",
                           "MDper(s=3,m=[3,5])", "Blocks(s=3,B=[0 2;1])", "Cantor(d=[3,4],I=[{0,2},{1}])",
                           "Cantor(d=geom(3),I=[{0,1}])"}) {
    const FamilySpec fam = parse_family(text);
    EXPECT_EQ(parse_family(fam.to_string()), fam) << text;
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_family("S"), ParseError);
  EXPECT_THROW(parse_family("Q(s=3)"), ParseError);
  EXPECT_THROW(parse_family("S(s=3,u=1)"), ParseError);
  EXPECT_THROW(parse_family("S(s=x)"), ParseError);
  EXPECT_THROW(parse_family("S(s=2)"), ParseError);
  EXPECT_THROW(parse_family("Su(s=3)"), ParseError);
  EXPECT_THROW(parse_family("S(s=3,s=4)"), ParseError);
  EXPECT_THROW(parse_family("MDper(s=3,m=[3,4])"), ParseError);
  EXPECT_THROW(parse_family("Blocks(s=3,B=[0 3])"), ParseError);
}

TEST(Enumerate, Examples) {
  const auto s3 = enumerate_addresses(FamilySpec::s_family(3), 2);
  ASSERT_EQ(s3.size(), 4u);
  EXPECT_EQ(s3[0].symbols, (std::vector<int>{1, 1}));
  EXPECT_EQ(s3[1].symbols, (std::vector<int>{1, 2}));
  EXPECT_EQ(s3[2].symbols, (std::vector<int>{2, 1}));
  EXPECT_EQ(s3[3].symbols, (std::vector<int>{2, 2}));

  const auto su = enumerate_addresses(FamilySpec::su(5, 2), 1);
  ASSERT_EQ(su.size(), 3u);
  EXPECT_EQ(su[0].symbols, std::vector<int>{1});
  EXPECT_EQ(su[1].symbols, std::vector<int>{3});
  EXPECT_EQ(su[2].symbols, std::vector<int>{4});

  const auto root = enumerate_addresses(FamilySpec::tilde(4), 0);
  ASSERT_EQ(root.size(), 1u);
  EXPECT_TRUE(root[0].symbols.empty());
}

TEST(Enumerate, Counts) {
  for (int s = 3; s <= 6; ++s)
    for (std::size_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(enumerate_addresses(FamilySpec::s_family(s), n).size(), ipow(s - 1, n));
      EXPECT_EQ(enumerate_addresses(FamilySpec::nega_su(s, 0), n).size(), ipow(s - 1, n));
      EXPECT_EQ(enumerate_addresses(FamilySpec::sminus(s), n).size(), ipow(s - 1, n));
      for (int u = 1; u < s; ++u) {
        EXPECT_EQ(enumerate_addresses(FamilySpec::su(s, u), n).size(), ipow(s - 2, n));
        EXPECT_EQ(address_count(FamilySpec::su(s, u), n), ipow(s - 2, n));
      }
    }
}

TEST(Enumerate, SortedAndCapped) {
  const auto a = enumerate_addresses(FamilySpec::tilde(4), 3);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_THROW(enumerate_addresses(FamilySpec::s_family(5), 12, 1000), Blowup);
  EXPECT_THROW(enumerate_addresses(FamilySpec::md(3), 1), Unsupported);
}

TEST(Enumerate, AddressesParseAsMembers) {
  for (const FamilySpec& fam : {FamilySpec::s_family(4), FamilySpec::su(5, 2), FamilySpec::nega_su(4, 0),
                                FamilySpec::sminus(3), FamilySpec::tilde(4), FamilySpec::md_periodic(3, {3, 5}),
                                FamilySpec::block_list(3, {{0, 2}, {1}})})
    for (std::size_t n = 0; n <= 3; ++n)
      for (const auto& a : enumerate_addresses(fam, n))
        EXPECT_TRUE(membership_prefix(fam, expand_address(fam, a))) << fam.to_string() << " " << to_string(a);
}

TEST(Membership, Examples) {
  const FamilySpec s3 = FamilySpec::s_family(3);
  EXPECT_TRUE(membership_prefix(s3, digits(3, {0, 2, 1})));
  EXPECT_FALSE(membership_prefix(s3, digits(3, {2})));
  EXPECT_TRUE(membership_prefix(s3, digits(3, {0})));  // prefix of "02"
  EXPECT_TRUE(membership_prefix(FamilySpec::tilde(4), digits(4, {1, 2})));
  EXPECT_TRUE(membership_prefix(s3, digits(3, {})));
}

TEST(Membership, Md) {
  const FamilySpec md = FamilySpec::md(3);
  EXPECT_TRUE(membership_prefix(md, digits(3, {0, 0, 2, 0, 0, 1})));
  EXPECT_TRUE(membership_prefix(md, digits(3, {0, 0, 0, 0, 1})));
  EXPECT_TRUE(membership_prefix(md, digits(3, {0, 0, 0})));
  EXPECT_FALSE(membership_prefix(md, digits(3, {0, 1})));
  EXPECT_FALSE(membership_prefix(md, digits(3, {0, 0, 0, 1})));
  EXPECT_FALSE(membership_prefix(md, digits(3, {2})));
}

TEST(Membership, CantorLevels) {
  const FamilySpec fam = FamilySpec::cantor(CantorBasis::periodic({3, 4}), {{0, 2}, {1, 3}});
  EXPECT_TRUE(membership_prefix(fam, digits(4, {2, 3, 0, 1})));
  EXPECT_FALSE(membership_prefix(fam, digits(4, {1})));
  EXPECT_FALSE(membership_prefix(fam, digits(4, {0, 2})));
}

TEST(Address, Validate) {
  EXPECT_THROW(validate(FamilySpec::su(5, 2), CylinderAddress{{2}, {}}), FamilyConstraint);
  EXPECT_THROW(validate(FamilySpec::s_family(3), CylinderAddress{{3}, {}}), FamilyConstraint);
  EXPECT_THROW(validate(FamilySpec::md(3), CylinderAddress{{1}, {4}}), FamilyConstraint);
  EXPECT_THROW(validate(FamilySpec::md(3), CylinderAddress{{1}, {}}), FamilyConstraint);
  EXPECT_NO_THROW(validate(FamilySpec::md(3), CylinderAddress{{1, 2}, {3, 5}}));
  EXPECT_THROW(validate(FamilySpec::tilde(4), CylinderAddress{{7}, {}}), FamilyConstraint);
}
