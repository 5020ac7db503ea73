#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "hallpi/catalog.hpp"

using namespace hallpi;
using boost::multiprecision::pow;

namespace {

// Order formulas written out directly, independent of the catalog's
// cyclotomic term builder.
BigInt ref_gcd(BigInt a, BigInt b)
{
  if (a < 0)
    a = -a;
  if (b < 0)
    b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt ref_order(GroupDescriptor const &d)
{
  BigInt const q = d.q;
  switch (d.family) {
  case Family::PSL: {
    int const eta = d.eta == Sign::Plus ? 1 : -1;
    BigInt o = pow(q, d.n * (d.n - 1) / 2);
    for (unsigned i = 2; i <= d.n; ++i)
      o *= pow(q, i) - (i % 2 == 0 ? 1 : eta);
    return o / ref_gcd(d.n, q - eta);
  }
  case Family::PSp: {
    BigInt o = pow(q, d.n * d.n);
    for (unsigned i = 1; i <= d.n; ++i)
      o *= pow(q, 2 * i) - 1;
    return o / ref_gcd(2, q - 1);
  }
  case Family::POmega: {
    unsigned const m = d.n / 2;
    if (d.n % 2 == 1) {
      BigInt o = pow(q, m * m);
      for (unsigned i = 1; i <= m; ++i)
        o *= pow(q, 2 * i) - 1;
      return o / ref_gcd(2, q - 1);
    }
    int const eta = d.eta == Sign::Plus ? 1 : -1;
    BigInt o = pow(q, m * (m - 1)) * (pow(q, m) - eta);
    for (unsigned i = 1; i < m; ++i)
      o *= pow(q, 2 * i) - 1;
    return o / ref_gcd(4, pow(q, m) - eta);
  }
  default:
    throw std::logic_error("no reference formula");
  }
}

} // namespace

TEST(Descriptor, ParseExamples)
{
  auto d = parse_descriptor("PSL+:2:41");
  EXPECT_EQ(d.family, Family::PSL);
  EXPECT_EQ(d.n, 2u);
  EXPECT_EQ(d.eta, Sign::Plus);
  EXPECT_EQ(d.q, 41u);
  EXPECT_EQ(d.p, 41u);

  auto r = parse_descriptor("2G2:27");
  EXPECT_EQ(r.family, Family::TwG2);
  EXPECT_EQ(r.p, 3u);
  EXPECT_EQ(r.field_exp, 3u);

  EXPECT_THROW(parse_descriptor("2B2:4"), ConstraintError);
  EXPECT_THROW(parse_descriptor("2G2:9"), ConstraintError);
  EXPECT_THROW(parse_descriptor("PSL+:2:6"), ConstraintError);
  EXPECT_THROW(parse_descriptor("PSL:2:5"), ParseError);
  EXPECT_THROW(parse_descriptor("Spor:M11"), ConstraintError);
  EXPECT_THROW(parse_descriptor("Foo:3"), ParseError);
  EXPECT_THROW(parse_descriptor("POmega:8:3"), ConstraintError);
  EXPECT_THROW(parse_descriptor("POmega+:7:3"), ConstraintError);
}

TEST(Descriptor, RenderRoundTrip)
{
  for (auto s : {"Alt:7", "Sym:4", "Spor:J1", "PSL+:3:4", "PSL-:3:3", "PSp:2:3", "POmega:7:3",
                 "POmega+:8:2", "POmega-:10:3", "E6+:2", "E6-:2", "G2:3", "F4:2", "E7:2", "E8:2",
                 "3D4:2", "2B2:8", "2G2:27", "2F4:2"})
    EXPECT_EQ(render(parse_descriptor(s)), s);
}

TEST(GroupOrder, Examples)
{
  EXPECT_EQ(group_order(parse_descriptor("PSL+:2:41")).order.to_string(), "2^3*3*5*7*41");
  EXPECT_EQ(group_order(parse_descriptor("Alt:5")).order.value(), 60);
  EXPECT_EQ(group_order(parse_descriptor("PSL+:2:7")).order.value(), 168);
  EXPECT_EQ(prime_spectrum(parse_descriptor("PSL+:2:41")), (PrimeSet{2, 3, 5, 7, 41}));
  EXPECT_EQ(prime_spectrum(parse_descriptor("Alt:5")), (PrimeSet{2, 3, 5}));
  EXPECT_EQ(prime_spectrum(parse_descriptor("Spor:J1")), (PrimeSet{2, 3, 5, 7, 11, 19}));
}

// Orders of small simple groups as tabulated in the ATLAS of Finite Groups.
TEST(GroupOrder, AtlasValues)
{
  std::vector<std::pair<char const *, char const *>> const table{
    {"PSL+:3:4", "20160"},
    {"PSL-:3:3", "6048"},
    {"PSL-:4:2", "25920"},
    {"PSp:2:3", "25920"},
    {"PSp:3:2", "1451520"},
    {"POmega:7:3", "4585351680"},
    {"POmega+:8:2", "174182400"},
    {"POmega-:8:2", "197406720"},
    {"G2:3", "4245696"},
    {"G2:4", "251596800"},
    {"2B2:8", "29120"},
    {"2B2:32", "32537600"},
    {"2G2:27", "10073444472"},
    {"3D4:2", "211341312"},
    {"2F4:2", "35942400"},
    {"F4:2", "3311126603366400"},
    {"E6+:2", "214841575522005575270400"},
    {"E6-:2", "76532479683774853939200"},
    {"E7:2", "7997476042075799759100487262680802918400"},
    {"Spor:J1", "175560"},
  };
  for (auto const &[d, o] : table)
    EXPECT_EQ(group_order(parse_descriptor(d)).order.value(), BigInt(o)) << d;
}

TEST(GroupOrder, TermsMultiplyToOrderTimesDivisor)
{
  for (auto s : {"PSL+:4:3", "PSp:3:5", "POmega-:10:3", "E6-:5", "3D4:3", "2F4:8", "E8:3"}) {
    auto go = group_order(parse_descriptor(s));
    Factorization prod;
    for (auto const &t : go.terms)
      prod *= t.value;
    EXPECT_EQ(prod.value(), go.order.value() * go.divisor) << s;
  }
}

TEST(GroupOrder, RandomClassicalAgainstReferenceFormula)
{
  std::mt19937_64 rng(11);
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 2; q < 200; ++q) {
    auto pp = prime_power(q);
    if (pp)
      qs.push_back(q);
  }
  int checked = 0;
  while (checked < 1000) {
    GroupDescriptor d;
    d.q = qs[rng() % qs.size()];
    auto pp = *prime_power(d.q);
    d.p = pp.first;
    d.field_exp = pp.second;
    switch (rng() % 4) {
    case 0:
      d.family = Family::PSL;
      d.n = 2 + rng() % 6;
      d.eta = rng() % 2 ? Sign::Plus : Sign::Minus;
      break;
    case 1:
      d.family = Family::PSp;
      d.n = 2 + rng() % 4;
      d.eta = Sign::None;
      break;
    case 2:
      d.family = Family::POmega;
      d.n = 7 + 2 * (rng() % 3);
      d.eta = Sign::None;
      break;
    default:
      d.family = Family::POmega;
      d.n = 8 + 2 * (rng() % 3);
      d.eta = rng() % 2 ? Sign::Plus : Sign::Minus;
      break;
    }
    if (d.family == Family::POmega && d.n % 2 == 1 && d.p == 2)
      continue;
    auto text = render(d);
    auto parsed = parse_descriptor(text);
    ASSERT_EQ(parsed, d) << text;
    ASSERT_EQ(group_order(d).order.value(), ref_order(d)) << text;
    ++checked;
  }
}

TEST(GroupOrder, AlternatingAndSymmetric)
{
  BigInt f = 1;
  for (unsigned n = 1; n <= 20; ++n) {
    f *= n;
    EXPECT_EQ(group_order(parse_descriptor("Sym:" + std::to_string(n))).order.value(), f);
    if (n >= 3)
      EXPECT_EQ(group_order(parse_descriptor("Alt:" + std::to_string(n))).order.value(), f / 2);
  }
}

TEST(BorelOrder, Examples)
{
  EXPECT_EQ(borel_order(parse_descriptor("PSL+:2:7")).order.value(), 21);
  EXPECT_EQ(borel_order(parse_descriptor("PSL+:2:41")).order.value(), 820);
  EXPECT_THROW(borel_order(parse_descriptor("POmega+:8:3")), UnsupportedFamily);
  EXPECT_THROW(borel_order(parse_descriptor("PSL-:3:3")), UnsupportedFamily);
}

TEST(BorelOrder, DividesGroupOrder)
{
  for (auto s : {"PSL+:3:4", "PSL+:5:3", "PSp:2:3", "PSp:3:5", "PSL+:2:49"}) {
    auto d = parse_descriptor(s);
    auto b = borel_order(d).order;
    EXPECT_TRUE(b.divides(group_order(d).order)) << s;
    // The Borel subgroup contains a full Sylow p-subgroup.
    EXPECT_EQ(b.exponent_of(d.p), group_order(d).order.exponent_of(d.p)) << s;
  }
}

TEST(Simplicity, Exceptions)
{
  EXPECT_FALSE(parse_descriptor("PSL+:2:2").is_simple());
  EXPECT_FALSE(parse_descriptor("PSL+:2:3").is_simple());
  EXPECT_FALSE(parse_descriptor("PSL-:3:2").is_simple());
  EXPECT_FALSE(parse_descriptor("PSp:2:2").is_simple());
  EXPECT_FALSE(parse_descriptor("G2:2").is_simple());
  EXPECT_FALSE(parse_descriptor("Alt:4").is_simple());
  EXPECT_TRUE(parse_descriptor("PSL+:2:4").is_simple());
  EXPECT_TRUE(parse_descriptor("Alt:5").is_simple());
}
