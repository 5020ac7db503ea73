#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "hallpi/arith.hpp"
#include "properties.hpp"

using namespace hallpi;

TEST(Factorize, SmallValues)
{
  EXPECT_TRUE(factorize(1).is_one());
  EXPECT_TRUE(factorize(1).factors().empty());
  EXPECT_EQ(factorize(24).to_string(), "2^3*3");
  EXPECT_EQ(factorize(34440).to_string(), "2^3*3*5*7*41");
  EXPECT_THROW(factorize(0), ConstraintError);
}

TEST(Factorize, MatchesTrialDivision)
{
  for (std::uint64_t n : {34440ull, 1092ull, 9999991ull, 600851475143ull, 4294967297ull}) {
    std::map<std::uint64_t, unsigned> got;
    auto const fac = factorize(n);
    for (auto const &f : fac.factors())
      got[f.prime] = f.exponent;
    EXPECT_EQ(got, brute::trial_factor(n)) << n;
  }
}

TEST(Factorize, LargeSemiprime)
{
  std::uint64_t const p = 4294967291ull, q = 4294967279ull;
  auto f = factorize(p * q);
  ASSERT_EQ(f.factors().size(), 2u);
  EXPECT_EQ(f.value(), BigInt(p) * q);
}

TEST(Factorize, BigIntBeyond64Bits)
{
  BigInt big = BigInt(1) << 70;
  EXPECT_THROW(factorize(big), UnsupportedFamily);
  EXPECT_EQ(factorize(BigInt(120)).to_string(), "2^3*3*5");
}

TEST(PrimeDivisors, Examples)
{
  EXPECT_EQ(prime_divisors(40), (PrimeSet{2, 5}));
  EXPECT_EQ(prime_divisors(34440), (PrimeSet{2, 3, 5, 7, 41}));
  EXPECT_TRUE(prime_divisors(1).empty());
}

TEST(PiPart, Examples)
{
  EXPECT_EQ(pi_part(std::uint64_t{120}, PrimeSet{2, 3}), 24u);
  EXPECT_EQ(pi_part(std::uint64_t{34440}, PrimeSet{2, 3, 5}), 120u);
  EXPECT_EQ(pi_part(std::uint64_t{34440}, prime_divisors(34440)), 34440u);
  EXPECT_EQ(pi_part(std::uint64_t{34440}, PrimeSet{}), 1u);
}

TEST(MultOrder, Examples)
{
  EXPECT_EQ(mult_order(41, 5), 1u);
  EXPECT_EQ(mult_order(41, 3), 2u);
  EXPECT_EQ(mult_order(2, 7), 3u);
  EXPECT_EQ(mult_order(5, 2), 1u);
  EXPECT_EQ(mult_order(7, 2), 2u);
  EXPECT_THROW(mult_order(15, 5), ConstraintError);
  EXPECT_THROW(mult_order(7, 9), ConstraintError);
}

TEST(Epsilon, Examples)
{
  EXPECT_EQ(epsilon(41), 1);
  EXPECT_EQ(epsilon(11), -1);
  EXPECT_EQ(epsilon(13), 1);
  EXPECT_THROW(epsilon(8), ConstraintError);
}

TEST(IsPrime, AgreesWithTrialDivision)
{
  for (std::uint64_t n = 0; n < 20000; ++n)
    ASSERT_EQ(is_prime(n), brute::trial_is_prime(n)) << n;
  EXPECT_TRUE(is_prime(18446744073709551557ull));
  EXPECT_FALSE(is_prime(3215031751ull));  // strong pseudoprime to 2,3,5,7
}

TEST(PrimeSet, ParseAndOperations)
{
  auto s = PrimeSet::parse("5,2,3");
  EXPECT_EQ(s.to_string(), "2,3,5");
  EXPECT_EQ(s.min(), 2u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_EQ(s.minus(PrimeSet{2}), (PrimeSet{3, 5}));
  EXPECT_EQ(s.intersect(PrimeSet{3, 7}), (PrimeSet{3}));
  EXPECT_EQ(s.unite(PrimeSet{7}), (PrimeSet{2, 3, 5, 7}));
  EXPECT_TRUE((PrimeSet{2, 5}).is_subset_of(s));
  EXPECT_EQ(s.subsets(2, 2).size(), 3u);
  EXPECT_EQ(s.subsets(1, 3).size(), 7u);
  EXPECT_THROW(PrimeSet::parse("2,4"), ConstraintError);
  EXPECT_THROW(PrimeSet::parse("2,,3"), ParseError);
  EXPECT_THROW(PrimeSet::parse("2, 3"), ParseError);
  EXPECT_THROW(PrimeSet::parse(""), ParseError);
}

TEST(FactorizationOps, ProductAndDivision)
{
  auto a = factorize(360), b = factorize(12);
  EXPECT_TRUE(b.divides(a));
  EXPECT_EQ(a.divided_by(b).value(), 30);
  EXPECT_EQ((a * b).value(), 4320);
  EXPECT_THROW(b.divided_by(a), InvariantViolation);
  EXPECT_EQ(a.pi_part(PrimeSet{2}).value(), 8);
  EXPECT_EQ(a.pi_prime_part(PrimeSet{2}).value(), 45);
}

TEST(Cyclotomic, ProductOverDivisorsIsXnMinusOne)
{
  for (unsigned n = 1; n <= 30; ++n) {
    for (std::uint64_t x : {2ull, 3ull, 7ull, 41ull}) {
      BigInt prod = 1;
      for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0)
          prod *= cyclotomic_value(d, BigInt(x));
      }
      EXPECT_EQ(prod, boost::multiprecision::pow(BigInt(x), n) - 1) << n << " " << x;
    }
  }
}

TEST(PrimePower, Detects)
{
  EXPECT_EQ(prime_power(27), (std::optional<std::pair<std::uint64_t, unsigned>>{{3, 3}}));
  EXPECT_FALSE(prime_power(12));
}

TEST(ArithProperties, ThousandRandomCases)
{
  auto r = props::arith_suite(1000, 1);
  EXPECT_EQ(r.cases, 1000u);
  EXPECT_EQ(r.failures, 0u) << (r.messages.empty() ? "" : r.messages.front());
}
