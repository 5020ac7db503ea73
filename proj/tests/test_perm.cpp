#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "hallpi/constructions.hpp"
#include "hallpi/perm_group.hpp"
#include "properties.hpp"

using namespace hallpi;

namespace {

PermGroup sym(std::size_t n) { return build_group(parse_descriptor("Sym:" + std::to_string(n))); }
PermGroup alt(std::size_t n) { return build_group(parse_descriptor("Alt:" + std::to_string(n))); }
PermGroup psl2(std::uint64_t q) { return build_group(parse_descriptor("PSL+:2:" + std::to_string(q))); }

} // namespace

TEST(Perm, ParseAndPrint)
{
  auto p = Perm::from_cycles("(0,1,2)(3,4)", 6);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[2], 0);
  EXPECT_EQ(p[5], 5);
  EXPECT_EQ(p.to_cycles(), "(0,1,2)(3,4)");
  EXPECT_EQ(p.order(), 6u);
  EXPECT_TRUE(Perm::from_cycles("()", 4).is_identity());
  EXPECT_EQ(Perm(4).to_cycles(), "()");
  EXPECT_THROW(Perm::from_cycles("(0,1", 4), ParseError);
  EXPECT_THROW(Perm::from_cycles("(0,7)", 4), ParseError);
  EXPECT_THROW(Perm::from_cycles("(0,1,0)", 4), ParseError);
}

TEST(Perm, CompositionAppliesLeftFirst)
{
  auto a = Perm::from_cycles("(0,1)", 3);
  auto b = Perm::from_cycles("(1,2)", 3);
  // 0 -a-> 1 -b-> 2
  EXPECT_EQ((a * b)[0], 2);
  EXPECT_TRUE((a * a.inverse()).is_identity());
  auto c = Perm::from_cycles("(0,1,2,3,4)", 5);
  EXPECT_TRUE(c.pow(5).is_identity());
  EXPECT_EQ(c.pow(2), c * c);
  EXPECT_EQ(c.conjugate_by(c), c);
  EXPECT_TRUE(commutator(c, c).is_identity());
}

TEST(PermGroup, Orders)
{
  EXPECT_EQ(sym(4).order(), 24);
  EXPECT_EQ(psl2(7).order(), 168);
  EXPECT_EQ(PermGroup::trivial(5).order(), 1);
  EXPECT_EQ(PermGroup(5, {Perm(5)}).order(), 1);
  EXPECT_EQ(closure({Perm::from_cycles("(0,1)", 5), Perm::from_cycles("(0,1,2,3,4)", 5)}).order(), 120);
  EXPECT_EQ(closure({Perm::from_cycles("(0,1,2,3,4)", 5)}).order(), 5);
  EXPECT_EQ(sym(10).order(), 3628800);
}

TEST(PermGroup, Contains)
{
  auto a4 = alt(4);
  EXPECT_TRUE(a4.contains(Perm::from_cycles("(1,2,3)", 4)));
  EXPECT_FALSE(a4.contains(Perm::from_cycles("(0,1)", 4)));
  EXPECT_TRUE(a4.contains(Perm(4)));
}

TEST(PermGroup, Enumerate)
{
  EXPECT_EQ(psl2(41).enumerate().size(), 34440u);
  EXPECT_EQ(sym(7).enumerate().size(), 5040u);
  auto t = PermGroup::trivial(3).enumerate();
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.elements.front().is_identity());
}

TEST(PermGroup, Caps)
{
  Limits small;
  small.max_enum = 100;
  EXPECT_THROW(PermGroup(5, sym(5).generators(), small).enumerate(), CapExceeded);
  EXPECT_THROW(PermGroup(200, {Perm(200)}), CapExceeded);
  EXPECT_EQ(closure_order_capped(5, sym(5).generators(), 119), std::nullopt);
  EXPECT_EQ(closure_order_capped(5, sym(5).generators(), 120), 120u);
}

TEST(PermGroup, ClosureOfSylowsInPSL2_7)
{
  auto g = psl2(7);
  auto p2 = sylow(g, 2);
  auto p3 = sylow(g, 3);
  bool found = false;
  for (auto const &c : sylow_conjugates(g, p3)) {
    auto gens = p2.generators();
    gens.insert(gens.end(), c.generators().begin(), c.generators().end());
    if (closure(gens).order() == 24) {
      found = true;
      break;
    }
  }
  EXPECT_TRUE(found);
}

TEST(PermGroup, Normalizers)
{
  auto g = psl2(41);
  auto elems = g.enumerate();
  auto p5 = sylow(g, elems, 5);
  auto n = normalizer_scan(elems, p5);
  EXPECT_EQ(n.order(), 40);
  EXPECT_EQ(34440 % 40, 0);
  EXPECT_EQ((34440 / 40) % 5, 1);
  EXPECT_EQ(normalizer_scan(elems, g).order(), g.order());
  EXPECT_EQ(normalizer_scan(elems, PermGroup::trivial(g.degree())).order(), g.order());
}

TEST(PermGroup, DerivedSeries)
{
  auto s = derived_series(sym(4));
  std::vector<BigInt> orders;
  for (auto const &t : s.terms)
    orders.push_back(t.order());
  EXPECT_EQ(orders, (std::vector<BigInt>{24, 12, 4, 1}));
  EXPECT_TRUE(s.solvable);

  auto a = derived_series(alt(5));
  EXPECT_FALSE(a.solvable);
  EXPECT_EQ(a.terms.back().order(), 60);

  auto c = derived_series(closure({Perm::from_cycles("(0,1,2,3,4,5)", 6)}));
  ASSERT_EQ(c.terms.size(), 2u);
  EXPECT_EQ(c.terms.back().order(), 1);
  EXPECT_TRUE(c.solvable);
}

// The derived subgroup from generator commutators must agree with the
// closure of all commutators computed on a multiplication table.
TEST(PermGroup, DerivedSubgroupMatchesBruteForce)
{
  for (auto const &g : {sym(4), sym(5), alt(5), psl2(7), closure({Perm::from_cycles("(0,1,2,3)", 4), Perm::from_cycles("(0,2)", 4)})}) {
    brute::TableGroup t(g.generators());
    std::vector<std::uint32_t> all(t.order());
    for (std::uint32_t i = 0; i < all.size(); ++i)
      all[i] = i;
    EXPECT_EQ(t.solvable(t.close(all)), is_solvable(g));
    std::set<std::uint32_t> comms;
    for (std::uint32_t a = 0; a < t.order(); ++a)
      for (std::uint32_t b = 0; b < t.order(); ++b)
        comms.insert(t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b)));
    auto d = t.close(std::vector<std::uint32_t>(comms.begin(), comms.end()));
    EXPECT_EQ(BigInt(brute::TableGroup::size(d)), derived_subgroup(g).order());
  }
}

TEST(PermGroupProperties, ThousandRandomCases)
{
  auto r = props::permgrp_suite(1000, 2);
  EXPECT_GE(r.cases, 1000u);
  for (auto const &m : r.messages)
    ADD_FAILURE() << m;
  EXPECT_TRUE(r.passed());
}
