#pragma once

// Randomized invariant suites shared by the unit tests and the acceptance
// driver. Each suite runs a fixed-seed stream of cases and collects failures
// instead of aborting, so callers can report counts.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "hallpi/arith.hpp"
#include "hallpi/catalog.hpp"
#include "hallpi/constructions.hpp"
#include "hallpi/oracle.hpp"
#include "hallpi/perm_group.hpp"

namespace props {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;

  void check(bool ok, std::string const &what)
  {
    if (ok)
      return;
    ++failures;
    if (messages.size() < 10)
      messages.push_back(what);
  }

  bool passed() const { return failures == 0 && cases > 0; }
};

using hallpi::BigInt;
using hallpi::PrimeSet;

inline PrimeSet random_subset(PrimeSet const &s, std::mt19937_64 &rng, std::size_t min_size)
{
  for (;;) {
    std::vector<std::uint64_t> pick;
    for (auto p : s) {
      if (rng() & 1)
        pick.push_back(p);
    }
    if (pick.size() >= min_size)
      return PrimeSet(pick);
  }
}

inline hallpi::Perm random_element(hallpi::PermGroup const &g, std::mt19937_64 &rng)
{
  hallpi::Perm x(g.degree());
  auto const &gens = g.generators();
  if (gens.empty())
    return x;
  for (int i = 0; i < 40; ++i)
    x = x * gens[rng() % gens.size()];
  return x;
}

// ------------------------------------------------------------------ arith

inline SuiteResult arith_suite(std::size_t cases = 1000, std::uint64_t seed = 1)
{
  SuiteResult r;
  r.name = "arith";
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> small_primes;
  for (std::uint64_t p = 2; p < 60; ++p) {
    if (brute::trial_is_prime(p))
      small_primes.push_back(p);
  }
  PrimeSet const pool(small_primes);

  for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
    // Factorization round trip; small values against trial division.
    std::uint64_t n = (c % 2 == 0) ? 1 + rng() % 10'000'000'000ull : 1 + (rng() >> 2);
    auto f = hallpi::factorize(n);
    r.check(f.value() == n, "factorization does not multiply back to " + std::to_string(n));
    for (auto const &pp : f.factors())
      r.check(pp.prime < 1'000'000'000'000ull ? brute::trial_is_prime(pp.prime)
                                               : hallpi::is_prime(pp.prime),
              "non-prime factor of " + std::to_string(n));
    if (n <= 10'000'000'000ull) {
      auto ref = brute::trial_factor(n);
      std::map<std::uint64_t, unsigned> got;
      for (auto const &pp : f.factors())
        got[pp.prime] = pp.exponent;
      r.check(got == ref, "factorization of " + std::to_string(n) + " differs from trial division");
    }

    // pi-parts: n = n_pi * n_pi', and n_pi is a pi-number.
    PrimeSet pi = random_subset(pool, rng, 0);
    BigInt np = hallpi::pi_part(BigInt(n), pi);
    BigInt rest = BigInt(n) / np;
    r.check(BigInt(n) % np == 0, "pi-part does not divide n");
    for (auto p : pi)
      r.check(rest % p != 0, "pi'-part of " + std::to_string(n) + " divisible by " + std::to_string(p));
    r.check(f.pi_part(pi).value() == np, "Factorization::pi_part disagrees with pi_part");

    // Multiplicative order against repeated multiplication.
    std::uint64_t pr = 3;
    do {
      pr = 3 + rng() % 20000;
    } while (!brute::trial_is_prime(pr));
    std::uint64_t q = 2 + rng() % 1'000'000;
    if (q % pr == 0)
      ++q;
    auto e = hallpi::mult_order(q, pr);
    r.check(e == brute::naive_order(q, pr),
            "e(" + std::to_string(q) + "," + std::to_string(pr) + ") wrong");
    r.check((pr - 1) % e == 0, "multiplicative order does not divide r-1");

    // PrimeSet text round trip.
    if (!pi.empty())
      r.check(PrimeSet::parse(pi.to_string()) == pi, "PrimeSet parse/to_string round trip");
  }
  return r;
}

// ------------------------------------------------------------------ permgrp

struct GridGroup {
  std::string descriptor;
  hallpi::PermGroup group;
  hallpi::ElementTable elements;
};

inline std::vector<std::shared_ptr<GridGroup>> small_grid(std::vector<std::string> const &names)
{
  std::vector<std::shared_ptr<GridGroup>> out;
  for (auto const &n : names) {
    auto g = hallpi::build_group(hallpi::parse_descriptor(n));
    auto e = g.enumerate();
    out.push_back(std::make_shared<GridGroup>(GridGroup{n, std::move(g), std::move(e)}));
  }
  return out;
}

inline SuiteResult permgrp_suite(std::size_t cases = 1000, std::uint64_t seed = 2)
{
  using namespace hallpi;
  SuiteResult r;
  r.name = "permgrp";
  std::mt19937_64 rng(seed);
  auto grid = small_grid({"Sym:4", "Sym:5", "Sym:6", "Alt:5", "Alt:6", "Alt:7", "PSL+:2:7",
                          "PSL+:2:11", "PSL+:2:13"});
  std::map<std::pair<std::size_t, std::uint64_t>, bool> sylow_checked;

  for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
    std::size_t gi = rng() % grid.size();
    auto const &G = *grid[gi];
    auto const gorder = G.group.order();
    std::string where = G.descriptor + " case " + std::to_string(c);

    std::vector<Perm> gens;
    std::size_t k = 1 + rng() % 2;
    for (std::size_t i = 0; i < k; ++i)
      gens.push_back(G.elements.elements[rng() % G.elements.size()]);
    PermGroup H(G.group.degree(), gens);

    // Lagrange, and enumeration size equals the Sims order.
    r.check(gorder % H.order() == 0, "Lagrange fails: " + where);
    r.check(H.enumerate().size() == H.order(), "enumeration size differs from order: " + where);

    // Order invariant under generator order and redundant generators.
    auto rev = gens;
    std::reverse(rev.begin(), rev.end());
    rev.push_back(gens.front() * gens.back());
    r.check(PermGroup(G.group.degree(), rev).order() == H.order(),
            "order depends on generator list: " + where);

    // Conjugation preserves order.
    auto x = G.elements.elements[rng() % G.elements.size()];
    auto Hx = conjugate_subgroup(H, x);
    r.check(Hx.order() == H.order(), "conjugate has a different order: " + where);

    // Normalizer: contains H, divides |G|, and membership matches H^y = H.
    auto N = normalizer_scan(G.elements, H);
    r.check(H.is_subgroup_of(N), "H not inside its normalizer: " + where);
    r.check(gorder % N.order() == 0, "normalizer order does not divide |G|: " + where);
    for (int s = 0; s < 5; ++s) {
      auto y = G.elements.elements[rng() % G.elements.size()];
      bool fixes = conjugate_subgroup(H, y).is_subgroup_of(H);
      r.check(N.contains(y) == fixes, "normalizer membership disagrees with H^y = H: " + where);
    }

    // Derived series strictly decreases and each term divides the previous.
    auto ds = derived_series(H);
    for (std::size_t i = 1; i < ds.terms.size(); ++i) {
      r.check(ds.terms[i].order() < ds.terms[i - 1].order(), "derived series not decreasing: " + where);
      r.check(ds.terms[i - 1].order() % ds.terms[i].order() == 0, "derived term order: " + where);
      r.check(ds.terms[i].is_subgroup_of(ds.terms[i - 1]), "derived term not a subgroup: " + where);
    }

    // Sylow's third theorem, once per (group, prime).
    auto primes = prime_divisors(gorder);
    auto rp = primes.elements()[rng() % primes.size()];
    if (!sylow_checked[{gi, rp}]) {
      sylow_checked[{gi, rp}] = true;
      auto P = sylow(G.group, G.elements, rp);
      auto conj = sylow_conjugates(G.group, P);
      auto NP = normalizer_scan(G.elements, P);
      r.check(conj.size() % rp == 1 % rp, "Sylow count not 1 mod r: " + where);
      r.check(BigInt(conj.size()) * NP.order() == gorder, "conjugates * |N| != |G|: " + where);
    }
  }
  return r;
}

// ------------------------------------------------------------------ constructions

inline std::vector<std::string> construction_grid()
{
  std::vector<std::string> names;
  for (int n = 1; n <= 10; ++n)
    names.push_back("Sym:" + std::to_string(n));
  for (int n = 3; n <= 10; ++n)
    names.push_back("Alt:" + std::to_string(n));
  for (std::uint64_t q = 5; q <= 61; ++q) {
    if (brute::trial_is_prime(q))
      names.push_back("PSL+:2:" + std::to_string(q));
  }
  return names;
}

inline SuiteResult constructions_suite(std::size_t cases = 1000, std::uint64_t seed = 3)
{
  using namespace hallpi;
  SuiteResult r;
  r.name = "constructions";
  for (auto const &name : construction_grid()) {
    auto d = parse_descriptor(name);
    auto g = build_group(d);
    r.check(g.order() == group_order(d).order.value(), "catalog order differs for " + name);
    if (d.family == Family::PSL) {
      // 2-transitive on q+1 points, point stabilizer the Borel subgroup.
      auto orbits = g.orbit_sizes();
      r.check(orbits[0] == d.q + 1 && orbits[1] == d.q, "PSL2 action not 2-transitive: " + name);
      r.check(g.order() / (d.q + 1) == BigInt(d.q) * (d.q - 1) / 2, "point stabilizer order: " + name);
    }
  }

  std::mt19937_64 rng(seed);
  auto grid = small_grid({"Alt:5", "Sym:5", "Alt:6", "PSL+:2:7", "PSL+:2:11", "PSL+:2:13", "PSL+:2:17"});
  std::map<std::pair<std::size_t, std::uint64_t>, std::pair<PermGroup, std::set<std::vector<Perm>>>> orbits;
  for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
    std::size_t gi = rng() % grid.size();
    auto const &G = *grid[gi];
    std::string where = G.descriptor + " case " + std::to_string(c);
    auto x = random_element(G.group, rng);
    r.check(G.group.contains(x), "random word not a member: " + where);
    r.check(G.elements.contains(x), "random word not in the element table: " + where);

    auto primes = prime_divisors(G.group.order());
    auto rp = primes.elements()[rng() % primes.size()];
    auto key = std::make_pair(gi, rp);
    if (!orbits.count(key)) {
      auto P = sylow(G.group, G.elements, rp);
      std::set<std::vector<Perm>> keys;
      for (auto const &k : sylow_conjugates_keyed(G.group, P))
        keys.insert(k.key);
      orbits.emplace(key, std::make_pair(P, keys));
    }
    auto const &[P, keys] = orbits.at(key);
    r.check(P.order() == pi_part(G.group.order(), PrimeSet{rp}), "Sylow order wrong: " + where);
    auto Px = conjugate_subgroup(P, x);
    r.check(Px.order() == P.order(), "Sylow conjugate order: " + where);
    r.check(keys.count(Px.canonical_key()) == 1, "conjugate missing from the Sylow orbit: " + where);
  }
  return r;
}

// ------------------------------------------------------------------ oracle

struct LatticeFacts {
  std::set<std::size_t> orders;
  std::set<std::size_t> solvable_orders;
};

inline LatticeFacts lattice_facts(hallpi::PermGroup const &g)
{
  brute::TableGroup t(g.generators());
  LatticeFacts f;
  for (auto const &s : t.all_subgroups()) {
    auto n = brute::TableGroup::size(s);
    f.orders.insert(n);
    if (!f.solvable_orders.count(n) && t.solvable(s))
      f.solvable_orders.insert(n);
  }
  return f;
}

inline SuiteResult oracle_suite(std::size_t cases = 1000, std::uint64_t seed = 4)
{
  using namespace hallpi;
  SuiteResult r;
  r.name = "oracle";
  std::mt19937_64 rng(seed);
  std::vector<std::string> names{"Sym:4", "Alt:5", "Sym:5", "Alt:6", "PSL+:2:7", "PSL+:2:11",
                                 "PSL+:2:13", "Alt:7", "Sym:7", "PSL+:2:23"};
  std::vector<std::unique_ptr<HallOracle>> oracles;
  std::vector<std::optional<LatticeFacts>> lattices;
  for (auto const &n : names) {
    oracles.push_back(std::make_unique<HallOracle>(build_group(parse_descriptor(n))));
    auto order = oracles.back()->group().order();
    lattices.push_back(order <= 660 ? std::optional(lattice_facts(oracles.back()->group()))
                                    : std::nullopt);
  }

  for (std::size_t c = 0; c < cases; ++c, ++r.cases) {
    std::size_t gi = rng() % names.size();
    auto &O = *oracles[gi];
    auto const &G = O.group();
    auto sigma = random_subset(O.spectrum(), rng, 1);
    std::string where = names[gi] + " pi={" + sigma.to_string() + "} case " + std::to_string(c);
    bool want_solvable = rng() % 2;
    SearchOptions opts;
    opts.require_solvable = want_solvable;
    auto cert = O.search(sigma, opts);
    for (auto const &v : certificate_violations(G, cert))
      r.check(false, v + ": " + where);
    if (cert.found() && sigma.size() == 2)
      r.check(cert.solvable, "two-prime witness not solvable: " + where);
    if (want_solvable && cert.found())
      r.check(cert.solvable, "require_solvable returned a nonsolvable witness: " + where);

    if (lattices[gi]) {
      auto m = static_cast<std::size_t>(cert.target_order);
      bool truth = want_solvable ? lattices[gi]->solvable_orders.count(m) > 0
                                 : lattices[gi]->orders.count(m) > 0;
      r.check(cert.found() == truth, "oracle disagrees with the subgroup lattice: " + where);
    }

    // Exhausted must survive a different fixed Sylow subgroup.
    if (!cert.found() && sigma.size() >= 2 && cert.tuple_space > 0) {
      for (auto p : sigma) {
        if (p == cert.fixed_prime)
          continue;
        auto o2 = opts;
        o2.fixed_prime = p;
        auto again = O.search(sigma, o2);
        r.check(!again.found(), "Exhausted not reproduced with fixed prime " + std::to_string(p) +
                                  ": " + where);
        break;
      }
    }
  }
  return r;
}

} // namespace props
