#pragma once

// Permutation realizations of Sym_n, Alt_n (natural action) and PSL_2(q) for
// prime q on the projective line, plus Sylow subgroups inside them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hallpi/arith.hpp"
#include "hallpi/catalog.hpp"
#include "hallpi/error.hpp"
#include "hallpi/perm.hpp"
#include "hallpi/perm_group.hpp"

namespace hallpi {

/// Point of the projective line over F_q: infinity or a residue.
struct ProjectivePoint {
  bool infinite = false;
  std::uint64_t residue = 0;

  /// Index in the fixed ordering [inf, 0, 1, ..., q-1].
  std::size_t index() const { return infinite ? 0 : residue + 1; }

  static ProjectivePoint from_index(std::size_t i)
  {
    if (i == 0)
      return {true, 0};
    return {false, i - 1};
  }
};

inline bool is_constructible(GroupDescriptor const &d)
{
  switch (d.family) {
  case Family::Sym:
    return d.n >= 1 && d.n <= 10;
  case Family::Alt:
    return d.n >= 3 && d.n <= 10;
  case Family::PSL:
    return d.n == 2 && d.eta == Sign::Plus && d.field_exp == 1 && d.q >= 5 && d.q <= 61;
  default:
    return false;
  }
}

namespace detail {

inline Perm cycle_perm(std::size_t degree, std::vector<Perm::Point> const &cycle)
{
  std::vector<Perm::Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i)
    img[i] = static_cast<Perm::Point>(i);
  for (std::size_t k = 0; k < cycle.size(); ++k)
    img[cycle[k]] = cycle[(k + 1) % cycle.size()];
  return Perm(std::move(img));
}

/// x -> x+1 and x -> -1/x on [inf, 0, ..., q-1].
inline std::vector<Perm> psl2_generators(std::uint64_t q)
{
  std::size_t const deg = q + 1;
  std::vector<Perm::Point> shift(deg), invert(deg);
  shift[0] = 0;
  invert[0] = 1;
  invert[1] = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    shift[x + 1] = static_cast<Perm::Point>((x + 1) % q + 1);
    if (x != 0) {
      auto inv = powmod(x, q - 2, q);
      invert[x + 1] = static_cast<Perm::Point>((q - inv) % q + 1);
    }
  }
  return {Perm(std::move(shift)), Perm(std::move(invert))};
}

} // namespace detail

/// The permutation group of a constructible descriptor.
inline PermGroup build_group(GroupDescriptor const &d, Limits limits = Limits::from_env())
{
  validate(d);
  if (!is_constructible(d))
    throw NotConstructible("no permutation construction for " + render(d) +
                           " (supported: Sym:n, Alt:n with n <= 10, PSL+:2:q with q prime in [5, 61])");
  std::vector<Perm> gens;
  std::size_t degree = 0;
  if (d.family == Family::Sym) {
    degree = d.n;
    if (d.n >= 2) {
      gens.push_back(detail::cycle_perm(degree, {0, 1}));
      std::vector<Perm::Point> all(degree);
      for (std::size_t i = 0; i < degree; ++i)
        all[i] = static_cast<Perm::Point>(i);
      gens.push_back(detail::cycle_perm(degree, all));
    }
  } else if (d.family == Family::Alt) {
    degree = d.n;
    for (std::size_t k = 2; k < degree; ++k)
      gens.push_back(detail::cycle_perm(degree, {0, 1, static_cast<Perm::Point>(k)}));
  } else {
    degree = d.q + 1;
    gens = detail::psl2_generators(d.q);
  }
  PermGroup g(degree, gens, limits);
  if (g.order() != group_order(d).order.value())
    throw InvariantViolation("constructed order " + g.order().str() + " differs from the catalog for " +
                             render(d));
  return g;
}

inline bool is_r_element(Perm const &x, std::uint64_t r)
{
  auto o = x.order();
  while (o % r == 0)
    o /= r;
  return o == 1;
}

/// A Sylow r-subgroup by normalizer ascent over the element table of g.
inline PermGroup sylow(PermGroup const &g, ElementTable const &elements, std::uint64_t r)
{
  if (!is_prime(r))
    throw ConstraintError(std::to_string(r) + " is not prime");
  auto const target = pi_part(g.order(), PrimeSet{r});
  if (target == 1)
    throw ConstraintError(std::to_string(r) + " does not divide the group order");

  Perm const *start = nullptr;
  std::uint64_t best = 1;
  for (auto const &x : elements.elements) {
    if (is_r_element(x, r) && x.order() > best) {
      best = x.order();
      start = &x;
    }
  }
  PermGroup p(g.degree(), {*start}, g.limits());
  while (p.order() < target) {
    bool grown = false;
    for (auto const &x : elements.elements) {
      if (!is_r_element(x, r) || p.contains(x) || !normalizes(x, p))
        continue;
      auto gens = p.generators();
      gens.push_back(x);
      p = PermGroup(g.degree(), gens, g.limits());
      grown = true;
      break;
    }
    if (!grown)
      throw InvariantViolation("Sylow ascent stalled below the full r-part");
  }
  if (p.order() != target)
    throw InvariantViolation("Sylow ascent overshot the r-part");
  return p;
}

inline PermGroup sylow(PermGroup const &g, std::uint64_t r) { return sylow(g, g.enumerate(), r); }

/// A subgroup together with its sorted element list.
struct KeyedSubgroup {
  PermGroup group;
  std::vector<Perm> key;
  Perm conjugator;
};

/// The conjugation orbit of sub under g, deduplicated by element set. The
/// first entry is sub itself; each entry records an x with sub^x = entry.
inline std::vector<KeyedSubgroup> sylow_conjugates_keyed(PermGroup const &g, PermGroup const &sub)
{
  if (!sub.is_subgroup_of(g))
    throw ConstraintError("sylow_conjugates: not a subgroup");
  std::vector<KeyedSubgroup> orbit;
  std::map<std::vector<Perm>, std::size_t> seen;
  orbit.push_back({sub, sub.canonical_key(), Perm(g.degree())});
  seen.emplace(orbit.front().key, 0);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (auto const &y : g.generators()) {
      std::vector<Perm> key;
      key.reserve(orbit[i].key.size());
      for (auto const &e : orbit[i].key)
        key.push_back(e.conjugate_by(y));
      std::sort(key.begin(), key.end());
      if (seen.count(key))
        continue;
      seen.emplace(key, orbit.size());
      auto x = orbit[i].conjugator * y;
      orbit.push_back({conjugate_subgroup(sub, x), std::move(key), std::move(x)});
    }
  }
  return orbit;
}

inline std::vector<PermGroup> sylow_conjugates(PermGroup const &g, PermGroup const &sub)
{
  std::vector<PermGroup> out;
  for (auto &k : sylow_conjugates_keyed(g, sub))
    out.push_back(std::move(k.group));
  return out;
}

} // namespace hallpi
