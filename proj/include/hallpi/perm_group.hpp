#pragma once

// Permutation groups through a Sims table: for every level k the table stores
// coset representatives sigma_{k,j} of G_{k+1} in G_k (G_k the pointwise
// stabilizer of 0..k-1) mapping k to j. The order is the product of the
// orbit sizes. Construction follows Knuth's deterministic procedures A, B
// and P, so no verification pass is needed.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hallpi/arith.hpp"
#include "hallpi/error.hpp"
#include "hallpi/perm.hpp"

namespace hallpi {

struct Limits {
  std::size_t max_degree = 128;
  std::uint64_t max_enum = 200000;

  /// Defaults, with HALL_MAX_ENUM overriding the enumeration cap.
  static Limits from_env()
  {
    Limits l;
    if (char const *env = std::getenv("HALL_MAX_ENUM")) {
      try {
        std::size_t used = 0;
        auto v = std::stoull(env, &used);
        if (used != std::string(env).size() || v == 0)
          throw ParseError("");
        l.max_enum = v;
      } catch (std::exception const &) {
        throw ParseError(std::string("HALL_MAX_ENUM is not a positive integer: ") + env);
      }
    }
    return l;
  }
};

namespace detail {

struct CapAbort {};

class SimsTable {
public:
  explicit SimsTable(std::size_t degree,
                     std::uint64_t cap = std::numeric_limits<std::uint64_t>::max())
    : n_(degree), cap_(cap), sigma_(degree), orbit_(degree), gens_(degree)
  {
    for (std::size_t k = 0; k < n_; ++k) {
      sigma_[k].resize(n_);
      sigma_[k][k] = Perm(n_);
      orbit_[k].push_back(static_cast<Perm::Point>(k));
    }
  }

  std::size_t degree() const { return n_; }

  /// Adds g to the group; returns false when g was already a member.
  bool add(Perm const &g)
  {
    if (g.degree() != n_)
      throw ConstraintError("degree mismatch: generator of degree " + std::to_string(g.degree()) +
                            " for a group of degree " + std::to_string(n_));
    if (sift(0, g))
      return false;
    proc_a(0, g);
    return true;
  }

  bool contains(Perm const &g) const
  {
    if (g.degree() != n_)
      throw ConstraintError("degree mismatch in membership test");
    return sift(0, g);
  }

  BigInt order() const
  {
    BigInt o = 1;
    for (auto const &orb : orbit_)
      o *= orb.size();
    return o;
  }

  std::vector<std::size_t> orbit_sizes() const
  {
    std::vector<std::size_t> s;
    for (auto const &orb : orbit_)
      s.push_back(orb.size());
    return s;
  }

  std::vector<Perm> transversal(std::size_t k) const
  {
    std::vector<Perm> t;
    for (auto j : orbit_[k])
      t.push_back(*sigma_[k][j]);
    return t;
  }

private:
  bool sift(std::size_t k, Perm g) const
  {
    for (; k < n_; ++k) {
      auto j = g[k];
      if (!sigma_[k][j])
        return false;
      if (j != k)
        g = g * sigma_[k][j]->inverse();
    }
    return g.is_identity();
  }

  void proc_a(std::size_t k, Perm const &g)
  {
    if (k == n_) {
      if (!g.is_identity())
        throw InvariantViolation("Sims table: nontrivial element fixing every point");
      return;
    }
    if (sift(k, g))
      return;
    gens_[k].push_back(g);
    std::vector<Perm::Point> snapshot = orbit_[k];
    for (auto j : snapshot)
      proc_b(k, *sigma_[k][j] * g);
  }

  void proc_b(std::size_t k, Perm const &g)
  {
    auto j = g[k];
    if (sigma_[k][j]) {
      proc_a(k + 1, g * sigma_[k][j]->inverse());
      return;
    }
    sigma_[k][j] = g;
    orbit_[k].push_back(j);
    check_cap();
    for (std::size_t i = 0; i < gens_[k].size(); ++i)
      proc_b(k, g * gens_[k][i]);
  }

  void check_cap() const
  {
    if (cap_ == std::numeric_limits<std::uint64_t>::max())
      return;
    std::uint64_t prod = 1;
    for (auto const &orb : orbit_) {
      if (orb.size() > cap_ / prod)
        throw CapAbort{};
      prod *= orb.size();
    }
  }

  std::size_t n_;
  std::uint64_t cap_;
  std::vector<std::vector<std::optional<Perm>>> sigma_;
  std::vector<std::vector<Perm::Point>> orbit_;
  std::vector<std::vector<Perm>> gens_;
};

} // namespace detail

/// Every element of a group, with hash lookup.
struct ElementTable {
  std::vector<Perm> elements;
  std::unordered_set<Perm> index;

  std::size_t size() const { return elements.size(); }
  bool contains(Perm const &x) const { return index.count(x) != 0; }
};

class PermGroup {
public:
  PermGroup(std::size_t degree, std::vector<Perm> const &generators,
            Limits limits = Limits::from_env())
    : degree_(degree), limits_(limits)
  {
    if (degree == 0)
      throw ConstraintError("degree must be positive");
    if (degree > limits.max_degree)
      throw CapExceeded("degree " + std::to_string(degree) + " exceeds the cap " +
                        std::to_string(limits.max_degree));
    auto table = std::make_shared<detail::SimsTable>(degree);
    for (auto const &g : generators) {
      if (table->add(g))
        generators_.push_back(g);
    }
    table_ = std::move(table);
  }

  static PermGroup trivial(std::size_t degree, Limits limits = Limits::from_env())
  {
    return PermGroup(degree, {}, limits);
  }

  std::size_t degree() const { return degree_; }
  std::vector<Perm> const &generators() const { return generators_; }
  Limits const &limits() const { return limits_; }

  BigInt order() const { return table_->order(); }

  std::uint64_t order_u64() const
  {
    auto o = order();
    if (o > std::numeric_limits<std::uint64_t>::max())
      throw CapExceeded("group order exceeds 64 bits");
    return static_cast<std::uint64_t>(o);
  }

  bool is_trivial() const { return generators_.empty(); }

  bool contains(Perm const &x) const { return table_->contains(x); }

  bool is_subgroup_of(PermGroup const &g) const
  {
    for (auto const &x : generators_) {
      if (!g.contains(x))
        return false;
    }
    return true;
  }

  std::vector<std::size_t> orbit_sizes() const { return table_->orbit_sizes(); }

  ElementTable enumerate() const
  {
    if (order() > limits_.max_enum)
      throw CapExceeded("group of order " + order().str() + " exceeds the enumeration cap " +
                        std::to_string(limits_.max_enum));
    ElementTable t;
    t.elements.push_back(Perm(degree_));
    for (std::size_t k = degree_; k-- > 0;) {
      auto trans = table_->transversal(k);
      if (trans.size() == 1)
        continue;
      std::vector<Perm> next;
      next.reserve(t.elements.size() * trans.size());
      for (auto const &x : t.elements) {
        for (auto const &s : trans)
          next.push_back(x * s);
      }
      t.elements = std::move(next);
    }
    t.index.reserve(t.elements.size());
    t.index.insert(t.elements.begin(), t.elements.end());
    if (t.index.size() != t.elements.size())
      throw InvariantViolation("element enumeration produced duplicates");
    return t;
  }

  /// Sorted element list; identifies a subgroup exactly.
  std::vector<Perm> canonical_key() const
  {
    auto e = enumerate().elements;
    std::sort(e.begin(), e.end());
    return e;
  }

private:
  std::size_t degree_;
  Limits limits_;
  std::vector<Perm> generators_;
  std::shared_ptr<detail::SimsTable const> table_;
};

inline PermGroup closure(std::vector<Perm> const &gens, Limits limits = Limits::from_env())
{
  if (gens.empty())
    throw ConstraintError("closure needs at least one generator");
  return PermGroup(gens.front().degree(), gens, limits);
}

/// Order of <gens> if it is at most cap, otherwise nullopt. Construction stops
/// as soon as the partial orbit product exceeds cap (it only grows).
inline std::optional<std::uint64_t> closure_order_capped(std::size_t degree,
                                                         std::vector<Perm> const &gens,
                                                         std::uint64_t cap)
{
  detail::SimsTable table(degree, cap);
  try {
    for (auto const &g : gens)
      table.add(g);
  } catch (detail::CapAbort const &) {
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(table.order());
}

inline PermGroup conjugate_subgroup(PermGroup const &sub, Perm const &x)
{
  if (x.degree() != sub.degree())
    throw ConstraintError("degree mismatch in conjugation");
  std::vector<Perm> gens;
  for (auto const &s : sub.generators())
    gens.push_back(s.conjugate_by(x));
  return PermGroup(sub.degree(), gens, sub.limits());
}

inline bool normalizes(Perm const &x, PermGroup const &sub)
{
  for (auto const &s : sub.generators()) {
    if (!sub.contains(s.conjugate_by(x)))
      return false;
  }
  return true;
}

/// N_G(sub) by a scan over the elements of G.
inline PermGroup normalizer_scan(ElementTable const &g_elements, PermGroup const &sub)
{
  detail::SimsTable table(sub.degree());
  std::vector<Perm> gens;
  for (auto const &x : g_elements.elements) {
    if (table.contains(x) || !normalizes(x, sub))
      continue;
    table.add(x);
    gens.push_back(x);
  }
  return PermGroup(sub.degree(), gens, sub.limits());
}

inline PermGroup normalizer_scan(PermGroup const &g, PermGroup const &sub)
{
  if (!sub.is_subgroup_of(g))
    throw ConstraintError("normalizer_scan: sub is not a subgroup of g");
  return normalizer_scan(g.enumerate(), sub);
}

/// Normal closure of gens in g.
inline PermGroup normal_closure(PermGroup const &g, std::vector<Perm> const &gens)
{
  detail::SimsTable table(g.degree());
  std::vector<Perm> kept, queue;
  for (auto const &x : gens) {
    if (table.add(x)) {
      kept.push_back(x);
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    auto x = queue.back();
    queue.pop_back();
    for (auto const &y : g.generators()) {
      auto c = x.conjugate_by(y);
      if (table.add(c)) {
        kept.push_back(c);
        queue.push_back(c);
      }
    }
  }
  return PermGroup(g.degree(), kept, g.limits());
}

/// [G, G]: the normal closure of the commutators of the generators.
inline PermGroup derived_subgroup(PermGroup const &g)
{
  std::vector<Perm> comms;
  auto const &gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      comms.push_back(commutator(gens[i], gens[j]));
  }
  return normal_closure(g, comms);
}

struct DerivedSeries {
  std::vector<PermGroup> terms;
  bool solvable = false;
};

/// G = G^(0) > G^(1) > ... until the order stops dropping.
inline DerivedSeries derived_series(PermGroup const &g)
{
  DerivedSeries ds;
  ds.terms.push_back(g);
  while (!ds.terms.back().is_trivial()) {
    auto next = derived_subgroup(ds.terms.back());
    if (next.order() == ds.terms.back().order())
      break;
    ds.terms.push_back(std::move(next));
  }
  ds.solvable = ds.terms.back().is_trivial();
  return ds;
}

inline bool is_solvable(PermGroup const &g) { return derived_series(g).solvable; }

} // namespace hallpi
