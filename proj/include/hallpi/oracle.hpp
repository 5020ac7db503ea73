#pragma once

// Ground truth for Hall subgroups of constructed groups. Any pi-Hall
// subgroup H contains a Sylow r-subgroup of G for each r in sigma and is
// generated by them; conjugating H we may assume it contains a fixed Sylow
// subgroup P_1. So H exists iff some tuple (P_1, P_2^{g_2}, ..., P_k^{g_k}) of
// Sylow conjugates generates a subgroup of order |G|_pi. Every partial
// closure lies in H, so a prefix whose closure order does not divide
// |G|_pi cannot extend to a witness and is pruned.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hallpi/arith.hpp"
#include "hallpi/constructions.hpp"
#include "hallpi/error.hpp"
#include "hallpi/perm.hpp"
#include "hallpi/perm_group.hpp"

namespace hallpi {

struct HallCertificate {
  enum class Kind { Found, Exhausted };

  Kind kind = Kind::Exhausted;
  PrimeSet pi;
  BigInt group_order = 1;
  BigInt target_order = 1;
  std::vector<Perm> witness_generators;
  BigInt witness_order = 0;
  bool solvable = false;
  std::uint64_t tuples_examined = 0;
  std::uint64_t pruned = 0;
  std::uint64_t tuple_space = 0;
  std::uint64_t fixed_prime = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> conjugate_counts;
  bool nonsolvable_witness_seen = false;

  bool found() const { return kind == Kind::Found; }
};

inline std::string_view to_string(HallCertificate::Kind k)
{
  return k == HallCertificate::Kind::Found ? "Found" : "Exhausted";
}

struct SearchOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
  std::optional<std::chrono::milliseconds> budget;
  /// Forces the Sylow subgroup kept fixed (must lie in sigma).
  std::optional<std::uint64_t> fixed_prime;
  /// Keep searching past witnesses that are not solvable.
  bool require_solvable = false;
};

/// A constructed group with its element table and cached Sylow orbits.
class HallOracle {
public:
  explicit HallOracle(PermGroup g) : g_(std::move(g)), elements_(g_.enumerate()) {}

  PermGroup const &group() const { return g_; }
  ElementTable const &elements() const { return elements_; }

  PrimeSet spectrum() const { return prime_divisors(g_.order()); }

  std::vector<KeyedSubgroup> const &sylow_orbit(std::uint64_t r)
  {
    std::lock_guard lock(mutex_);
    auto it = orbits_.find(r);
    if (it == orbits_.end())
      it = orbits_.emplace(r, sylow_conjugates_keyed(g_, sylow(g_, elements_, r))).first;
    return it->second;
  }

  HallCertificate search(PrimeSet const &pi, SearchOptions const &opts = {});

private:
  PermGroup g_;
  ElementTable elements_;
  std::map<std::uint64_t, std::vector<KeyedSubgroup>> orbits_;
  std::mutex mutex_;
};

namespace detail {

inline std::uint64_t saturating_product(std::vector<std::uint64_t> const &xs, std::size_t from)
{
  std::uint64_t p = 1;
  for (std::size_t i = from; i < xs.size(); ++i) {
    if (xs[i] != 0 && p > std::numeric_limits<std::uint64_t>::max() / xs[i])
      return std::numeric_limits<std::uint64_t>::max();
    p *= xs[i];
  }
  return p;
}

struct SearchShared {
  std::size_t degree;
  std::uint64_t target;
  bool require_solvable;
  std::vector<Perm> fixed_gens;
  std::vector<std::vector<KeyedSubgroup> const *> levels;
  std::vector<std::uint64_t> counts;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  std::atomic<bool> cancel{false};
  std::atomic<bool> timed_out{false};
  std::atomic<bool> nonsolvable_seen{false};
  std::mutex mutex;
  std::optional<std::vector<Perm>> witness;
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
};

class TupleWalker {
public:
  explicit TupleWalker(SearchShared &s) : s_(s) {}

  void run_task(std::size_t first_index)
  {
    std::vector<Perm> gens = s_.fixed_gens;
    descend(0, first_index, gens);
  }

  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;

private:
  bool stop()
  {
    if (s_.cancel.load(std::memory_order_relaxed))
      return true;
    if (s_.deadline && std::chrono::steady_clock::now() > *s_.deadline) {
      s_.timed_out = true;
      s_.cancel = true;
      return true;
    }
    return false;
  }

  // Returns false when the walk was cancelled.
  bool descend(std::size_t level, std::size_t index, std::vector<Perm> &gens)
  {
    if (stop())
      return false;
    auto const &sub = (*s_.levels[level])[index].group;
    std::size_t const base = gens.size();
    gens.insert(gens.end(), sub.generators().begin(), sub.generators().end());
    bool const last = level + 1 == s_.levels.size();
    auto order = closure_order_capped(s_.degree, gens, s_.target);
    bool keep = order && s_.target % *order == 0;
    bool ok = true;
    if (!keep && last) {
      ++examined;
    } else if (!keep) {
      pruned += saturating_product(s_.counts, level + 1);
    } else if (last) {
      ++examined;
      if (*order == s_.target)
        accept(gens);
    } else {
      for (std::size_t i = 0; i < s_.levels[level + 1]->size(); ++i) {
        if (!descend(level + 1, i, gens)) {
          ok = false;
          break;
        }
      }
    }
    gens.resize(base);
    return ok && !s_.cancel.load(std::memory_order_relaxed);
  }

  void accept(std::vector<Perm> const &gens)
  {
    if (s_.require_solvable) {
      PermGroup h(s_.degree, gens);
      if (!is_solvable(h)) {
        s_.nonsolvable_seen = true;
        return;
      }
    }
    std::lock_guard lock(s_.mutex);
    if (!s_.witness)
      s_.witness = gens;
    s_.cancel = true;
  }

  SearchShared &s_;
};

} // namespace detail

inline HallCertificate HallOracle::search(PrimeSet const &pi, SearchOptions const &opts)
{
  HallCertificate cert;
  PrimeSet const sigma = pi.intersect(spectrum());
  if (sigma.empty())
    throw ConstraintError("pi contains no prime divisor of the group order");
  cert.pi = sigma;
  cert.group_order = g_.order();
  cert.target_order = pi_part(g_.order(), sigma);
  auto const target = static_cast<std::uint64_t>(cert.target_order);

  auto finish_found = [&](std::vector<Perm> gens) {
    PermGroup h(g_.degree(), gens, g_.limits());
    cert.kind = HallCertificate::Kind::Found;
    cert.witness_generators = h.generators();
    cert.witness_order = h.order();
    cert.solvable = is_solvable(h);
  };

  // The whole group is its own unique Hall subgroup.
  if (cert.target_order == cert.group_order) {
    finish_found(g_.generators());
    cert.nonsolvable_witness_seen = !cert.solvable;
    if (opts.require_solvable && !cert.solvable) {
      cert.kind = HallCertificate::Kind::Exhausted;
      cert.witness_generators.clear();
      cert.witness_order = 0;
    }
    return cert;
  }

  std::vector<std::pair<std::uint64_t, std::vector<KeyedSubgroup> const *>> orbits;
  for (auto r : sigma) {
    orbits.emplace_back(r, &sylow_orbit(r));
    cert.conjugate_counts.emplace_back(r, orbits.back().second->size());
  }

  std::uint64_t fixed = 0;
  if (opts.fixed_prime) {
    if (!sigma.contains(*opts.fixed_prime))
      throw ConstraintError("fixed prime " + std::to_string(*opts.fixed_prime) +
                            " is not in pi n pi(G)");
    fixed = *opts.fixed_prime;
  } else {
    std::size_t best = 0;
    for (auto const &[r, orb] : orbits) {
      if (orb->size() > best) {
        best = orb->size();
        fixed = r;
      }
    }
  }
  cert.fixed_prime = fixed;

  detail::SearchShared shared;
  shared.degree = g_.degree();
  shared.target = target;
  shared.require_solvable = opts.require_solvable;
  for (auto const &[r, orb] : orbits) {
    if (r == fixed) {
      shared.fixed_gens = orb->front().group.generators();
    } else {
      shared.levels.push_back(orb);
      shared.counts.push_back(orb->size());
    }
  }
  cert.tuple_space = detail::saturating_product(shared.counts, 0);
  if (opts.budget)
    shared.deadline = std::chrono::steady_clock::now() + *opts.budget;

  if (shared.levels.empty()) {
    // A single prime: the fixed Sylow subgroup is the Hall subgroup.
    cert.tuples_examined = 1;
    finish_found(shared.fixed_gens);
    return cert;
  }

  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : opts.threads;
  std::size_t const tasks = shared.levels.front()->size();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    detail::TupleWalker walker(shared);
    while (!shared.cancel) {
      std::size_t i = next++;
      if (i >= tasks)
        break;
      walker.run_task(i);
    }
    std::lock_guard lock(shared.mutex);
    shared.examined += walker.examined;
    shared.pruned += walker.pruned;
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }

  cert.tuples_examined = shared.examined;
  cert.pruned = shared.pruned;
  cert.nonsolvable_witness_seen = shared.nonsolvable_seen;
  if (shared.witness) {
    finish_found(*shared.witness);
    return cert;
  }
  if (shared.timed_out)
    throw Inconclusive("search budget exhausted after " + std::to_string(cert.tuples_examined) +
                       " examined and " + std::to_string(cert.pruned) + " pruned of " +
                       std::to_string(cert.tuple_space) + " tuples");
  if (cert.tuples_examined + cert.pruned != cert.tuple_space)
    throw InvariantViolation("tuple accounting mismatch in exhaustive search");
  cert.kind = HallCertificate::Kind::Exhausted;
  return cert;
}

inline HallCertificate hall_search(PermGroup const &g, PrimeSet const &pi,
                                   SearchOptions const &opts = {})
{
  HallOracle oracle(g);
  return oracle.search(pi, opts);
}

struct SolvableHallResult {
  bool exists = false;
  HallCertificate certificate;
};

inline SolvableHallResult solvable_hall_exists(HallOracle &oracle, PrimeSet const &pi,
                                               SearchOptions opts = {})
{
  opts.require_solvable = true;
  SolvableHallResult r;
  r.certificate = oracle.search(pi, opts);
  r.exists = r.certificate.found() && r.certificate.solvable;
  return r;
}

inline SolvableHallResult solvable_hall_exists(PermGroup const &g, PrimeSet const &pi,
                                               SearchOptions opts = {})
{
  HallOracle oracle(g);
  return solvable_hall_exists(oracle, pi, opts);
}

/// Checks the defining properties of a certificate against g. Returns the
/// list of violated properties (empty when sound).
inline std::vector<std::string> certificate_violations(PermGroup const &g,
                                                       HallCertificate const &c)
{
  std::vector<std::string> bad;
  if (c.target_order != pi_part(g.order(), c.pi))
    bad.push_back("target order is not |G|_pi");
  if (!c.found()) {
    if (!c.witness_generators.empty())
      bad.push_back("exhausted certificate carries a witness");
    if (c.tuples_examined + c.pruned != c.tuple_space && c.tuple_space != 0)
      bad.push_back("tuple accounting does not cover the tuple space");
    return bad;
  }
  PermGroup h(g.degree(), c.witness_generators, g.limits());
  if (!h.is_subgroup_of(g))
    bad.push_back("witness is not a subgroup");
  if (h.order() != c.witness_order)
    bad.push_back("witness order differs from its closure");
  if (c.witness_order != c.target_order)
    bad.push_back("witness order differs from the target");
  if (pi_part(h.order(), c.pi) != h.order())
    bad.push_back("witness order is not a pi-number");
  BigInt index = g.order() / h.order();
  if (g.order() % h.order() != 0 || pi_part(index, c.pi) != 1)
    bad.push_back("index is not a pi'-number");
  for (auto r : c.pi) {
    if (pi_part(h.order(), PrimeSet{r}) != pi_part(g.order(), PrimeSet{r}))
      bad.push_back("Sylow " + std::to_string(r) + "-subgroup of the witness is not Sylow in G");
  }
  if (is_solvable(h) != c.solvable)
    bad.push_back("solvable flag disagrees with the derived series");
  if (c.pi.size() == 2 && !c.solvable)
    bad.push_back("two-prime witness is not solvable");
  return bad;
}

struct PairOutcome {
  std::uint64_t p = 0, q = 0;
  HallCertificate certificate;
};

struct Theorem1Report {
  PrimeSet sigma;
  bool solvable_hall = false;
  HallCertificate solvable_certificate;
  std::vector<PairOutcome> pairs;
  bool all_pairs = false;
  bool holds = false;
};

/// Solvable pi-Hall subgroup exists iff every pair of sigma has a Hall
/// subgroup. `pair_cache` may be shared across calls on the same oracle.
inline Theorem1Report theorem1_check(HallOracle &oracle, PrimeSet const &pi,
                                     SearchOptions const &opts = {},
                                     std::map<PrimeSet, HallCertificate> *pair_cache = nullptr)
{
  Theorem1Report rep;
  rep.sigma = pi.intersect(oracle.spectrum());
  if (rep.sigma.size() < 2)
    throw ConstraintError("theorem1_check needs at least two primes of pi(G) in pi");
  auto s = solvable_hall_exists(oracle, rep.sigma, opts);
  rep.solvable_hall = s.exists;
  rep.solvable_certificate = s.certificate;
  rep.all_pairs = true;
  for (auto const &pr : rep.sigma.subsets(2, 2)) {
    PairOutcome po;
    po.p = pr.elements()[0];
    po.q = pr.elements()[1];
    if (pair_cache && pair_cache->count(pr)) {
      po.certificate = pair_cache->at(pr);
    } else {
      po.certificate = oracle.search(pr, opts);
      if (pair_cache)
        pair_cache->emplace(pr, po.certificate);
    }
    rep.all_pairs = rep.all_pairs && po.certificate.found();
    rep.pairs.push_back(std::move(po));
  }
  rep.holds = rep.solvable_hall == rep.all_pairs;
  return rep;
}

inline Theorem1Report theorem1_check(PermGroup const &g, PrimeSet const &pi,
                                     SearchOptions const &opts = {})
{
  HallOracle oracle(g);
  return theorem1_check(oracle, pi, opts);
}

/// True iff h1^x = h2 for some x in G.
inline bool conjugacy_scan(ElementTable const &g_elements, PermGroup const &h1,
                           PermGroup const &h2)
{
  if (h1.order() != h2.order())
    throw ConstraintError("conjugacy_scan needs subgroups of equal order");
  for (auto const &x : g_elements.elements) {
    bool all = true;
    for (auto const &s : h1.generators()) {
      if (!h2.contains(s.conjugate_by(x))) {
        all = false;
        break;
      }
    }
    if (all)
      return true;
  }
  return false;
}

inline bool conjugacy_scan(PermGroup const &g, PermGroup const &h1, PermGroup const &h2)
{
  return conjugacy_scan(g.enumerate(), h1, h2);
}

} // namespace hallpi
