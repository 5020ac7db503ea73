#pragma once

// Arithmetic criteria for solvable pi-Hall subgroups of finite simple groups,
// organised as a closed rule catalog. Every decision records which rules
// fired and with which values, so a verdict can be audited line by line.
//
// Notation used in bindings: sigma = pi n pi(S), tau = sigma \ {2,3},
// p the defining characteristic, eps the sign with q = eps (mod 4),
// e(q,r) the multiplicative order of q modulo r.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hallpi/arith.hpp"
#include "hallpi/catalog.hpp"
#include "hallpi/error.hpp"

namespace hallpi {

enum class Decision { Yes, No, Unknown };

enum class SolvableNote { Solvable, SolvableByOddOrder, SolvableByTwoPrimeOrder, NotApplicable };

enum class ConjugacyNote { ConjugateClaimed, AutInvariantClaimed, NoClaim };

enum class RuleId {
  SylowClosure,
  WholeGroup,
  NotSimple,
  SymmetricAlternating,
  AlternatingTwoThree,
  SporadicTriple,
  SporadicPair,
  BorelContainment,
  OddClassicalPairwise,
  OddExceptional,
  OddSuzukiRee,
  TwoWithoutThree,
  ThreeAndS,
  TwoThreePSL2,
  TwoThreePSLn,
  TwoThreePSp,
  TwoThreePOmega,
  TwoThreeExceptional,
};

struct RuleSpec {
  RuleId id;
  std::string_view key;
  std::string_view citation;
  std::vector<std::string_view> symbols;
};

/// The closed rule catalog. Citations point at the published results each
/// rule transcribes.
inline std::vector<RuleSpec> const &rule_catalog()
{
  static std::vector<RuleSpec> const catalog{
    {RuleId::SylowClosure, "R0-sylow",
     "Sylow's theorem: |sigma| <= 1 gives a Sylow subgroup of prime-power order",
     {"sigma"}},
    {RuleId::WholeGroup, "R-full",
     "sigma = pi(S): the only pi-Hall subgroup is S itself, nonsolvable when S is simple",
     {"sigma", "pi(S)"}},
    {RuleId::NotSimple, "R-not-simple",
     "criteria apply to simple groups of Lie type only",
     {"group"}},
    {RuleId::SymmetricAlternating, "R1-sym-alt",
     "P. Hall, Theorems like Sylow's, Proc. London Math. Soc. 6 (1956), Theorem A4",
     {"n", "sigma", "family"}},
    {RuleId::AlternatingTwoThree, "R1-alt-23",
     "alternating groups with sigma = {2,3}: no tabulated criterion",
     {"n", "sigma"}},
    {RuleId::SporadicTriple, "R2-sporadic",
     "sporadic groups: all {p,q}-Hall subgroups for |sigma| >= 3 only in J1 with {2,3,7} "
     "(J1 contains 2^3:7:3 of order 168)",
     {"group", "sigma"}},
    {RuleId::SporadicPair, "R2-sporadic-pair",
     "sporadic {p,q}-Hall subgroups are not tabulated",
     {"group", "sigma"}},
    {RuleId::BorelContainment, "R3-borel",
     "D. O. Revin, Sib. Adv. Math. 9 (1999), Theorem 3.3: a pi-Hall subgroup with p in pi lies "
     "in a Borel subgroup or is parabolic",
     {"sigma", "p", "|S|_pi", "|B|_pi"}},
    {RuleId::OddClassicalPairwise, "R4-classical-pairwise",
     "F. Gross, Math. Z. 220 (1995), Theorem 4.9: classical G in E_pi iff in E_{r,s} for all "
     "pairs (2, p not in pi)",
     {"sigma", "pairs"}},
    {RuleId::OddExceptional, "R4-exceptional",
     "E. P. Vdovin, D. O. Revin, Algebra and Logic 41 (2002), Lemmas 7-13",
     {"sigma", "r", "e(q,r)", "s", "e(q,s)", "(q-1)_pi", "(q+1)_pi", "condition"}},
    {RuleId::OddSuzukiRee, "R4-suzuki-ree",
     "E. P. Vdovin, D. O. Revin, Algebra and Logic 41 (2002), Lemma 14",
     {"sigma", "set"}},
    {RuleId::TwoWithoutThree, "R5-two-without-three",
     "D. O. Revin, E. P. Vdovin, Contemp. Math. 402 (2006), Theorem 5.2",
     {"sigma", "eps", "q-eps", "t", "n", "m", "condition"}},
    {RuleId::ThreeAndS, "P-three-s",
     "F. Gross, Math. Z. 220 (1995), Theorems 4.1, 4.3, 4.5",
     {"s", "eps", "q-eps", "e(q,3)", "e(q,s)", "n", "(q^2-1)_3", "case"}},
    {RuleId::TwoThreePSL2, "R6-psl2",
     "D. O. Revin, E. P. Vdovin, J. Algebra 324 (2010), Lemma 3.11",
     {"sigma", "tau", "eps", "q-eps"}},
    {RuleId::TwoThreePSLn, "R6-psln",
     "D. O. Revin, E. P. Vdovin, J. Algebra 324 (2010), Lemma 4.3",
     {"sigma", "tau", "eta", "eps", "n", "m", "condition"}},
    {RuleId::TwoThreePSp, "R6-psp",
     "D. O. Revin, E. P. Vdovin, J. Algebra 324 (2010), Lemma 4.4",
     {"sigma", "tau", "eps", "n", "condition"}},
    {RuleId::TwoThreePOmega, "R6-pomega",
     "D. O. Revin, E. P. Vdovin, J. Algebra 324 (2010), Lemma 6.7",
     {"sigma", "tau", "eps", "eta", "n", "m", "condition"}},
    {RuleId::TwoThreeExceptional, "R6-exceptional",
     "D. O. Revin, E. P. Vdovin, J. Algebra 324 (2010), Lemmas 7.1-7.6",
     {"sigma", "eps", "q-eps", "family"}},
  };
  return catalog;
}

inline RuleSpec const &rule_spec(RuleId id)
{
  for (auto const &r : rule_catalog()) {
    if (r.id == id)
      return r;
  }
  throw InvariantViolation("rule missing from catalog");
}

struct RuleFiring {
  RuleId rule;
  std::string_view key;
  std::string_view citation;
  std::map<std::string, std::string> bindings;
  Decision outcome = Decision::Unknown;
  std::string detail;
};

struct Verdict {
  Decision decision = Decision::Unknown;
  SolvableNote solvable_note = SolvableNote::NotApplicable;
  ConjugacyNote conjugacy_note = ConjugacyNote::NoClaim;
  std::vector<RuleFiring> trace;
  std::string unknown_reason;

  bool cites(std::string_view key) const
  {
    return std::any_of(trace.begin(), trace.end(),
                       [&](RuleFiring const &f) { return f.key == key; });
  }

  RuleFiring const *firing(std::string_view key) const
  {
    for (auto const &f : trace) {
      if (f.key == key)
        return &f;
    }
    return nullptr;
  }
};

inline std::string_view to_string(Decision d)
{
  switch (d) {
  case Decision::Yes: return "Yes";
  case Decision::No: return "No";
  case Decision::Unknown: return "Unknown";
  }
  return "?";
}

inline std::string_view to_string(SolvableNote s)
{
  switch (s) {
  case SolvableNote::Solvable: return "Solvable";
  case SolvableNote::SolvableByOddOrder: return "SolvableByOddOrder";
  case SolvableNote::SolvableByTwoPrimeOrder: return "SolvableByTwoPrimeOrder";
  case SolvableNote::NotApplicable: return "NotApplicable";
  }
  return "?";
}

inline std::string_view to_string(ConjugacyNote c)
{
  switch (c) {
  case ConjugacyNote::ConjugateClaimed: return "ConjugateClaimed";
  case ConjugacyNote::AutInvariantClaimed: return "AutInvariantClaimed";
  case ConjugacyNote::NoClaim: return "NoClaim";
  }
  return "?";
}

/// Everything the rules read, computed once per (descriptor, pi).
struct CriteriaContext {
  GroupDescriptor descriptor;
  PrimeSet pi;
  PrimeSet spectrum;
  PrimeSet sigma;
  PrimeSet tau;
  std::uint64_t p = 0;
  std::optional<int> eps;
  std::optional<std::uint64_t> t;
  unsigned m = 0;
  Factorization order;
  std::uint64_t order3part = 1;
};

inline CriteriaContext make_context(GroupDescriptor const &d, PrimeSet const &pi)
{
  validate(d);
  CriteriaContext ctx;
  ctx.descriptor = d;
  ctx.pi = pi;
  ctx.order = group_order(d).order;
  ctx.spectrum = ctx.order.primes();
  ctx.sigma = pi.intersect(ctx.spectrum);
  ctx.tau = ctx.sigma.minus(PrimeSet{2, 3});
  ctx.p = d.p;
  if (d.is_lie_type() && d.q % 2 == 1)
    ctx.eps = epsilon(d.q);
  auto odd = ctx.sigma.minus(PrimeSet{2});
  if (!odd.empty())
    ctx.t = odd.min();
  ctx.m = d.half_dimension();
  ctx.order3part = static_cast<std::uint64_t>(
    boost::multiprecision::pow(BigInt(3), ctx.order.exponent_of(3)));
  return ctx;
}

namespace detail {

inline std::string show(BigInt const &v) { return v.str(); }
inline std::string show(std::uint64_t v) { return std::to_string(v); }
inline std::string show(unsigned v) { return std::to_string(v); }
inline std::string show(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }
inline std::string show(PrimeSet const &s) { return "{" + s.to_string() + "}"; }
inline std::string show(bool b) { return b ? "true" : "false"; }
inline std::string show(std::string s) { return s; }
inline std::string show(char const *s) { return s; }

class FiringBuilder {
public:
  explicit FiringBuilder(RuleId id) : spec_(rule_spec(id))
  {
    firing_.rule = id;
    firing_.key = spec_.key;
    firing_.citation = spec_.citation;
  }

  template <typename T>
  FiringBuilder &bind(std::string const &symbol, T const &value)
  {
    if (std::find(spec_.symbols.begin(), spec_.symbols.end(), symbol) == spec_.symbols.end())
      throw InvariantViolation("symbol '" + symbol + "' not declared by rule " +
                               std::string(spec_.key));
    firing_.bindings[symbol] = show(value);
    return *this;
  }

  FiringBuilder &detail(std::string text)
  {
    firing_.detail = std::move(text);
    return *this;
  }

  RuleFiring done(Decision outcome)
  {
    firing_.outcome = outcome;
    return firing_;
  }

private:
  RuleSpec const &spec_;
  RuleFiring firing_;
};

inline Verdict yes(std::vector<RuleFiring> trace, SolvableNote s, ConjugacyNote c)
{
  Verdict v;
  v.decision = Decision::Yes;
  v.solvable_note = s;
  v.conjugacy_note = c;
  v.trace = std::move(trace);
  return v;
}

inline Verdict no(std::vector<RuleFiring> trace)
{
  Verdict v;
  v.decision = Decision::No;
  v.trace = std::move(trace);
  return v;
}

inline Verdict unknown(std::vector<RuleFiring> trace, std::string reason)
{
  Verdict v;
  v.decision = Decision::Unknown;
  v.trace = std::move(trace);
  v.unknown_reason = std::move(reason);
  return v;
}

/// q - sign for sign in {+1,-1}.
inline std::uint64_t q_minus(std::uint64_t q, int sign) { return sign == 1 ? q - 1 : q + 1; }

inline PrimeSet primes_of(std::uint64_t v) { return prime_divisors(v); }

inline BigInt big_pi_part(std::uint64_t v, PrimeSet const &pi) { return pi_part(BigInt(v), pi); }

/// q = v (mod k) for a signed residue v.
inline bool congruent(std::uint64_t q, int v, unsigned k)
{
  auto r = static_cast<long long>(q % k);
  long long w = ((v % static_cast<int>(k)) + static_cast<int>(k)) % static_cast<int>(k);
  return r == w;
}

} // namespace detail

/// Hall (1956), Theorem A4: S_n has a solvable Hall subgroup
/// for the primes of pi dividing n! exactly when at most one such prime
/// occurs, or they are {2,3} with n in {3,4,5,7,8}.
inline Verdict sym_has_pair_hall(unsigned n, PrimeSet const &pi)
{
  PrimeSet const local = pi.intersect(detail::factorial(n).primes());
  auto firing = detail::FiringBuilder(RuleId::SymmetricAlternating)
                  .bind("n", n)
                  .bind("sigma", local)
                  .bind("family", "Sym");
  if (local.size() <= 1)
    return detail::yes({firing.detail("at most one prime divides n!").done(Decision::Yes)},
                       SolvableNote::Solvable, ConjugacyNote::NoClaim);
  if (local == PrimeSet{2, 3} && (n == 3 || n == 4 || n == 5 || n == 7 || n == 8))
    return detail::yes({firing.detail("{2,3} with n in {3,4,5,7,8}").done(Decision::Yes)},
                       SolvableNote::SolvableByTwoPrimeOrder, ConjugacyNote::NoClaim);
  return detail::no({firing.detail("no such Hall subgroup in S_n").done(Decision::No)});
}

namespace detail {

inline bool sym_in_e(unsigned n, PrimeSet const &pi)
{
  return sym_has_pair_hall(n, pi).decision == Decision::Yes;
}

/// Criterion for 2 in pi, 3 and p not in pi (odd q). An if-and-only-if.
inline Verdict two_without_three(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  auto const &d = ctx.descriptor;
  int const eps = *ctx.eps;
  std::uint64_t const qe = q_minus(d.q, eps);
  std::uint64_t const t = sigma.minus(PrimeSet{2}).min();

  auto b = FiringBuilder(RuleId::TwoWithoutThree);
  b.bind("sigma", sigma).bind("eps", eps).bind("q-eps", qe).bind("t", t);

  if (d.family == Family::TwG2 && sigma == PrimeSet{2, 7}) {
    b.bind("condition", "2G2 with {2,7}").detail("2G2(q) with pi = {2,7}");
    return yes({b.done(Decision::Yes)}, SolvableNote::SolvableByTwoPrimeOrder,
               ConjugacyNote::ConjugateClaimed);
  }

  auto fail = [&](std::string what) {
    b.bind("condition", what);
    return no({b.detail("fails: " + what).done(Decision::No)});
  };

  if (!sigma.is_subset_of(primes_of(qe)))
    return fail("pi subset of pi(q-eps)");

  switch (d.family) {
  case Family::PSL: {
    b.bind("n", d.n);
    int const eta = sign_value(d.eta);
    if (eta == eps) {
      if (!(d.n < t))
        return fail("n < t");
    } else if (!(d.n + 1 < 2 * t)) {
      return fail("(n+1)/2 < t");
    }
    break;
  }
  case Family::PSp:
    b.bind("n", d.n);
    if (!(d.n < t))
      return fail("n < t");
    break;
  case Family::POmega: {
    unsigned const m = d.half_dimension();
    b.bind("n", d.n).bind("m", m);
    if (d.n % 2 == 1 || sign_value(d.eta) == eps) {
      if (!(m < t))
        return fail("m < t");
    } else if (!(m - 1 < t && m % 2 == 1)) {
      return fail("m - 1 < t and m odd");
    }
    break;
  }
  case Family::E6:
    if (sign_value(d.eta) == -eps && sigma.contains(5))
      return fail("5 not in pi for E6^{-eps}");
    break;
  case Family::E7:
  case Family::E8:
    if (sigma.contains(5) || sigma.contains(7))
      return fail("5, 7 not in pi for E7/E8");
    break;
  default:
    break;
  }

  b.bind("condition", "all conditions hold");
  auto const s = sigma.size() >= 3 ? SolvableNote::Solvable : SolvableNote::SolvableByTwoPrimeOrder;
  return yes({b.detail("pi subset of pi(q-eps) and family conditions hold").done(Decision::Yes)},
             s, ConjugacyNote::ConjugateClaimed);
}

/// {3,s}-criterion for PSL^+-, PSp with s in pi(q - eps), s not in {2, p}.
/// Unknown when the hypotheses do not apply.
inline Verdict three_and_s(CriteriaContext const &ctx, std::uint64_t s)
{
  auto const &d = ctx.descriptor;
  auto b = FiringBuilder(RuleId::ThreeAndS);
  b.bind("s", s);

  bool const family_ok = d.family == Family::PSL || d.family == Family::PSp;
  if (!family_ok || !ctx.eps || d.p == 3 || d.p == s)
    return unknown({b.detail("hypotheses not met").done(Decision::Unknown)},
                   "{3,s} criterion needs PSL/PSp over odd q with p not in {3,s}");

  int const eps = *ctx.eps;
  std::uint64_t const qe = q_minus(d.q, eps);
  b.bind("eps", eps).bind("q-eps", qe).bind("n", d.n);
  if (qe % s != 0)
    return unknown({b.detail("s does not divide q - eps").done(Decision::Unknown)},
                   "{3,s} criterion needs s in pi(q - eps)");

  auto const a3 = mult_order(d.q, 3);
  auto const as = mult_order(d.q, s);
  auto const q2_3 = static_cast<std::uint64_t>(pi_part(BigInt(d.q) * d.q - 1, PrimeSet{3}));
  b.bind("e(q,3)", a3).bind("e(q,s)", as).bind("(q^2-1)_3", q2_3);

  auto accept = [&](char const *which) {
    b.bind("case", which);
    return yes({b.detail(std::string("holds: ") + which).done(Decision::Yes)},
               SolvableNote::SolvableByTwoPrimeOrder, ConjugacyNote::NoClaim);
  };

  if (d.family == Family::PSL && d.eta == Sign::Plus) {
    if (a3 == as && d.n < a3 * s)
      return accept("e(q,3) = e(q,s) = a, n < a s");
    if (d.n == 3 && a3 == 2 && as == 1 && q2_3 == 3)
      return accept("PSL_3, e(q,3) = 2, e(q,s) = 1, (q^2-1)_3 = 3");
  } else if (d.family == Family::PSL) {
    if (a3 == as && d.n < 2 * s)
      return accept("PSU: e(q,3) = e(q,s), n < 2s");
    if (d.n == 3 && a3 == 1 && as == 2 && q2_3 == 3)
      return accept("PSU_3, e(q,3) = 1, e(q,s) = 2, (q^2-1)_3 = 3");
  } else {
    if (a3 == as && d.n < s)
      return accept("PSp: e(q,3) = e(q,s), n < s");
  }
  b.bind("case", "none");
  return no({b.detail(a3 != as ? "e(q,3) != e(q,s)" : "rank bound fails").done(Decision::No)});
}

/// Conditions (1)-(4) for 3D4, E6, E7, E8, F4, G2 with 2, p not in pi.
inline Verdict odd_exceptional(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  auto const &d = ctx.descriptor;
  std::uint64_t const r = sigma.min();
  auto const er = mult_order(d.q, r);
  auto b = FiringBuilder(RuleId::OddExceptional);
  b.bind("sigma", sigma).bind("r", r).bind("e(q,r)", er);

  auto fail = [&](std::string what) {
    b.bind("condition", what);
    return no({b.detail("fails: " + what).done(Decision::No)});
  };

  for (auto s : sigma) {
    if (s == r)
      continue;
    auto es = mult_order(d.q, s);
    if (es != er) {
      b.bind("s", s).bind("e(q,s)", es);
      return fail("e(q,r) = e(q,s)");
    }
  }

  auto divisible_by_pair = [](BigInt const &v) {
    return v % 15 == 0 || v % 21 == 0 || v % 35 == 0;
  };

  if (d.family == Family::E6) {
    int const eta = sign_value(d.eta);
    auto part = big_pi_part(q_minus(d.q, eta), sigma);
    b.bind(eta == 1 ? "(q-1)_pi" : "(q+1)_pi", part);
    if (part % 15 == 0)
      return fail("(q -+ 1)_pi not divisible by 15");
  } else if (d.family == Family::E7) {
    auto part = big_pi_part(d.q - 1, sigma);
    b.bind("(q-1)_pi", part);
    if (er != 1)
      return fail("e(q,r) = 1");
    if (divisible_by_pair(part))
      return fail("(q-1)_pi not divisible by 15, 21, 35");
  } else if (d.family == Family::E8) {
    auto part = big_pi_part(d.q + 1, sigma);
    b.bind("(q+1)_pi", part);
    if (er != 2)
      return fail("e(q,r) = 2");
    if (divisible_by_pair(part))
      return fail("(q+1)_pi not divisible by 15, 21, 35");
  }

  b.bind("condition", "all conditions hold");
  auto const s = sigma.size() == 2 ? SolvableNote::SolvableByTwoPrimeOrder
                                   : SolvableNote::SolvableByOddOrder;
  return yes({b.detail("common order e(q,r) and family conditions hold").done(Decision::Yes)}, s,
             ConjugacyNote::NoClaim);
}

/// The prime sets of the Suzuki/Ree table (sufficient condition only).
inline std::vector<std::pair<std::string, PrimeSet>> suzuki_ree_sets(GroupDescriptor const &d)
{
  BigInt const q = d.q;
  unsigned const k = (d.field_exp - 1) / 2;
  std::vector<std::pair<std::string, BigInt>> raw;
  if (d.family == Family::TwB2 || d.family == Family::TwG2) {
    BigInt const r = boost::multiprecision::pow(BigInt(d.p), k + 1);
    raw = {{"q-1", q - 1}, {"q+r+1", q + r + 1}, {"q-r+1", q - r + 1}};
  } else if (d.family == Family::TwF4) {
    BigInt const r = boost::multiprecision::pow(BigInt(2), k + 1);
    BigInt const q2 = q * q;
    raw = {
      {"q^2+1", q2 + 1},
      {"q^2-1", q2 - 1},
      {"q+r+1", q + r + 1},
      {"q-r+1", q - r + 1},
      {"q^2+rq-r-1", q2 + r * q - r - 1},
      {"q^2-rq+r-1", q2 - r * q + r - 1},
      {"q^2+rq+q+r-1", q2 + r * q + q + r - 1},
      {"q^2-rq+q-r-1", q2 - r * q + q - r - 1},
    };
  }
  std::vector<std::pair<std::string, PrimeSet>> sets;
  for (auto &[label, v] : raw) {
    if (v < 0)
      v = -v;
    if (v <= 1)
      sets.emplace_back(label, PrimeSet{});
    else
      sets.emplace_back(label, prime_divisors(v));
  }
  return sets;
}

inline Verdict odd_suzuki_ree(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  for (auto const &[label, set] : suzuki_ree_sets(ctx.descriptor)) {
    if (sigma.is_subset_of(set)) {
      auto f = FiringBuilder(RuleId::OddSuzukiRee)
                 .bind("sigma", sigma)
                 .bind("set", "pi(" + label + ")")
                 .detail("sigma lies in pi(" + label + ")")
                 .done(Decision::Yes);
      auto const s = sigma.size() == 2 ? SolvableNote::SolvableByTwoPrimeOrder
                                       : SolvableNote::SolvableByOddOrder;
      return yes({f}, s, ConjugacyNote::NoClaim);
    }
  }
  auto f = FiringBuilder(RuleId::OddSuzukiRee)
             .bind("sigma", sigma)
             .bind("set", "none")
             .detail("sigma lies in no tabulated set; the table is only sufficient")
             .done(Decision::Unknown);
  return unknown({f}, "Suzuki/Ree table is a sufficient condition only");
}

/// The p-in-pi test against a Borel subgroup. `strict` selects the |sigma| >= 3
/// behaviour, where unequal parts decide No.
inline Verdict borel_test(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  auto b = FiringBuilder(RuleId::BorelContainment);
  b.bind("sigma", sigma).bind("p", ctx.p);
  std::optional<GroupOrder> borel;
  try {
    borel = borel_order(ctx.descriptor);
  } catch (UnsupportedFamily const &) {
    return unknown({b.detail("no Borel order for this family").done(Decision::Unknown)},
                   "Borel subgroup order not implemented for this family");
  }
  auto const s_part = ctx.order.pi_part(sigma).value();
  auto const b_part = borel->order.pi_part(sigma).value();
  b.bind("|S|_pi", s_part).bind("|B|_pi", b_part);
  if (s_part == b_part) {
    auto const s = sigma.size() == 2 ? SolvableNote::SolvableByTwoPrimeOrder : SolvableNote::Solvable;
    return yes({b.detail("|S|_pi = |B|_pi: a pi-Hall subgroup inside the Borel subgroup")
                  .done(Decision::Yes)},
               s, ConjugacyNote::ConjugateClaimed);
  }
  if (sigma.size() >= 3)
    return no({b.detail("|S|_pi != |B|_pi with |sigma| >= 3").done(Decision::No)});
  return unknown({b.detail("|S|_pi != |B|_pi for a pair; the Hall subgroup might be parabolic")
                    .done(Decision::Unknown)},
                 "pair with p in pi and unequal Borel part");
}

inline bool gl2_in_e(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  auto const &d = ctx.descriptor;
  int const eps = *ctx.eps;
  std::uint64_t const qe = q_minus(d.q, eps);
  bool const three_in = qe % 3 == 0;
  auto const odd = sigma.minus(PrimeSet{2});
  if (three_in && odd.is_subset_of(primes_of(qe)))
    return true;
  if (sigma.is_subset_of(PrimeSet{2, 3})) {
    auto q21 = pi_part(BigInt(d.q) * d.q - 1, PrimeSet{2, 3});
    return three_in || q21 == 24;
  }
  return false;
}

/// {2,3} subset of sigma, p not in sigma.
inline Verdict two_and_three(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  auto const &d = ctx.descriptor;
  int const eps = *ctx.eps;
  std::uint64_t const qe = q_minus(d.q, eps);
  PrimeSet const tau = sigma.minus(PrimeSet{2, 3});
  PrimeSet const pi_qe = primes_of(qe);
  bool const pair = tau.empty();
  auto const solvable = pair ? SolvableNote::SolvableByTwoPrimeOrder : SolvableNote::Solvable;

  // Shared necessary conditions: the {2,s} and {3,s} pair criteria.
  auto pair_failures = [&](std::vector<RuleFiring> &trace, bool with_three_s) {
    bool failed = false;
    for (auto s : tau) {
      auto v = two_without_three(ctx, PrimeSet{2, s});
      if (v.decision == Decision::No) {
        trace.insert(trace.end(), v.trace.begin(), v.trace.end());
        failed = true;
      }
      if (with_three_s) {
        auto w = three_and_s(ctx, s);
        if (w.decision == Decision::No) {
          trace.insert(trace.end(), w.trace.begin(), w.trace.end());
          failed = true;
        }
      }
    }
    return failed;
  };

  switch (d.family) {
  case Family::PSL: {
    if (d.n == 2) {
      auto b = FiringBuilder(RuleId::TwoThreePSL2);
      b.bind("sigma", sigma).bind("tau", tau).bind("eps", eps).bind("q-eps", qe);
      if (pair)
        return unknown({b.detail("tau is empty").done(Decision::Unknown)},
                       "PSL_2 with sigma = {2,3}: no criterion without a prime s > 3");
      PrimeSet const need = tau.unite(PrimeSet{3});
      if (need.is_subset_of(pi_qe))
        return yes({b.detail("{3} u tau inside pi(q-eps)").done(Decision::Yes)}, solvable,
                   ConjugacyNote::AutInvariantClaimed);
      std::vector<RuleFiring> trace{b.detail("{3} u tau not inside pi(q-eps)").done(Decision::No)};
      for (auto s : tau) {
        if (qe % s != 0) {
          auto v = two_without_three(ctx, PrimeSet{2, s});
          if (v.decision != Decision::No)
            throw InvariantViolation("PSL_2: s outside pi(q-eps) but {2,s} criterion holds");
          trace.insert(trace.end(), v.trace.begin(), v.trace.end());
          return no(std::move(trace));
        }
      }
      // every s divides q - eps, so 3 does not
      auto w = three_and_s(ctx, tau.min());
      if (w.decision != Decision::No)
        throw InvariantViolation("PSL_2: 3 outside pi(q-eps) but {3,s} criterion holds");
      trace.insert(trace.end(), w.trace.begin(), w.trace.end());
      return no(std::move(trace));
    }

    int const eta = sign_value(d.eta);
    std::uint64_t const q_eta = q_minus(d.q, eta);
    unsigned const m = d.half_dimension();
    auto const nfact = factorial(d.n);
    auto const q21_23 = pi_part(BigInt(d.q) * d.q - 1, PrimeSet{2, 3});
    PrimeSet const pi_q_eta = primes_of(q_eta);
    PrimeSet const pi_q2 = primes_of(d.q * d.q - 1);

    auto b = FiringBuilder(RuleId::TwoThreePSLn);
    b.bind("sigma", sigma).bind("tau", tau).bind("eta", eta).bind("eps", eps).bind("n", d.n).bind(
      "m", m);

    bool const q12 = congruent(d.q, eta, 12) || (d.n == 3 && congruent(d.q, eta, 4));

    bool cond_a = q12 && sym_in_e(d.n, sigma) &&
                  sigma.is_subset_of(pi_q_eta.unite(nfact.primes()));
    if (cond_a) {
      for (auto r : sigma.intersect(nfact.primes()).minus(pi_q_eta)) {
        if (ctx.order.exponent_of(r) != nfact.exponent_of(r))
          cond_a = false;
      }
    }
    bool const cond_b = congruent(d.q, -eta, 3) && sym_in_e(m, sigma) && gl2_in_e(ctx, sigma) &&
                        sigma.is_subset_of(pi_q2);
    if (cond_a || cond_b) {
      b.bind("condition", cond_a ? "(A)" : "(B)");
      return yes({b.detail(cond_a ? "condition (A) holds" : "condition (B) holds")
                    .done(Decision::Yes)},
                 solvable, ConjugacyNote::AutInvariantClaimed);
    }

    std::vector<RuleFiring> trace;
    bool const failed = pair_failures(trace, true);

    bool const c1 = q12 && sym_in_e(d.n, PrimeSet{2, 3}) && (q_eta % 3 == 0 || ctx.order3part == 3);
    bool const c2 = congruent(d.q, -eta, 3) && sym_in_e(m, PrimeSet{2, 3}) &&
                    (qe % 3 == 0 || q21_23 == 24);
    bool const c3 = d.n == 11 && q21_23 == 24 && congruent(d.q, -eta, 3) && congruent(d.q, eta, 4);
    if (failed || !(c1 || c2 || c3)) {
      b.bind("condition", failed ? "pair criterion fails" : "none of the {2,3} conditions");
      trace.insert(trace.begin(), b.detail(failed ? "a {2,s} or {3,s} pair fails"
                                                  : "no {2,3}-Hall subgroup: (1)-(3) all fail")
                                    .done(Decision::No));
      return no(std::move(trace));
    }
    b.bind("condition", "undecided");
    return unknown({b.detail("neither (A)/(B) established nor a failure found")
                      .done(Decision::Unknown)},
                   "PSL_n: sufficient conditions not met and no necessary condition fails");
  }

  case Family::PSp: {
    auto b = FiringBuilder(RuleId::TwoThreePSp);
    b.bind("sigma", sigma).bind("tau", tau).bind("eps", eps).bind("n", d.n);
    bool ok = tau.unite(PrimeSet{3}).is_subset_of(pi_qe) && sym_in_e(d.n, PrimeSet{2, 3});
    auto const a3 = mult_order(d.q, 3);
    for (auto s : tau) {
      if (!(d.n < s) || mult_order(d.q, s) != a3)
        ok = false;
    }
    if (ok) {
      b.bind("condition", "sufficient conditions hold");
      return yes({b.detail("{3} u tau in pi(q-eps), n < min tau, S_n in E_{2,3}")
                    .done(Decision::Yes)},
                 solvable, ConjugacyNote::AutInvariantClaimed);
    }
    std::vector<RuleFiring> trace;
    bool failed = pair_failures(trace, true);
    bool const sym_fail = !sym_in_e(d.n, PrimeSet{2, 3});
    if (failed || sym_fail) {
      b.bind("condition", sym_fail ? "S_n not in E_{2,3}" : "pair criterion fails");
      trace.insert(trace.begin(), b.detail("necessary condition fails").done(Decision::No));
      return no(std::move(trace));
    }
    b.bind("condition", "undecided");
    return unknown({b.detail("undecided").done(Decision::Unknown)},
                   "PSp: sufficient conditions not met and no necessary condition fails");
  }

  case Family::POmega: {
    unsigned const m = d.half_dimension();
    int const eta = d.n % 2 == 0 ? sign_value(d.eta) : 0;
    int const eps_m = (m % 2 == 0) ? 1 : eps;
    bool const three_in = qe % 3 == 0;
    auto const q21_23 = pi_part(BigInt(d.q) * d.q - 1, PrimeSet{2, 3});
    auto b = FiringBuilder(RuleId::TwoThreePOmega);
    b.bind("sigma", sigma).bind("tau", tau).bind("eps", eps).bind("n", d.n).bind("m", m);
    if (eta != 0)
      b.bind("eta", eta);

    std::string which;
    if (d.n == 2 * m + 1 && three_in && sym_in_e(m, PrimeSet{2, 3}))
      which = "(1)";
    else if (d.n == 2 * m && eta == eps_m && three_in && sym_in_e(m, PrimeSet{2, 3}))
      which = "(2)";
    else if (d.n == 2 * m && eta == -eps_m && three_in && sym_in_e(m - 1, PrimeSet{2, 3}))
      which = "(3)";
    else if (d.n == 11 && three_in && q21_23 == 24)
      which = "(4)";
    else if (d.n == 12 && eta == -1 && three_in && q21_23 == 24)
      which = "(5)";

    std::vector<RuleFiring> trace;
    bool const failed = pair_failures(trace, false);
    if (!which.empty() && !failed) {
      b.bind("condition", which);
      return yes({b.detail("condition " + which + " with all {2,s} pairs").done(Decision::Yes)},
                 solvable, ConjugacyNote::AutInvariantClaimed);
    }
    if (failed || m < 3) {
      b.bind("condition", failed ? "pair criterion fails" : "m < 3");
      trace.insert(trace.begin(), b.detail("necessary condition fails").done(Decision::No));
      return no(std::move(trace));
    }
    b.bind("condition", "undecided");
    return unknown({b.detail("undecided").done(Decision::Unknown)},
                   "POmega: no listed {2,3} condition holds and no necessary condition fails");
  }

  default: {
    auto b = FiringBuilder(RuleId::TwoThreeExceptional);
    b.bind("sigma", sigma).bind("eps", eps).bind("q-eps", qe).bind(
      "family", std::string(family_name(d.family)));
    bool const family_ok = d.family == Family::F4 || d.family == Family::G2 ||
                           d.family == Family::TD4 ||
                           (d.family == Family::E6 && sign_value(d.eta) == -eps);
    if (family_ok && sigma.is_subset_of(pi_qe))
      return yes({b.detail("sigma inside pi(q-eps) for F4, G2, 3D4 or E6^{-eps}")
                    .done(Decision::Yes)},
                 solvable, ConjugacyNote::AutInvariantClaimed);
    return no({b.detail(family_ok ? "sigma not inside pi(q-eps)"
                                  : "family has no {2,3}-Hall subgroup")
                 .done(Decision::No)});
  }
  }
}

} // namespace hallpi::detail

namespace detail {

inline Verdict decide_pair_sigma(CriteriaContext const &ctx, PrimeSet const &sigma);

inline Verdict lie_type_sigma(CriteriaContext const &ctx, PrimeSet const &sigma);

inline Verdict prelude(CriteriaContext const &ctx, PrimeSet const &sigma, bool &decided)
{
  decided = true;
  auto const &d = ctx.descriptor;
  if (sigma.size() <= 1)
    return yes({FiringBuilder(RuleId::SylowClosure)
                  .bind("sigma", sigma)
                  .detail("a Sylow subgroup (or the trivial group)")
                  .done(Decision::Yes)},
               SolvableNote::Solvable, ConjugacyNote::ConjugateClaimed);
  if (d.is_simple() && sigma == ctx.spectrum)
    return no({FiringBuilder(RuleId::WholeGroup)
                 .bind("sigma", sigma)
                 .bind("pi(S)", ctx.spectrum)
                 .detail("the pi-Hall subgroup is S, which is not solvable")
                 .done(Decision::No)});
  if (d.is_lie_type() && !d.is_simple())
    return unknown({FiringBuilder(RuleId::NotSimple)
                      .bind("group", render(d))
                      .detail("descriptor is not a simple group")
                      .done(Decision::Unknown)},
                   "descriptor does not name a simple group");
  decided = false;
  return {};
}

inline Verdict decide_pair_sigma(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  bool decided = false;
  auto v = prelude(ctx, sigma, decided);
  if (decided)
    return v;

  auto const &d = ctx.descriptor;
  if (d.family == Family::Alt || d.family == Family::Sym) {
    if (sigma != PrimeSet{2, 3})
      return no({FiringBuilder(RuleId::SymmetricAlternating)
                   .bind("n", d.n)
                   .bind("sigma", sigma)
                   .bind("family", std::string(family_name(d.family)))
                   .detail("only {2,3} can occur")
                   .done(Decision::No)});
    if (d.family == Family::Sym)
      return sym_has_pair_hall(d.n, sigma);
    return unknown({FiringBuilder(RuleId::AlternatingTwoThree)
                      .bind("n", d.n)
                      .bind("sigma", sigma)
                      .detail("not tabulated")
                      .done(Decision::Unknown)},
                   "alternating group with {2,3}");
  }
  if (d.family == Family::Spor)
    return unknown({FiringBuilder(RuleId::SporadicPair)
                      .bind("group", render(d))
                      .bind("sigma", sigma)
                      .detail("not tabulated")
                      .done(Decision::Unknown)},
                   "sporadic pairs are not tabulated");
  return lie_type_sigma(ctx, sigma);
}

/// Lie type, sigma of size >= 2, simple.
inline Verdict lie_type_sigma(CriteriaContext const &ctx, PrimeSet const &sigma)
{
  auto const &d = ctx.descriptor;
  if (sigma.contains(d.p))
    return borel_test(ctx, sigma);

  if (!sigma.contains(2)) {
    if (d.is_suzuki_ree())
      return odd_suzuki_ree(ctx, sigma);
    if (d.is_exceptional())
      return odd_exceptional(ctx, sigma);
    if (sigma.size() == 2) {
      if (sigma.contains(3))
        return three_and_s(ctx, sigma.minus(PrimeSet{3}).min());
      auto f = FiringBuilder(RuleId::OddClassicalPairwise)
                 .bind("sigma", sigma)
                 .detail("no pair criterion for two odd primes other than 3")
                 .done(Decision::Unknown);
      return unknown({f}, "classical group, odd pair without 3");
    }
    // Pairwise combination.
    std::vector<RuleFiring> trace;
    bool any_no = false, all_yes = true;
    std::string pairs;
    for (auto const &pr : sigma.subsets(2, 2)) {
      auto v = decide_pair_sigma(ctx, pr);
      pairs += (pairs.empty() ? "" : " ") + detail::show(pr) + ":" + std::string(to_string(v.decision));
      if (v.decision == Decision::No) {
        any_no = true;
        trace.insert(trace.end(), v.trace.begin(), v.trace.end());
      }
      if (v.decision != Decision::Yes)
        all_yes = false;
    }
    auto head = FiringBuilder(RuleId::OddClassicalPairwise).bind("sigma", sigma).bind("pairs", pairs);
    if (any_no) {
      trace.insert(trace.begin(), head.detail("some pair fails").done(Decision::No));
      return no(std::move(trace));
    }
    if (all_yes)
      return yes({head.detail("every pair has a Hall subgroup").done(Decision::Yes)},
                 SolvableNote::SolvableByOddOrder, ConjugacyNote::NoClaim);
    return unknown({head.detail("some pair undecided").done(Decision::Unknown)},
                   "classical group: some odd pair undecided");
  }

  // 2 in sigma, p odd.
  if (!sigma.contains(3))
    return two_without_three(ctx, sigma);
  return two_and_three(ctx, sigma);
}

} // namespace detail

/// Decides whether S has a solvable pi-Hall subgroup.
inline Verdict decide_solvable_hall(GroupDescriptor const &d, PrimeSet const &pi)
{
  if (pi.empty())
    throw ConstraintError("pi must be nonempty");
  auto const ctx = make_context(d, pi);
  auto const &sigma = ctx.sigma;

  bool decided = false;
  auto v = detail::prelude(ctx, sigma, decided);
  if (decided)
    return v;
  if (sigma.size() == 2)
    return detail::decide_pair_sigma(ctx, sigma);

  using detail::FiringBuilder;
  switch (d.family) {
  case Family::Alt:
  case Family::Sym:
    return detail::no({FiringBuilder(RuleId::SymmetricAlternating)
                         .bind("n", d.n)
                         .bind("sigma", sigma)
                         .bind("family", std::string(family_name(d.family)))
                         .detail("|sigma| >= 3: some pair has no Hall subgroup")
                         .done(Decision::No)});
  case Family::Spor: {
    auto b = FiringBuilder(RuleId::SporadicTriple).bind("group", render(d)).bind("sigma", sigma);
    if (d.spor_name == "J1" && sigma == PrimeSet{2, 3, 7})
      return detail::yes({b.detail("J1 with {2,3,7}").done(Decision::Yes)},
                         SolvableNote::Solvable, ConjugacyNote::NoClaim);
    return detail::no({b.detail("not the J1 {2,3,7} case").done(Decision::No)});
  }
  default:
    return detail::lie_type_sigma(ctx, sigma);
  }
}

/// Decides E_{r,s} for a pair of distinct primes.
inline Verdict decide_pair(GroupDescriptor const &d, std::uint64_t r, std::uint64_t s)
{
  if (r == s)
    throw ConstraintError("pair needs two distinct primes");
  PrimeSet const pr{r, s};
  auto const ctx = make_context(d, pr);
  return detail::decide_pair_sigma(ctx, ctx.sigma);
}

/// Conjunction over every pair of sigma.
inline Verdict combine_pairwise(GroupDescriptor const &d, PrimeSet const &pi)
{
  auto const ctx = make_context(d, pi);
  if (ctx.sigma.size() < 2)
    throw ConstraintError("combine_pairwise needs |pi n pi(S)| >= 2");
  std::vector<RuleFiring> trace;
  bool any_no = false, all_yes = true;
  for (auto const &pr : ctx.sigma.subsets(2, 2)) {
    auto v = decide_pair(d, pr.elements()[0], pr.elements()[1]);
    if (v.decision == Decision::No) {
      any_no = true;
      trace.insert(trace.end(), v.trace.begin(), v.trace.end());
    } else if (v.decision == Decision::Yes) {
      if (!any_no)
        trace.insert(trace.end(), v.trace.begin(), v.trace.end());
    } else {
      all_yes = false;
    }
  }
  if (any_no)
    return detail::no(std::move(trace));
  if (all_yes)
    return detail::yes(std::move(trace), SolvableNote::Solvable, ConjugacyNote::NoClaim);
  return detail::unknown(std::move(trace), "some pair undecided");
}

/// Raised when the direct verdict and the pairwise combination disagree.
class ContradictionError : public InvariantViolation {
public:
  ContradictionError(std::string what, Verdict direct, Verdict pairwise)
    : InvariantViolation(std::move(what)), direct_(std::move(direct)), pairwise_(std::move(pairwise))
  {}

  Verdict const &direct() const { return direct_; }
  Verdict const &pairwise() const { return pairwise_; }

private:
  Verdict direct_;
  Verdict pairwise_;
};

enum class Agreement { Agree, PartiallyUnknown, NotApplicable };

struct ConsistencyReport {
  Agreement agreement = Agreement::NotApplicable;
  std::optional<Verdict> direct;
  std::optional<Verdict> pairwise;
};

/// Cross-checks decide_solvable_hall against combine_pairwise for |sigma| >= 3.
inline ConsistencyReport consistency_check(GroupDescriptor const &d, PrimeSet const &pi)
{
  auto const ctx = make_context(d, pi);
  ConsistencyReport rep;
  if (ctx.sigma.size() < 3)
    return rep;
  rep.direct = decide_solvable_hall(d, pi);
  rep.pairwise = combine_pairwise(d, pi);
  auto a = rep.direct->decision, b = rep.pairwise->decision;
  if (a != Decision::Unknown && b != Decision::Unknown && a != b)
    throw ContradictionError("criteria contradiction for " + render(d) + " with pi = {" +
                               pi.to_string() + "}: direct " + std::string(to_string(a)) +
                               ", pairwise " + std::string(to_string(b)),
                             *rep.direct, *rep.pairwise);
  rep.agreement = (a == Decision::Unknown || b == Decision::Unknown) ? Agreement::PartiallyUnknown
                                                                      : Agreement::Agree;
  return rep;
}

} // namespace hallpi
