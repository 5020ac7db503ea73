#pragma once

// Exact integer arithmetic: primality, factorization, prime sets, pi-parts,
// multiplicative orders and the sign epsilon of an odd prime power.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hallpi/error.hpp"

namespace hallpi {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1u)
      result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1u;
  }
  return result;
}

inline bool fits_u64(BigInt const &n)
{
  return n >= 0 && n <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

} // namespace detail

/// Deterministic Miller-Rabin; the witness set {2..37} is exact for all
/// 64-bit inputs.
inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0)
      return n == p;
  }

  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }

  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(PrimePower const &, PrimePower const &) = default;
};

class PrimeSet;

/// A positive integer together with its prime factorization.
///
/// Factors are kept sorted by prime with positive exponents, so two
/// factorizations compare equal iff they describe the same integer.
class Factorization {
public:
  Factorization() = default; // the integer 1

  static Factorization from_factors(std::vector<PrimePower> factors)
  {
    std::map<std::uint64_t, unsigned> merged;
    for (auto const &f : factors) {
      if (!is_prime(f.prime))
        throw ConstraintError("factor " + std::to_string(f.prime) + " is not prime");
      if (f.exponent > 0)
        merged[f.prime] += f.exponent;
    }
    Factorization res;
    for (auto const &[p, e] : merged)
      res.factors_.push_back({p, e});
    res.recompute_value();
    return res;
  }

  BigInt const &value() const { return value_; }
  std::vector<PrimePower> const &factors() const { return factors_; }

  unsigned exponent_of(std::uint64_t p) const
  {
    for (auto const &f : factors_) {
      if (f.prime == p)
        return f.exponent;
    }
    return 0;
  }

  bool is_one() const { return factors_.empty(); }

  inline PrimeSet primes() const;
  inline Factorization pi_part(PrimeSet const &pi) const;
  inline Factorization pi_prime_part(PrimeSet const &pi) const;

  Factorization &operator*=(Factorization const &other)
  {
    std::vector<PrimePower> all = factors_;
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    *this = from_factors(std::move(all));
    return *this;
  }

  friend Factorization operator*(Factorization lhs, Factorization const &rhs)
  {
    lhs *= rhs;
    return lhs;
  }

  bool divides(Factorization const &other) const
  {
    return std::all_of(factors_.begin(), factors_.end(), [&](PrimePower const &f) {
      return other.exponent_of(f.prime) >= f.exponent;
    });
  }

  /// Exact quotient; throws when `divisor` does not divide `*this`.
  Factorization divided_by(Factorization const &divisor) const
  {
    if (!divisor.divides(*this))
      throw InvariantViolation("inexact division of factorizations");
    std::vector<PrimePower> rest;
    for (auto const &f : factors_)
      rest.push_back({f.prime, f.exponent - divisor.exponent_of(f.prime)});
    return from_factors(std::move(rest));
  }

  std::string to_string() const
  {
    if (factors_.empty())
      return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i)
        os << '*';
      os << factors_[i].prime;
      if (factors_[i].exponent > 1)
        os << '^' << factors_[i].exponent;
    }
    return os.str();
  }

  friend bool operator==(Factorization const &a, Factorization const &b)
  {
    return a.factors_ == b.factors_;
  }

private:
  void recompute_value()
  {
    value_ = 1;
    for (auto const &f : factors_)
      value_ *= boost::multiprecision::pow(BigInt(f.prime), f.exponent);
  }

  std::vector<PrimePower> factors_;
  BigInt value_ = 1;
};

/// Finite set of primes with set semantics.
class PrimeSet {
public:
  PrimeSet() = default;

  PrimeSet(std::initializer_list<std::uint64_t> primes)
    : PrimeSet(std::vector<std::uint64_t>(primes))
  {}

  explicit PrimeSet(std::vector<std::uint64_t> primes)
  {
    for (auto p : primes) {
      if (!is_prime(p))
        throw ConstraintError(std::to_string(p) + " is not a prime");
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    primes_ = std::move(primes);
  }

  /// Parses a comma-separated list without spaces, e.g. "2,3,5".
  static PrimeSet parse(std::string_view text)
  {
    if (text.empty())
      throw ParseError("empty prime list");
    std::vector<std::uint64_t> primes;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                    : comma - pos);
      if (token.empty() || !std::all_of(token.begin(), token.end(),
                                        [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("malformed prime list '" + std::string(text) + "'");
      if (token.size() > 18)
        throw ParseError("prime too large in '" + std::string(text) + "'");
      primes.push_back(std::stoull(std::string(token)));
      if (comma == std::string_view::npos)
        break;
      pos = comma + 1;
    }
    return PrimeSet(std::move(primes));
  }

  std::vector<std::uint64_t> const &elements() const { return primes_; }
  auto begin() const { return primes_.begin(); }
  auto end() const { return primes_.end(); }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }

  bool contains(std::uint64_t p) const
  {
    return std::binary_search(primes_.begin(), primes_.end(), p);
  }

  std::uint64_t min() const
  {
    if (primes_.empty())
      throw InvariantViolation("min of empty prime set");
    return primes_.front();
  }

  bool is_subset_of(PrimeSet const &other) const
  {
    return std::includes(other.primes_.begin(), other.primes_.end(), primes_.begin(),
                         primes_.end());
  }

  PrimeSet intersect(PrimeSet const &other) const
  {
    PrimeSet res;
    std::set_intersection(primes_.begin(), primes_.end(), other.primes_.begin(),
                          other.primes_.end(), std::back_inserter(res.primes_));
    return res;
  }

  PrimeSet unite(PrimeSet const &other) const
  {
    PrimeSet res;
    std::set_union(primes_.begin(), primes_.end(), other.primes_.begin(),
                   other.primes_.end(), std::back_inserter(res.primes_));
    return res;
  }

  PrimeSet minus(PrimeSet const &other) const
  {
    PrimeSet res;
    std::set_difference(primes_.begin(), primes_.end(), other.primes_.begin(),
                        other.primes_.end(), std::back_inserter(res.primes_));
    return res;
  }

  /// Comma-separated, the same format `parse` accepts.
  std::string to_string() const
  {
    std::string s;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(primes_[i]);
    }
    return s;
  }

  /// All subsets with size in [min_size, max_size], in lexicographic order.
  std::vector<PrimeSet> subsets(std::size_t min_size, std::size_t max_size) const
  {
    std::vector<PrimeSet> res;
    auto const n = primes_.size();
    for (std::size_t k = min_size; k <= std::min(max_size, n); ++k) {
      std::vector<bool> mask(n, false);
      std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        PrimeSet s;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask[i])
            s.primes_.push_back(primes_[i]);
        }
        res.push_back(std::move(s));
      } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return res;
  }

  friend bool operator==(PrimeSet const &, PrimeSet const &) = default;
  friend auto operator<=>(PrimeSet const &, PrimeSet const &) = default;

private:
  std::vector<std::uint64_t> primes_;
};

inline PrimeSet Factorization::primes() const
{
  std::vector<std::uint64_t> ps;
  for (auto const &f : factors_)
    ps.push_back(f.prime);
  return PrimeSet(std::move(ps));
}

inline Factorization Factorization::pi_part(PrimeSet const &pi) const
{
  std::vector<PrimePower> kept;
  for (auto const &f : factors_) {
    if (pi.contains(f.prime))
      kept.push_back(f);
  }
  return from_factors(std::move(kept));
}

inline Factorization Factorization::pi_prime_part(PrimeSet const &pi) const
{
  std::vector<PrimePower> kept;
  for (auto const &f : factors_) {
    if (!pi.contains(f.prime))
      kept.push_back(f);
  }
  return from_factors(std::move(kept));
}

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n)
{
  if (n % 2 == 0)
    return 2;
  // Deterministic sequence of polynomial constants; the first one that
  // yields a proper divisor wins.
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t batch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i)
        y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);

    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n)
      return g;
  }
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned> &out)
{
  if (n == 1)
    return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  auto d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

} // namespace detail

/// Trial division by small primes, then Pollard-Brent on the cofactor.
inline Factorization factorize(std::uint64_t n)
{
  if (n == 0)
    throw ConstraintError("cannot factorize 0");

  std::map<std::uint64_t, unsigned> found;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  detail::factor_into(n, found);

  std::vector<PrimePower> factors;
  for (auto const &[p, e] : found)
    factors.push_back({p, e});
  return Factorization::from_factors(std::move(factors));
}

/// Arbitrary-precision entry point; the value must fit in 64 bits.
/// Larger integers are handled by factoring their symbolic factors instead.
inline Factorization factorize(BigInt const &n)
{
  if (n <= 0)
    throw ConstraintError("cannot factorize a non-positive integer");
  if (!detail::fits_u64(n))
    throw UnsupportedFamily("integer " + n.str() + " exceeds 64 bits; factor it symbolically");
  return factorize(static_cast<std::uint64_t>(n));
}

inline PrimeSet prime_divisors(std::uint64_t n) { return factorize(n).primes(); }

inline PrimeSet prime_divisors(BigInt const &n) { return factorize(n).primes(); }

/// Largest divisor of n whose prime divisors all lie in pi.
inline BigInt pi_part(BigInt n, PrimeSet const &pi)
{
  if (n <= 0)
    throw ConstraintError("pi_part needs a positive integer");
  BigInt part = 1;
  for (auto p : pi) {
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
  }
  return part;
}

inline std::uint64_t pi_part(std::uint64_t n, PrimeSet const &pi)
{
  return static_cast<std::uint64_t>(pi_part(BigInt(n), pi));
}

/// Multiplicative order of q modulo the prime r.
///
/// For r = 2 the order is not meaningful; the convention used throughout is
/// e(q, 2) = 1 when q = 1 (mod 4) and 2 otherwise (q odd).
inline std::uint64_t mult_order(std::uint64_t q, std::uint64_t r)
{
  if (!is_prime(r))
    throw ConstraintError("modulus " + std::to_string(r) + " is not prime");
  if (q % r == 0)
    throw ConstraintError(std::to_string(r) + " divides " + std::to_string(q));
  if (r == 2)
    return q % 4 == 1 ? 1 : 2;

  std::uint64_t order = r - 1;
  auto const phi = factorize(r - 1);
  for (auto const &f : phi.factors()) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      if (detail::powmod(q, order / f.prime, r) == 1)
        order /= f.prime;
      else
        break;
    }
  }
  return order;
}

/// The sign +1/-1 with q = eps (mod 4), for odd q.
inline int epsilon(std::uint64_t q)
{
  if (q % 2 == 0)
    throw ConstraintError("epsilon is defined for odd q only, got " + std::to_string(q));
  return q % 4 == 1 ? 1 : -1;
}

/// (p, k) with q = p^k, or nullopt when q is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q)
{
  if (q < 2)
    return std::nullopt;
  auto f = factorize(q);
  if (f.factors().size() != 1)
    return std::nullopt;
  return std::make_pair(f.factors()[0].prime, f.factors()[0].exponent);
}

/// Value of the d-th cyclotomic polynomial at x.
inline BigInt cyclotomic_value(unsigned d, BigInt const &x)
{
  if (d == 0)
    throw ConstraintError("cyclotomic index must be positive");
  // x^d - 1 = prod_{e | d} Phi_e(x)
  BigInt value = boost::multiprecision::pow(x, d) - 1;
  for (unsigned e = 1; e < d; ++e) {
    if (d % e == 0)
      value /= cyclotomic_value(e, x);
  }
  return value;
}

} // namespace hallpi
