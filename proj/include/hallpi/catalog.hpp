#pragma once

// Symbolic descriptors of the simple-group families handled by the criteria
// engine, the textual descriptor grammar, and exact factored group orders.

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hallpi/arith.hpp"
#include "hallpi/error.hpp"

namespace hallpi {

enum class Family {
  Alt,
  Sym,
  Spor,
  PSL,    // PSL_n^eta(q); eta = - is the unitary group
  PSp,    // PSp_{2n}(q)
  POmega, // POmega_n^eta(q), n the dimension of the natural module
  G2,
  F4,
  E6, // E6^eta(q); eta = - is 2E6
  E7,
  E8,
  TD4,  // 3D4(q)
  TwB2, // 2B2(q), Suzuki
  TwG2, // 2G2(q), small Ree
  TwF4  // 2F4(q), large Ree
};

enum class Sign { Plus, Minus, None };

inline int sign_value(Sign s)
{
  switch (s) {
  case Sign::Plus:
    return 1;
  case Sign::Minus:
    return -1;
  case Sign::None:
    break;
  }
  throw InvariantViolation("sign without numeric value");
}

inline std::string_view family_name(Family f)
{
  switch (f) {
  case Family::Alt: return "Alt";
  case Family::Sym: return "Sym";
  case Family::Spor: return "Spor";
  case Family::PSL: return "PSL";
  case Family::PSp: return "PSp";
  case Family::POmega: return "POmega";
  case Family::G2: return "G2";
  case Family::F4: return "F4";
  case Family::E6: return "E6";
  case Family::E7: return "E7";
  case Family::E8: return "E8";
  case Family::TD4: return "3D4";
  case Family::TwB2: return "2B2";
  case Family::TwG2: return "2G2";
  case Family::TwF4: return "2F4";
  }
  return "?";
}

struct GroupDescriptor {
  Family family = Family::Alt;
  unsigned n = 0;          // degree, dimension or half-rank depending on family
  Sign eta = Sign::None;
  std::uint64_t q = 0;     // field size, 0 when absent
  std::uint64_t p = 0;     // characteristic, 0 when absent
  unsigned field_exp = 0;  // q = p^field_exp
  std::string spor_name;   // only for Spor

  bool is_lie_type() const
  {
    return family != Family::Alt && family != Family::Sym && family != Family::Spor;
  }

  bool is_classical() const
  {
    return family == Family::PSL || family == Family::PSp || family == Family::POmega;
  }

  bool is_suzuki_ree() const
  {
    return family == Family::TwB2 || family == Family::TwG2 || family == Family::TwF4;
  }

  bool is_exceptional() const { return is_lie_type() && !is_classical(); }

  /// m with n = 2m or n = 2m + 1 (orthogonal and symmetric contexts).
  unsigned half_dimension() const { return n / 2; }

  /// False for the handful of small descriptors in a simple family that are
  /// not actually simple groups.
  bool is_simple() const
  {
    switch (family) {
    case Family::Alt:
      return n >= 5;
    case Family::Sym:
      return false;
    case Family::Spor:
      return true;
    case Family::PSL:
      if (n == 2)
        return q > 3;
      if (n == 3 && eta == Sign::Minus)
        return q > 2;
      return true;
    case Family::PSp:
      return !(n == 2 && q == 2);
    case Family::G2:
      return q > 2;
    case Family::TwF4:
      return q > 2;
    default:
      return true;
    }
  }

  friend bool operator==(GroupDescriptor const &, GroupDescriptor const &) = default;
};

namespace detail {

inline unsigned parse_unsigned(std::string_view token, std::string_view what,
                               std::string_view text)
{
  if (token.empty() || token.size() > 18 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("descriptor '" + std::string(text) + "': malformed " + std::string(what));
  auto v = std::stoull(std::string(token));
  if (v > std::numeric_limits<unsigned>::max())
    throw ParseError("descriptor '" + std::string(text) + "': " + std::string(what) +
                     " out of range");
  return static_cast<unsigned>(v);
}

inline std::uint64_t parse_u64(std::string_view token, std::string_view what,
                               std::string_view text)
{
  if (token.empty() || token.size() > 18 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("descriptor '" + std::string(text) + "': malformed " + std::string(what));
  return std::stoull(std::string(token));
}

inline std::vector<std::string_view> split_colon(std::string_view text)
{
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    auto c = text.find(':', pos);
    if (c == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, c - pos));
    pos = c + 1;
  }
}

inline void set_field(GroupDescriptor &d, std::uint64_t q, std::string_view text)
{
  auto pp = prime_power(q);
  if (!pp)
    throw ConstraintError("descriptor '" + std::string(text) + "': q = " + std::to_string(q) +
                          " is not a prime power");
  d.q = q;
  d.p = pp->first;
  d.field_exp = pp->second;
}

} // namespace detail

/// Checks the family-specific constraints; throws ConstraintError naming the
/// violated one.
inline void validate(GroupDescriptor const &d)
{
  auto fail = [&](std::string const &why) {
    throw ConstraintError(std::string(family_name(d.family)) + ": " + why);
  };

  if (d.is_lie_type()) {
    auto pp = prime_power(d.q);
    if (!pp || pp->first != d.p || pp->second != d.field_exp)
      fail("q must be a prime power with matching characteristic");
  }

  switch (d.family) {
  case Family::Alt:
    if (d.n < 3)
      fail("degree must be at least 3");
    break;
  case Family::Sym:
    if (d.n < 1)
      fail("degree must be at least 1");
    break;
  case Family::Spor:
    if (d.spor_name != "J1")
      fail("only the sporadic group J1 is supported");
    break;
  case Family::PSL:
    if (d.n < 2)
      fail("dimension must be at least 2");
    if (d.eta == Sign::None)
      fail("a sign is required");
    break;
  case Family::PSp:
    if (d.n < 2)
      fail("half-rank must be at least 2");
    break;
  case Family::POmega:
    if (d.n < 7)
      fail("dimension must be at least 7");
    if ((d.n % 2 == 0) != (d.eta != Sign::None))
      fail("a sign is required exactly when the dimension is even");
    break;
  case Family::E6:
    if (d.eta == Sign::None)
      fail("a sign is required");
    break;
  case Family::TwB2:
    if (d.p != 2 || d.field_exp % 2 == 0 || d.field_exp < 3)
      fail("q must be 2^e with odd exponent e >= 3");
    break;
  case Family::TwG2:
    if (d.p != 3 || d.field_exp % 2 == 0 || d.field_exp < 3)
      fail("q must be 3^e with odd exponent e >= 3");
    break;
  case Family::TwF4:
    if (d.p != 2 || d.field_exp % 2 == 0)
      fail("q must be 2^e with odd exponent e");
    break;
  default:
    break;
  }

  bool const signed_family =
    d.family == Family::PSL || d.family == Family::POmega || d.family == Family::E6;
  if (!signed_family && d.eta != Sign::None)
    fail("this family takes no sign");
}

/// Parses the descriptor grammar, e.g. "PSL+:2:41", "PSp:2:5", "POmega-:8:3",
/// "2G2:27", "Spor:J1".
inline GroupDescriptor parse_descriptor(std::string_view text)
{
  auto parts = detail::split_colon(text);
  if (parts.size() < 2)
    throw ParseError("descriptor '" + std::string(text) + "': expected <family>:<params>");

  std::string_view head = parts[0];
  GroupDescriptor d;

  auto take_sign = [&](std::string_view base) -> bool {
    if (head.size() == base.size() + 1 && head.substr(0, base.size()) == base) {
      char s = head.back();
      if (s == '+')
        d.eta = Sign::Plus;
      else if (s == '-')
        d.eta = Sign::Minus;
      else
        return false;
      return true;
    }
    return head == base;
  };

  auto expect_parts = [&](std::size_t k) {
    if (parts.size() != k)
      throw ParseError("descriptor '" + std::string(text) + "': expected " +
                       std::to_string(k - 1) + " parameter(s) after " + std::string(head));
  };

  if (head == "Alt" || head == "Sym") {
    expect_parts(2);
    d.family = head == "Alt" ? Family::Alt : Family::Sym;
    d.n = detail::parse_unsigned(parts[1], "degree", text);
  } else if (head == "Spor") {
    expect_parts(2);
    d.family = Family::Spor;
    d.spor_name = std::string(parts[1]);
  } else if (take_sign("PSL")) {
    expect_parts(3);
    d.family = Family::PSL;
    if (d.eta == Sign::None)
      throw ParseError("descriptor '" + std::string(text) + "': PSL needs a sign (+ or -)");
    d.n = detail::parse_unsigned(parts[1], "dimension", text);
    detail::set_field(d, detail::parse_u64(parts[2], "q", text), text);
  } else if (head == "PSp") {
    expect_parts(3);
    d.family = Family::PSp;
    d.n = detail::parse_unsigned(parts[1], "half-rank", text);
    detail::set_field(d, detail::parse_u64(parts[2], "q", text), text);
  } else if (take_sign("POmega")) {
    expect_parts(3);
    d.family = Family::POmega;
    d.n = detail::parse_unsigned(parts[1], "dimension", text);
    detail::set_field(d, detail::parse_u64(parts[2], "q", text), text);
  } else if (take_sign("E6")) {
    expect_parts(2);
    d.family = Family::E6;
    if (d.eta == Sign::None)
      throw ParseError("descriptor '" + std::string(text) + "': E6 needs a sign (+ or -)");
    detail::set_field(d, detail::parse_u64(parts[1], "q", text), text);
  } else {
    static constexpr std::array<std::pair<std::string_view, Family>, 9> plain{{
      {"G2", Family::G2},
      {"F4", Family::F4},
      {"E7", Family::E7},
      {"E8", Family::E8},
      {"3D4", Family::TD4},
      {"2B2", Family::TwB2},
      {"2G2", Family::TwG2},
      {"2F4", Family::TwF4},
      {"E6", Family::E6},
    }};
    auto it = std::find_if(plain.begin(), plain.end(),
                           [&](auto const &e) { return e.first == head; });
    if (it == plain.end())
      throw ParseError("descriptor '" + std::string(text) + "': unknown family '" +
                       std::string(head) + "'");
    expect_parts(2);
    d.family = it->second;
    detail::set_field(d, detail::parse_u64(parts[1], "q", text), text);
  }

  validate(d);
  return d;
}

inline std::string render(GroupDescriptor const &d)
{
  auto sign = [&] {
    switch (d.eta) {
    case Sign::Plus: return std::string("+");
    case Sign::Minus: return std::string("-");
    case Sign::None: break;
    }
    return std::string();
  };
  std::string name(family_name(d.family));
  switch (d.family) {
  case Family::Alt:
  case Family::Sym:
    return name + ":" + std::to_string(d.n);
  case Family::Spor:
    return name + ":" + d.spor_name;
  case Family::PSL:
  case Family::POmega:
    return name + sign() + ":" + std::to_string(d.n) + ":" + std::to_string(d.q);
  case Family::PSp:
    return name + ":" + std::to_string(d.n) + ":" + std::to_string(d.q);
  case Family::E6:
    return name + sign() + ":" + std::to_string(d.q);
  default:
    return name + ":" + std::to_string(d.q);
  }
}

/// One symbolic factor of a group order, e.g. "q^6-1", with its value
/// already factored.
struct GenericTerm {
  std::string label;
  Factorization value;
};

/// Exact order assembled as (product of terms) / divisor.
struct GroupOrder {
  Factorization order;
  std::vector<GenericTerm> terms;
  std::uint64_t divisor = 1;
};

namespace detail {

/// Builds terms in q from cyclotomic factors so that only values of
/// Phi_k(q) ever need factoring.
class OrderBuilder {
public:
  explicit OrderBuilder(std::uint64_t q) : q_(q) {}

  void q_power(unsigned e)
  {
    if (e == 0)
      return;
    auto pp = prime_power(q_);
    terms_.push_back({"q^" + std::to_string(e),
                      Factorization::from_factors({{pp->first, pp->second * e}})});
  }

  /// q^i - 1
  void minus_one(unsigned i)
  {
    std::vector<unsigned> ks;
    for (unsigned k = 1; k <= i; ++k) {
      if (i % k == 0)
        ks.push_back(k);
    }
    push("q^" + std::to_string(i) + "-1", ks);
  }

  /// q^i + 1
  void plus_one(unsigned i)
  {
    std::vector<unsigned> ks;
    for (unsigned k = 1; k <= 2 * i; ++k) {
      if ((2 * i) % k == 0 && i % k != 0)
        ks.push_back(k);
    }
    push("q^" + std::to_string(i) + "+1", ks);
  }

  /// q^i - sign^i
  void minus_signed(unsigned i, int sign)
  {
    if (sign == 1 || i % 2 == 0)
      minus_one(i);
    else
      plus_one(i);
  }

  /// An explicit product of cyclotomic values.
  void cyclotomic(std::string label, std::vector<unsigned> ks) { push(std::move(label), ks); }

  void literal(std::string label, Factorization value)
  {
    terms_.push_back({std::move(label), std::move(value)});
  }

  GroupOrder finish(std::uint64_t divisor) const
  {
    GroupOrder res;
    res.terms = terms_;
    res.divisor = divisor;
    Factorization product;
    for (auto const &t : terms_)
      product *= t.value;
    res.order = product.divided_by(factorize(divisor));
    return res;
  }

private:
  void push(std::string label, std::vector<unsigned> const &ks)
  {
    Factorization value;
    for (auto k : ks)
      value *= phi(k);
    terms_.push_back({std::move(label), std::move(value)});
  }

  Factorization phi(unsigned k)
  {
    if (k >= cache_.size())
      cache_.resize(k + 1);
    if (!cache_[k])
      cache_[k] = factorize(cyclotomic_value(k, BigInt(q_)));
    return *cache_[k];
  }

  std::uint64_t q_;
  std::vector<GenericTerm> terms_;
  std::vector<std::optional<Factorization>> cache_;
};

inline std::uint64_t gcd_signed(std::uint64_t a, std::uint64_t q, int sign)
{
  // gcd(a, q - sign) with q - sign > 0
  std::uint64_t v = sign == 1 ? q - 1 : q + 1;
  return std::gcd(a, v);
}

inline Factorization factorial(unsigned n)
{
  Factorization f;
  for (unsigned k = 2; k <= n; ++k)
    f *= factorize(std::uint64_t{k});
  return f;
}

} // namespace detail

inline GroupOrder group_order(GroupDescriptor const &d)
{
  validate(d);
  using detail::gcd_signed;

  if (d.family == Family::Alt || d.family == Family::Sym) {
    detail::OrderBuilder b(2);
    b.literal(std::to_string(d.n) + "!", detail::factorial(d.n));
    return b.finish(d.family == Family::Alt && d.n >= 2 ? 2 : 1);
  }
  if (d.family == Family::Spor) {
    detail::OrderBuilder b(2);
    b.literal("|J1|", Factorization::from_factors({{2, 3}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {19, 1}}));
    return b.finish(1);
  }

  std::uint64_t const q = d.q;
  unsigned const n = d.n;
  detail::OrderBuilder b(q);

  switch (d.family) {
  case Family::PSL: {
    int const eta = sign_value(d.eta);
    b.q_power(n * (n - 1) / 2);
    for (unsigned i = 2; i <= n; ++i)
      b.minus_signed(i, eta);
    return b.finish(gcd_signed(n, q, eta));
  }
  case Family::PSp:
    b.q_power(n * n);
    for (unsigned i = 1; i <= n; ++i)
      b.minus_one(2 * i);
    return b.finish(std::gcd<std::uint64_t>(2, q - 1));
  case Family::POmega: {
    unsigned const m = d.half_dimension();
    if (n % 2 == 1) {
      b.q_power(m * m);
      for (unsigned i = 1; i <= m; ++i)
        b.minus_one(2 * i);
      return b.finish(std::gcd<std::uint64_t>(2, q - 1));
    }
    int const eta = sign_value(d.eta);
    b.q_power(m * (m - 1));
    if (eta == 1)
      b.minus_one(m);
    else
      b.plus_one(m);
    for (unsigned i = 1; i < m; ++i)
      b.minus_one(2 * i);
    // gcd(4, q^m - eta)
    auto qm = detail::powmod(q, m, 4);
    auto r = static_cast<std::uint64_t>((qm + 4 - (eta == 1 ? 1 : 3)) % 4);
    return b.finish(std::gcd<std::uint64_t>(4, r == 0 ? 4 : r));
  }
  case Family::G2:
    b.q_power(6);
    b.minus_one(6);
    b.minus_one(2);
    return b.finish(1);
  case Family::F4:
    b.q_power(24);
    for (unsigned i : {12u, 8u, 6u, 2u})
      b.minus_one(i);
    return b.finish(1);
  case Family::E6: {
    int const eta = sign_value(d.eta);
    b.q_power(36);
    b.minus_one(12);
    b.minus_signed(9, eta);
    b.minus_one(8);
    b.minus_one(6);
    b.minus_signed(5, eta);
    b.minus_one(2);
    return b.finish(gcd_signed(3, q, eta));
  }
  case Family::E7:
    b.q_power(63);
    for (unsigned i : {18u, 14u, 12u, 10u, 8u, 6u, 2u})
      b.minus_one(i);
    return b.finish(std::gcd<std::uint64_t>(2, q - 1));
  case Family::E8:
    b.q_power(120);
    for (unsigned i : {30u, 24u, 20u, 18u, 14u, 12u, 8u, 2u})
      b.minus_one(i);
    return b.finish(1);
  case Family::TD4:
    b.q_power(12);
    b.cyclotomic("q^8+q^4+1", {3, 6, 12});
    b.minus_one(6);
    b.minus_one(2);
    return b.finish(1);
  case Family::TwB2:
    b.q_power(2);
    b.plus_one(2);
    b.minus_one(1);
    return b.finish(1);
  case Family::TwG2:
    b.q_power(3);
    b.plus_one(3);
    b.minus_one(1);
    return b.finish(1);
  case Family::TwF4:
    b.q_power(12);
    b.plus_one(6);
    b.minus_one(4);
    b.plus_one(3);
    b.minus_one(1);
    return b.finish(1);
  default:
    break;
  }
  throw UnsupportedFamily("no order formula for " + render(d));
}

inline PrimeSet prime_spectrum(GroupDescriptor const &d) { return group_order(d).order.primes(); }

/// Order of a Borel subgroup; implemented for PSL_n^+(q) and PSp_{2n}(q).
inline GroupOrder borel_order(GroupDescriptor const &d)
{
  validate(d);
  detail::OrderBuilder b(d.q);
  if (d.family == Family::PSL && d.eta == Sign::Plus) {
    b.q_power(d.n * (d.n - 1) / 2);
    for (unsigned i = 1; i < d.n; ++i)
      b.minus_one(1);
    return b.finish(std::gcd<std::uint64_t>(d.n, d.q - 1));
  }
  if (d.family == Family::PSp) {
    b.q_power(d.n * d.n);
    for (unsigned i = 0; i < d.n; ++i)
      b.minus_one(1);
    return b.finish(std::gcd<std::uint64_t>(2, d.q - 1));
  }
  throw UnsupportedFamily("no Borel subgroup order for " + render(d));
}

} // namespace hallpi
