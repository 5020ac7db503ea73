#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "hallpi/error.hpp"

namespace hallpi {

/// A permutation of {0, ..., degree-1}. Products compose left to right:
/// (a * b)(x) = b(a(x)).
class Perm {
public:
  using Point = std::uint16_t;

  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Perm(std::vector<Point> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x])
        throw ConstraintError("image list is not a permutation");
      seen[x] = true;
    }
  }

  /// Parses cycle notation over 0-based points, e.g. "(0,1,2)(3,4)"; "()" is
  /// the identity.
  static Perm from_cycles(std::string_view text, std::size_t degree)
  {
    Perm result(degree);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    };
    skip_ws();
    if (i == text.size())
      throw ParseError("empty cycle string");
    while (i < text.size()) {
      if (text[i] != '(')
        throw ParseError("expected '(' in cycle string '" + std::string(text) + "'");
      ++i;
      std::vector<Point> cycle;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        skip_ws();
        std::size_t start = i;
        unsigned long value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + static_cast<unsigned long>(text[i] - '0');
          if (value >= degree)
            throw ParseError("point out of range in '" + std::string(text) + "'");
          ++i;
        }
        if (start == i)
          throw ParseError("expected a point in '" + std::string(text) + "'");
        cycle.push_back(static_cast<Point>(value));
        skip_ws();
        if (i < text.size() && text[i] == ',')
          ++i;
      }
      if (i == text.size())
        throw ParseError("unterminated cycle in '" + std::string(text) + "'");
      ++i;
      skip_ws();
      std::vector<Point> sorted = cycle;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError("repeated point in a cycle of '" + std::string(text) + "'");
      if (cycle.size() < 2)
        continue;
      Perm c(degree);
      for (std::size_t k = 0; k < cycle.size(); ++k)
        c.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
      result = result * c;
    }
    return result;
  }

  std::size_t degree() const { return images_.size(); }

  Point operator[](std::size_t x) const { return images_[x]; }

  std::vector<Point> const &images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i)
        return false;
    }
    return true;
  }

  friend Perm operator*(Perm const &a, Perm const &b)
  {
    if (a.degree() != b.degree())
      throw ConstraintError("degree mismatch in permutation product");
    Perm r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i)
      r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  Perm inverse() const
  {
    Perm r;
    r.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
      r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  /// x^g = g^-1 x g.
  Perm conjugate_by(Perm const &g) const { return g.inverse() * *this * g; }

  Perm pow(std::uint64_t k) const
  {
    Perm result(degree()), base = *this;
    while (k) {
      if (k & 1)
        result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  std::vector<std::vector<Point>> cycles() const
  {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      std::vector<Point> c;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        c.push_back(static_cast<Point>(j));
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Element order, the lcm of the cycle lengths.
  std::uint64_t order() const
  {
    std::uint64_t l = 1;
    for (auto const &c : cycles())
      l = std::lcm(l, static_cast<std::uint64_t>(c.size()));
    return l;
  }

  std::string to_cycles() const
  {
    auto cs = cycles();
    if (cs.empty())
      return "()";
    std::string s;
    for (auto const &c : cs) {
      s += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k)
          s += ',';
        s += std::to_string(c[k]);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(Perm const &, Perm const &) = default;
  friend auto operator<=>(Perm const &a, Perm const &b) { return a.images_ <=> b.images_; }

  std::size_t hash() const
  {
    std::size_t h = 1469598103934665603ull;
    for (auto x : images_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }

private:
  std::vector<Point> images_;
};

/// [a, b] = a^-1 b^-1 a b.
inline Perm commutator(Perm const &a, Perm const &b) { return a.inverse() * b.inverse() * a * b; }

} // namespace hallpi

template <>
struct std::hash<hallpi::Perm> {
  std::size_t operator()(hallpi::Perm const &p) const noexcept { return p.hash(); }
};
