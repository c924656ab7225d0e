#pragma once

// The dyadics: trees built from center, left and right, read as the dyadic
// rationals in (-1, 1) via c = 0, l(x) = (x-1)/2, r(x) = (x+1)/2.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "domwb/error.hpp"

namespace domwb::dyadic {

enum class Dir : std::uint8_t { left, right };

/// A dyadic tree stored as its constructor path, outermost first.
/// l(r(c)) is {left, right}.
class Dyadic {
 public:
  Dyadic() = default;
  static Dyadic center() { return Dyadic(); }
  static Dyadic left(Dyadic x) { return x.wrap(Dir::left); }
  static Dyadic right(Dyadic x) { return x.wrap(Dir::right); }

  std::size_t depth() const noexcept { return path_.size(); }
  const std::vector<Dir>& path() const noexcept { return path_; }
  bool is_center() const noexcept { return path_.empty(); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend auto operator<=>(const Dyadic&, const Dyadic&) = default;

 private:
  Dyadic wrap(Dir d) && {
    path_.insert(path_.begin(), d);
    return std::move(*this);
  }
  Dyadic wrap(Dir d) const& {
    Dyadic copy = *this;
    return std::move(copy).wrap(d);
  }
  std::vector<Dir> path_;
};

/// The order on dyadic trees, by structural recursion:
///   c ≺ c = 0     l x ≺ c = 1     r x ≺ c = 0
///   c ≺ l y = 0   c ≺ r y = 1
///   l x ≺ l y = r x ≺ r y = x ≺ y
///   l x ≺ r y = 1 r x ≺ l y = 0
inline bool prec(const Dyadic& x, const Dyadic& y) {
  const auto& p = x.path();
  const auto& q = y.path();
  std::size_t i = 0;
  for (; i < p.size() && i < q.size(); ++i)
    if (p[i] != q[i]) return p[i] == Dir::left;
  if (i < p.size()) return p[i] == Dir::left;
  if (i < q.size()) return q[i] == Dir::right;
  return false;
}

/// num / den with den a power of two, in lowest terms.
struct DyadicRational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

inline constexpr std::size_t kMaxRationalDepth = 61;

inline DyadicRational normalize(std::int64_t num, std::int64_t den) {
  while (den > 1 && num % 2 == 0) {
    num /= 2;
    den /= 2;
  }
  if (num == 0) den = 1;
  return {num, den};
}

inline DyadicRational to_rational(const Dyadic& x) {
  if (x.depth() > kMaxRationalDepth) throw out_of_range("dyadic too deep for 64-bit rationals");
  std::int64_t num = 0;
  std::int64_t den = 1;
  const auto& p = x.path();
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    num = *it == Dir::left ? num - den : num + den;
    den *= 2;
  }
  return normalize(num, den);
}

/// The tree whose value is q. q must be a dyadic rational in (-1, 1).
inline Dyadic from_rational(DyadicRational q) {
  q = normalize(q.num, q.den);
  if (q.den <= 0 || (q.den & (q.den - 1)) != 0) throw precondition_violation("denominator is not a power of two");
  if (q.num <= -q.den || q.num >= q.den) throw precondition_violation("value outside (-1, 1)");
  std::vector<Dir> path;
  // q = 0 -> c; q < 0 -> l(2q + 1); q > 0 -> r(2q - 1)
  while (q.num != 0) {
    if (q.num < 0) {
      path.push_back(Dir::left);
      q = normalize(2 * q.num + q.den, q.den);
    } else {
      path.push_back(Dir::right);
      q = normalize(2 * q.num - q.den, q.den);
    }
  }
  Dyadic d;
  for (auto it = path.rbegin(); it != path.rend(); ++it) d = *it == Dir::left ? Dyadic::left(d) : Dyadic::right(d);
  return d;
}

/// z with x ≺ z ≺ y: the tree of the midpoint.
inline Dyadic density_witness(const Dyadic& x, const Dyadic& y) {
  if (!prec(x, y)) throw precondition_violation("density witness needs x ≺ y");
  const auto a = to_rational(x);
  const auto b = to_rational(y);
  const std::int64_t den = std::max(a.den, b.den);
  const std::int64_t sum = a.num * (den / a.den) + b.num * (den / b.den);
  return from_rational(normalize(sum, 2 * den));
}

struct Endpoints {
  Dyadic below;
  Dyadic above;
};

/// l(x) ≺ x ≺ r(x).
inline Endpoints endpoint_witnesses(const Dyadic& x) { return {Dyadic::left(x), Dyadic::right(x)}; }

/// Every tree of depth at most `depth`, 2^(depth+1) - 1 of them, in
/// increasing depth and, within a depth, increasing value.
inline std::vector<Dyadic> enumerate(std::size_t depth) {
  std::vector<Dyadic> out{Dyadic::center()};
  std::vector<Dyadic> frontier{Dyadic::center()};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Dyadic> next;
    for (const auto& x : frontier) next.push_back(Dyadic::left(x));
    for (const auto& x : frontier) next.push_back(Dyadic::right(x));
    std::sort(next.begin(), next.end(), [](const Dyadic& a, const Dyadic& b) { return prec(a, b); });
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::string to_string(const Dyadic& x) {
  std::string s;
  for (auto d : x.path()) s += d == Dir::left ? "l(" : "r(";
  s += "c";
  s.append(x.depth(), ')');
  return s;
}

/// Parses `c`, `l(<expr>)`, `r(<expr>)`; whitespace is ignored.
inline Dyadic parse(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size()) throw syntax_error(std::string("expected '") + c + "', got end of input", pos);
    if (text[pos] != c) throw syntax_error(std::string("expected '") + c + "', got '" + text[pos] + "'", pos);
    ++pos;
  };
  std::vector<Dir> path;
  for (;;) {
    skip();
    if (pos >= text.size()) throw syntax_error("expected c, l or r, got end of input", pos);
    const char c = text[pos];
    if (c == 'c') {
      ++pos;
      break;
    }
    if (c != 'l' && c != 'r') throw syntax_error(std::string("expected c, l or r, got '") + c + "'", pos);
    ++pos;
    expect('(');
    path.push_back(c == 'l' ? Dir::left : Dir::right);
  }
  for (std::size_t i = 0; i < path.size(); ++i) expect(')');
  skip();
  if (pos != text.size()) throw syntax_error("trailing input", pos);
  Dyadic d;
  for (auto it = path.rbegin(); it != path.rend(); ++it) d = *it == Dir::left ? Dyadic::left(d) : Dyadic::right(d);
  return d;
}

}  // namespace domwb::dyadic
