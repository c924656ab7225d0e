#pragma once

// Lifting of a finite set in the decidable-proposition fragment. A partial
// element is either undefined or defined with a value; the order puts
// undefined below everything and leaves defined values incomparable.

#include <optional>
#include <string>
#include <vector>

#include "domwb/finposet.hpp"

namespace domwb {

/// A partial element of a finite set {0,..,n-1}.
class Partial {
 public:
  static Partial undefined() { return Partial(); }
  static Partial defined(std::size_t x) { return Partial(x); }

  bool is_defined() const noexcept { return value_.has_value(); }
  std::size_t value() const {
    if (!value_) throw precondition_violation("value of an undefined partial element");
    return *value_;
  }

  friend bool operator==(const Partial&, const Partial&) = default;

 private:
  Partial() = default;
  explicit Partial(std::size_t x) : value_(x) {}
  std::optional<std::size_t> value_;
};

/// l ⊑ m iff l being defined forces l = m.
inline bool lift_order(const Partial& l, const Partial& m) { return !l.is_defined() || l == m; }

inline Partial eta(std::size_t x) { return Partial::defined(x); }

/// Position of a partial element in the lifted poset: 0 is undefined,
/// x + 1 is defined(x).
inline std::size_t lifted_index(const Partial& p) { return p.is_defined() ? p.value() + 1 : 0; }

inline Partial partial_at(std::size_t index) {
  return index == 0 ? Partial::undefined() : Partial::defined(index - 1);
}

/// The lifted poset on a set with the given element names.
inline FinPoset lifted_poset(const std::vector<std::string>& set) {
  std::vector<std::string> names{"bot"};
  names.insert(names.end(), set.begin(), set.end());
  return FinPoset::from_relation(std::move(names), [](std::size_t a, std::size_t b) {
    return lift_order(partial_at(a), partial_at(b));
  });
}

inline FinPoset lifted_poset(std::size_t set_size) {
  std::vector<std::string> set;
  for (std::size_t i = 0; i < set_size; ++i) set.push_back(std::to_string(i));
  return lifted_poset(set);
}

/// The unique strict monotone extension of f : X → E along eta.
/// `f[x]` is an element index of `e`.
inline MonotoneMap free_extension(const std::vector<std::size_t>& f, const PosetRef& e) {
  const auto bot = least(*e);
  if (!bot) throw not_pointed();
  std::vector<std::size_t> t{*bot};
  for (auto v : f) {
    e->check_index(v);
    t.push_back(v);
  }
  return MonotoneMap(share(lifted_poset(f.size())), e, std::move(t));
}

/// D with a fresh bottom adjoined at index 0; element d of D moves to d + 1.
inline FinPoset lift_dcpo(const FinPoset& d) {
  std::vector<std::string> names{"bot'"};
  names.insert(names.end(), d.names().begin(), d.names().end());
  return FinPoset::from_relation(std::move(names), [&d](std::size_t a, std::size_t b) {
    if (a == 0) return true;
    if (b == 0) return false;
    return d.leq(a - 1, b - 1);
  });
}

/// Extension of a monotone f : D → E (E pointed) to lift_dcpo(D), strict at
/// the new bottom.
inline MonotoneMap free_extension_dcpo(const MonotoneMap& f) {
  const auto bot = least(f.cod());
  if (!bot) throw not_pointed();
  std::vector<std::size_t> t{*bot};
  t.insert(t.end(), f.table().begin(), f.table().end());
  return MonotoneMap(share(lift_dcpo(f.dom())), f.cod_ref(), std::move(t));
}

/// Join of the family indexed by a decidable proposition: val when the
/// proposition holds, bottom otherwise.
inline std::size_t subsingleton_sup(const FinPoset& e, bool cond, std::size_t val) {
  const auto bot = least(e);
  if (!bot) throw not_pointed();
  e.check_index(val);
  return cond ? val : *bot;
}

}  // namespace domwb
