#pragma once

// Subsets of an initial segment of the naturals: Kuratowski-finite subsets
// given by a list, and decidable predicates inspected up to a bound.

#include <algorithm>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "domwb/error.hpp"

namespace domwb::powerset {

class empty_family : public error {
 public:
  empty_family() : error("directed union of an empty family") {}
};

class coverage_violation : public error {
 public:
  explicit coverage_violation(std::size_t missing)
      : error("element " + std::to_string(missing) + " is not covered by the family"), missing_(missing) {}
  std::size_t missing() const noexcept { return missing_; }

 private:
  std::size_t missing_;
};

/// The subset listed by `gen`, repetitions and order irrelevant.
class ListSubset {
 public:
  ListSubset() = default;
  explicit ListSubset(std::vector<std::size_t> gen) : gen_(std::move(gen)) {}

  const std::vector<std::size_t>& generators() const noexcept { return gen_; }
  bool contains(std::size_t x) const { return std::find(gen_.begin(), gen_.end(), x) != gen_.end(); }

  /// Distinct members in order of first occurrence.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (auto x : gen_)
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    return out;
  }
  /// One past the largest member; every member lies below it.
  std::size_t bound() const { return gen_.empty() ? 0 : *std::max_element(gen_.begin(), gen_.end()) + 1; }

  /// Extensional equality.
  friend bool operator==(const ListSubset& a, const ListSubset& b) {
    return std::all_of(a.gen_.begin(), a.gen_.end(), [&](std::size_t x) { return b.contains(x); }) &&
           std::all_of(b.gen_.begin(), b.gen_.end(), [&](std::size_t x) { return a.contains(x); });
  }

 private:
  std::vector<std::size_t> gen_;
};

/// A decidable subset of ℕ, only ever inspected below `bound`.
class BoundedPredicateSubset {
 public:
  BoundedPredicateSubset(std::size_t bound, std::function<bool(std::size_t)> pred)
      : bound_(bound), pred_(std::move(pred)) {}

  std::size_t bound() const noexcept { return bound_; }
  bool contains(std::size_t x) const { return pred_(x); }

 private:
  std::size_t bound_;
  std::function<bool(std::size_t)> pred_;
};

using NatSubset = std::variant<ListSubset, BoundedPredicateSubset>;

inline bool contains(const NatSubset& s, std::size_t x) {
  return std::visit([x](const auto& v) { return v.contains(x); }, s);
}

inline std::size_t inspection_bound(const NatSubset& s) {
  return std::visit([](const auto& v) { return v.bound(); }, s);
}

/// A ⊆ B, checked on every element below `bound`.
inline bool subset_below(const NatSubset& a, const NatSubset& b, std::size_t bound) {
  for (std::size_t x = 0; x < bound; ++x)
    if (contains(a, x) && !contains(b, x)) return false;
  return true;
}

inline ListSubset iota(std::vector<std::size_t> gen) { return ListSubset(std::move(gen)); }

/// Pointwise existential union. A family of lists yields the list of the
/// concatenation; otherwise a predicate inspected up to the largest bound.
inline NatSubset directed_union(const std::vector<NatSubset>& family) {
  if (family.empty()) throw empty_family();
  if (std::all_of(family.begin(), family.end(), [](const NatSubset& s) { return std::holds_alternative<ListSubset>(s); })) {
    std::vector<std::size_t> gen;
    for (const auto& s : family) {
      const auto& g = std::get<ListSubset>(s).generators();
      gen.insert(gen.end(), g.begin(), g.end());
    }
    return ListSubset(std::move(gen));
  }
  std::size_t bound = 0;
  for (const auto& s : family) bound = std::max(bound, inspection_bound(s));
  return BoundedPredicateSubset(bound, [family](std::size_t x) {
    return std::any_of(family.begin(), family.end(), [x](const NatSubset& s) { return contains(s, x); });
  });
}

inline bool is_directed_below(const std::vector<NatSubset>& family, std::size_t bound) {
  if (family.empty()) return false;
  for (const auto& a : family)
    for (const auto& b : family) {
      const bool bounded = std::any_of(family.begin(), family.end(), [&](const NatSubset& c) {
        return subset_below(a, c, bound) && subset_below(b, c, bound);
      });
      if (!bounded) return false;
    }
  return true;
}

/// Either a member of the family containing A, or for each member an
/// element of A it misses.
struct CompactnessVerdict {
  std::optional<std::size_t> containing_member;
  std::vector<std::size_t> missing;

  bool found() const noexcept { return containing_member.has_value(); }
};

/// Given a directed family covering A, finds the first member containing A
/// or certifies that none does. A listed A is checked member by member; a
/// predicate A is checked for coverage only below the family's inspection
/// bound (the part of ℕ the family has been generated over) and for
/// containment below the larger of the two bounds.
inline CompactnessVerdict compactness_witness(const NatSubset& a, const std::vector<NatSubset>& family) {
  if (family.empty()) throw empty_family();
  std::size_t family_bound = 0;
  for (const auto& s : family) family_bound = std::max(family_bound, inspection_bound(s));
  const std::size_t bound = std::max(family_bound, inspection_bound(a));
  if (!is_directed_below(family, bound)) throw domwb::not_directed("family of subsets is not directed");

  std::vector<std::size_t> elements;
  const auto* listed = std::get_if<ListSubset>(&a);
  if (listed != nullptr) {
    elements = listed->members();
  } else {
    for (std::size_t x = 0; x < bound; ++x)
      if (contains(a, x)) elements.push_back(x);
  }
  const auto un = directed_union(family);
  for (auto x : elements)
    if ((listed != nullptr || x < family_bound) && !contains(un, x)) throw coverage_violation(x);

  CompactnessVerdict v;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto miss = std::find_if(elements.begin(), elements.end(), [&](std::size_t x) { return !contains(family[i], x); });
    if (miss == elements.end()) {
      v.containing_member = i;
      v.missing.clear();
      return v;
    }
    v.missing.push_back(*miss);
  }
  return v;
}

/// A surjection Fin(n) ↠ A given as its enumeration. `complete` is false
/// when A is a predicate and only the part below its bound was inspected.
struct KuratowskiPresentation {
  std::size_t n = 0;
  std::vector<std::size_t> enumeration;
  bool complete = true;
};

inline KuratowskiPresentation is_kuratowski_finite_presentation(const NatSubset& a) {
  KuratowskiPresentation p;
  if (const auto* l = std::get_if<ListSubset>(&a)) {
    p.enumeration = l->members();
  } else {
    const auto& pred = std::get<BoundedPredicateSubset>(a);
    for (std::size_t x = 0; x < pred.bound(); ++x)
      if (pred.contains(x)) p.enumeration.push_back(x);
    p.complete = false;
  }
  p.n = p.enumeration.size();
  return p;
}

}  // namespace domwb::powerset
