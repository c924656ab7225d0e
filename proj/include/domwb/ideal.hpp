#pragma once

// Abstract bases and their rounded ideal completion.
//
// A basis supplies a carrier enumerated by depth, a decidable relation ≺,
// and optionally witnesses for nullary and binary interpolation. Ideals are
// either principal (↓x = {y : y ≺ x}) or generated by a ≺-ascending chain.
// Queries over infinite carriers are depth-bounded and answer in three
// values; see `subset` for which answers are exact.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "domwb/dyadic.hpp"
#include "domwb/finposet.hpp"

namespace domwb::idl {

enum class Tri { yes, no, unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

// -- bases ---------------------------------------------------------------------

/// `is_finite`: enumerate(d) is the whole carrier for every d.
/// `dense_total`: ≺ is a strict total order with interpolation, which makes
/// principal-ideal questions decidable from finitely many candidates.
template <class B>
concept AbstractBasis = requires(const B& b, const typename B::value_type& x, std::size_t d) {
  typename B::value_type;
  { b.enumerate(d) } -> std::same_as<std::vector<typename B::value_type>>;
  { b.prec(x, x) } -> std::same_as<bool>;
  { b.rank(x) } -> std::convertible_to<std::size_t>;
  { b.interpolant(x, x) } -> std::same_as<std::optional<typename B::value_type>>;
  { b.below_witness(x) } -> std::same_as<std::optional<typename B::value_type>>;
  { b.name(x) } -> std::convertible_to<std::string>;
  { B::is_finite } -> std::convertible_to<bool>;
  { B::dense_total } -> std::convertible_to<bool>;
};

/// A finite poset with ≺ := ⊑. Reflexivity supplies both interpolants.
class PreorderBasis {
 public:
  using value_type = std::size_t;
  static constexpr bool is_finite = true;
  static constexpr bool dense_total = false;

  explicit PreorderBasis(PosetRef p) : p_(std::move(p)) {}

  std::vector<std::size_t> enumerate(std::size_t) const {
    std::vector<std::size_t> all(p_->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  bool prec(std::size_t x, std::size_t y) const { return p_->leq(x, y); }
  std::size_t rank(std::size_t) const { return 0; }
  std::optional<std::size_t> interpolant(std::size_t x, std::size_t y) const {
    if (!prec(x, y)) return std::nullopt;
    return x;
  }
  std::optional<std::size_t> below_witness(std::size_t x) const { return x; }
  std::string name(std::size_t x) const { return p_->name(x); }
  const FinPoset& poset() const { return *p_; }
  const PosetRef& poset_ref() const { return p_; }

 private:
  PosetRef p_;
};

/// A finite carrier with an arbitrary relation; witnesses are searched for.
class RelationBasis {
 public:
  using value_type = std::size_t;
  static constexpr bool is_finite = true;
  static constexpr bool dense_total = false;

  RelationBasis(std::vector<std::string> names, std::vector<std::vector<bool>> rel)
      : names_(std::move(names)), rel_(std::move(rel)) {
    if (rel_.size() != names_.size()) throw structural_error("relation table does not match carrier");
    for (const auto& row : rel_)
      if (row.size() != names_.size()) throw structural_error("relation table is not square");
  }

  std::vector<std::size_t> enumerate(std::size_t) const {
    std::vector<std::size_t> all(names_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  bool prec(std::size_t x, std::size_t y) const { return rel_.at(x).at(y); }
  std::size_t rank(std::size_t) const { return 0; }
  std::optional<std::size_t> interpolant(std::size_t x, std::size_t y) const {
    for (std::size_t z = 0; z < names_.size(); ++z)
      if (prec(x, z) && prec(z, y)) return z;
    return std::nullopt;
  }
  std::optional<std::size_t> below_witness(std::size_t x) const {
    for (std::size_t y = 0; y < names_.size(); ++y)
      if (prec(y, x)) return y;
    return std::nullopt;
  }
  std::string name(std::size_t x) const { return names_.at(x); }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> rel_;
};

class DyadicBasis {
 public:
  using value_type = dyadic::Dyadic;
  static constexpr bool is_finite = false;
  static constexpr bool dense_total = true;

  std::vector<value_type> enumerate(std::size_t depth) const { return dyadic::enumerate(depth); }
  bool prec(const value_type& x, const value_type& y) const { return dyadic::prec(x, y); }
  std::size_t rank(const value_type& x) const { return x.depth(); }
  std::optional<value_type> interpolant(const value_type& x, const value_type& y) const {
    if (!prec(x, y)) return std::nullopt;
    return dyadic::density_witness(x, y);
  }
  std::optional<value_type> below_witness(const value_type& x) const { return dyadic::endpoint_witnesses(x).below; }
  std::string name(const value_type& x) const { return dyadic::to_string(x); }
};

template <AbstractBasis B>
struct BasisCheck {
  using T = typename B::value_type;
  std::size_t carrier_size = 0;
  std::optional<std::array<T, 3>> transitivity_failure;  ///< x ≺ y ≺ z, not x ≺ z
  std::optional<T> nullary_failure;                      ///< no y ≺ x supplied
  std::optional<std::pair<T, T>> binary_failure;         ///< x ≺ y without interpolant

  bool transitive() const { return !transitivity_failure; }
  bool nullary() const { return !nullary_failure; }
  bool binary() const { return !binary_failure; }
  bool ok() const { return transitive() && nullary() && binary(); }
};

/// Transitivity and both interpolation properties over enumerate(depth).
/// Supplied witnesses are verified, not trusted.
template <AbstractBasis B>
BasisCheck<B> check_abstract_basis(const B& basis, std::size_t depth) {
  BasisCheck<B> r;
  const auto xs = basis.enumerate(depth);
  r.carrier_size = xs.size();
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      if (!basis.prec(x, y)) continue;
      if (!r.binary_failure) {
        auto z = basis.interpolant(x, y);
        if (!z || !basis.prec(x, *z) || !basis.prec(*z, y)) r.binary_failure = std::pair{x, y};
      }
      if (r.transitivity_failure) continue;
      for (const auto& z : xs)
        if (basis.prec(y, z) && !basis.prec(x, z)) {
          r.transitivity_failure = std::array{x, y, z};
          break;
        }
    }
    if (!r.nullary_failure) {
      auto w = basis.below_witness(x);
      if (!w || !basis.prec(*w, x)) r.nullary_failure = x;
    }
  }
  return r;
}

// -- ideals --------------------------------------------------------------------

template <class T>
class Ideal {
 public:
  using Chain = std::function<T(std::size_t)>;

  static Ideal principal(T b) {
    Ideal i;
    i.generator_ = std::move(b);
    return i;
  }
  /// The down-closure of chain(0) ≺ chain(1) ≺ …; `length` bounds a finite
  /// chain. A finite chain denotes ↓chain(length-1) and is stored that way.
  static Ideal generated(Chain chain, std::optional<std::size_t> length = std::nullopt) {
    if (length) {
      if (*length == 0) throw precondition_violation("an ideal is inhabited: chain length 0");
      return principal(chain(*length - 1));
    }
    Ideal i;
    i.chain_ = std::move(chain);
    return i;
  }

  bool is_principal() const noexcept { return generator_.has_value(); }
  const T& generator() const {
    if (!generator_) throw precondition_violation("ideal is not principal");
    return *generator_;
  }
  T chain(std::size_t i) const {
    if (generator_) throw precondition_violation("principal ideal has no chain");
    return chain_(i);
  }

 private:
  Ideal() = default;
  std::optional<T> generator_;
  Chain chain_;
};

template <class T>
struct TriResult {
  Tri value = Tri::unknown;
  std::optional<T> witness;
};

/// b ∈ I. Exact for principal ideals; for chains, searches chain(0..depth).
template <AbstractBasis B>
bool member(const B& basis, const Ideal<typename B::value_type>& i, const typename B::value_type& b, std::size_t depth) {
  if (i.is_principal()) return basis.prec(b, i.generator());
  for (std::size_t k = 0; k <= depth; ++k)
    if (basis.prec(b, i.chain(k))) return true;
  return false;
}

/// I ⊆ J.
///
/// ↓x ⊆ ↓y is checked over enumerate(max(depth, rank x, rank y)) and is
/// exact on finite bases and on dense total ones, where y itself is the only
/// candidate counterexample. A `no` always carries a witness z ∈ I \ J.
/// With chains involved, `no` and `yes` are returned only when a finite
/// prefix settles the question; otherwise the answer is `unknown`.
template <AbstractBasis B>
TriResult<typename B::value_type> subset(const B& basis, const Ideal<typename B::value_type>& i,
                                         const Ideal<typename B::value_type>& j, std::size_t depth) {
  using T = typename B::value_type;
  if (i.is_principal() && j.is_principal()) {
    const T& x = i.generator();
    const T& y = j.generator();
    const auto bound = std::max({depth, static_cast<std::size_t>(basis.rank(x)), static_cast<std::size_t>(basis.rank(y))});
    for (const auto& z : basis.enumerate(bound))
      if (basis.prec(z, x) && !basis.prec(z, y)) return {Tri::no, z};
    return {(B::is_finite || B::dense_total) ? Tri::yes : Tri::unknown, std::nullopt};
  }
  if (i.is_principal()) {
    for (std::size_t k = 0; k <= depth; ++k)
      if (subset(basis, i, Ideal<T>::principal(j.chain(k)), depth).value == Tri::yes) return {Tri::yes, std::nullopt};
    return {Tri::unknown, std::nullopt};
  }
  for (std::size_t k = 0; k <= depth; ++k) {
    const auto step = Ideal<T>::principal(i.chain(k));
    const auto r = subset(basis, step, j, depth);
    if (r.value == Tri::no) return r;
  }
  return {Tri::unknown, std::nullopt};
}

/// Bounded probe: every z in enumerate(depth) that is a member of I at that
/// depth is a member of J at that depth.
template <AbstractBasis B>
bool subset_to_depth(const B& basis, const Ideal<typename B::value_type>& i, const Ideal<typename B::value_type>& j,
                     std::size_t depth) {
  for (const auto& z : basis.enumerate(depth))
    if (member(basis, i, z, depth) && !member(basis, j, z, depth)) return false;
  return true;
}

template <AbstractBasis B>
bool equivalent_to_depth(const B& basis, const Ideal<typename B::value_type>& i, const Ideal<typename B::value_type>& j,
                         std::size_t depth) {
  return subset_to_depth(basis, i, j, depth) && subset_to_depth(basis, j, i, depth);
}

/// I ≪ J iff some x ∈ J has I ⊆ ↓x. On success the witness is that x.
///
/// A failed search is a definite `no` when the basis is finite, and when the
/// basis is dense and total and I = ↓a: there ↓a ⊆ ↓x iff a ⪯ x, so x = a
/// settles it whenever a ∈ J, and no x can work otherwise.
template <AbstractBasis B>
TriResult<typename B::value_type> way_below_ideal(const B& basis, const Ideal<typename B::value_type>& i,
                                                  const Ideal<typename B::value_type>& j, std::size_t depth) {
  using T = typename B::value_type;
  std::vector<T> candidates = basis.enumerate(depth);
  if (i.is_principal() && B::dense_total) candidates.push_back(i.generator());
  for (const auto& x : candidates) {
    if (!member(basis, j, x, depth)) continue;
    if (subset(basis, i, Ideal<T>::principal(x), depth).value == Tri::yes) return {Tri::yes, x};
  }
  const bool exact = B::is_finite ? j.is_principal() : (B::dense_total && i.is_principal() && j.is_principal());
  return {exact ? Tri::no : Tri::unknown, std::nullopt};
}

/// ↓x approximated from below: a₀ = below_witness(x), a_{k+1} = interpolant(a_k, x).
template <AbstractBasis B>
typename Ideal<typename B::value_type>::Chain approximant_chain(const B& basis, typename B::value_type x) {
  using T = typename B::value_type;
  struct Cache {
    std::mutex mutex;
    std::vector<T> values;
  };
  auto cache = std::make_shared<Cache>();
  return [basis, x = std::move(x), cache](std::size_t k) {
    std::lock_guard lock(cache->mutex);
    while (cache->values.size() <= k) {
      std::optional<T> next = cache->values.empty() ? basis.below_witness(x) : basis.interpolant(cache->values.back(), x);
      if (!next) throw precondition_violation("basis supplies no interpolant below " + basis.name(x));
      cache->values.push_back(*next);
    }
    return cache->values[k];
  };
}

/// The union of a family of ideals that is directed up to `depth`, as a
/// chain: step k is an upper bound, inside the union, of step k-1 and of
/// every member's k-th approximant. Throws not_directed if the family is
/// not directed at that depth or no such bound is found.
template <AbstractBasis B>
Ideal<typename B::value_type> ideal_sup(const B& basis, const std::vector<Ideal<typename B::value_type>>& family,
                                        std::size_t depth) {
  using T = typename B::value_type;
  if (family.empty()) throw not_directed("empty family of ideals");
  for (const auto& a : family)
    for (const auto& b : family) {
      const bool bounded = std::any_of(family.begin(), family.end(), [&](const Ideal<T>& c) {
        return subset_to_depth(basis, a, c, depth) && subset_to_depth(basis, b, c, depth);
      });
      if (!bounded) throw not_directed("family of ideals is not directed at depth " + std::to_string(depth));
    }

  std::vector<typename Ideal<T>::Chain> chains;
  for (const auto& m : family)
    chains.push_back(m.is_principal() ? approximant_chain(basis, m.generator())
                                      : typename Ideal<T>::Chain([m](std::size_t k) { return m.chain(k); }));

  struct Cache {
    std::mutex mutex;
    std::vector<T> values;
  };
  auto cache = std::make_shared<Cache>();
  return Ideal<T>::generated([basis, family, chains, cache, depth](std::size_t k) {
    std::lock_guard lock(cache->mutex);
    while (cache->values.size() <= k) {
      const std::size_t step = cache->values.size();
      std::vector<T> below;
      for (const auto& c : chains) below.push_back(c(step));
      if (!cache->values.empty()) below.push_back(cache->values.back());
      auto in_union = [&](const T& u) {
        return std::any_of(family.begin(), family.end(),
                           [&](const Ideal<T>& m) { return member(basis, m, u, std::max(depth, step)); });
      };
      auto dominates = [&](const T& u) {
        return std::all_of(below.begin(), below.end(), [&](const T& b) { return basis.prec(b, u); });
      };
      std::optional<T> bound;
      for (const auto& c : chains)
        if (dominates(c(step + 1)) && in_union(c(step + 1))) {
          bound = c(step + 1);
          break;
        }
      if (!bound)
        for (const auto& u : basis.enumerate(std::max(depth, step)))
          if (dominates(u) && in_union(u)) {
            bound = u;
            break;
          }
      if (!bound) throw not_directed("no upper bound inside the union at step " + std::to_string(step));
      cache->values.push_back(*bound);
    }
    return cache->values[k];
  });
}

template <class T>
struct RoundednessReport {
  std::size_t checked = 0;
  std::optional<T> failure;  ///< a member with no strictly larger member
  bool rounded() const { return !failure; }
};

/// For every x ∈ enumerate(depth) with in(x), searches y with in(y), x ≺ y.
/// `hint(x)` is tried first.
template <AbstractBasis B, class In, class Hint>
RoundednessReport<typename B::value_type> roundedness_check(const B& basis, In in, Hint hint, std::size_t depth) {
  RoundednessReport<typename B::value_type> r;
  const auto xs = basis.enumerate(depth);
  for (const auto& x : xs) {
    if (!in(x)) continue;
    ++r.checked;
    if (auto h = hint(x); h && in(*h) && basis.prec(x, *h)) continue;
    const bool found = std::any_of(xs.begin(), xs.end(), [&](const auto& y) { return in(y) && basis.prec(x, y); });
    if (!found) {
      r.failure = x;
      return r;
    }
  }
  return r;
}

/// Roundedness of a down-set given by a predicate.
template <AbstractBasis B, class In>
RoundednessReport<typename B::value_type> roundedness_check(const B& basis, In in, std::size_t depth) {
  using T = typename B::value_type;
  return roundedness_check(basis, in, [](const T&) { return std::optional<T>(); }, depth);
}

/// Roundedness of an ideal: interpolants toward the generator, or later
/// chain elements, supply the witnesses.
template <AbstractBasis B>
RoundednessReport<typename B::value_type> roundedness_check(const B& basis, const Ideal<typename B::value_type>& i,
                                                            std::size_t depth) {
  using T = typename B::value_type;
  auto in = [&](const T& x) { return member(basis, i, x, depth); };
  if (i.is_principal())
    return roundedness_check(basis, in, [&](const T& x) { return basis.interpolant(x, i.generator()); }, depth);
  // A member x ≺ chain(k), k ≤ depth, is matched by chain(k), itself a
  // member because chain(k) ≺ chain(k+1).
  RoundednessReport<T> r;
  for (const auto& x : basis.enumerate(depth)) {
    if (!in(x)) continue;
    ++r.checked;
    bool found = false;
    for (std::size_t k = 0; k <= depth && !found; ++k)
      found = basis.prec(x, i.chain(k)) && basis.prec(i.chain(k), i.chain(k + 1));
    if (!found) {
      r.failure = x;
      return r;
    }
  }
  return r;
}

// -- finite carriers: the whole completion -----------------------------------

/// Idl(B) for a finite basis: every inhabited, ≺-down-closed subset in which
/// any two members have a common strict upper bound, ordered by ⊆.
struct IdealPoset {
  std::vector<Subset> ideals;
  PosetRef poset;
  std::vector<std::optional<std::size_t>> principal;  ///< index of ↓x, if that is an ideal

  std::optional<std::size_t> find(const Subset& s) const {
    for (std::size_t i = 0; i < ideals.size(); ++i)
      if (ideals[i] == s) return i;
    return std::nullopt;
  }
};

template <AbstractBasis B>
  requires(B::is_finite && std::same_as<typename B::value_type, std::size_t>)
IdealPoset enumerate_ideals(const B& basis) {
  const auto carrier = basis.enumerate(0);
  const std::size_t n = carrier.size();
  if (n > kMaxOracleSize) throw out_of_range("carrier too large to enumerate ideals");
  IdealPoset out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto s = Subset::from_mask(n, mask);
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      if (!s.contains(x)) continue;
      for (std::size_t y = 0; y < n && ok; ++y)
        if (basis.prec(y, x) && !s.contains(y)) ok = false;
    }
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        if (!s.contains(x) || !s.contains(y)) continue;
        bool bounded = false;
        for (std::size_t z = 0; z < n && !bounded; ++z) bounded = s.contains(z) && basis.prec(x, z) && basis.prec(y, z);
        ok = bounded;
      }
    if (ok) out.ideals.push_back(s);
  }
  std::vector<std::string> names;
  for (const auto& s : out.ideals) {
    std::string nm = "{";
    bool first = true;
    for (auto x : s.members()) {
      if (!first) nm += ",";
      nm += basis.name(x);
      first = false;
    }
    names.push_back(nm + "}");
  }
  const auto& ideals = out.ideals;
  out.poset = share(FinPoset::from_relation(std::move(names), [&](std::size_t a, std::size_t b) {
    for (auto x : ideals[a].members())
      if (!ideals[b].contains(x)) return false;
    return true;
  }));
  for (std::size_t x = 0; x < n; ++x) {
    Subset down(n);
    for (std::size_t y = 0; y < n; ++y)
      if (basis.prec(y, x)) down.insert(y);
    out.principal.push_back(out.find(down));
  }
  return out;
}

/// The extension of a monotone f : P → D along x ↦ ↓x: an ideal goes to the
/// supremum of f over it. Throws no_supremum when D lacks that supremum.
inline MonotoneMap free_extension_idl(const PosetRef& p, const MonotoneMap& f) {
  if (f.dom().size() != p->size()) throw domain_mismatch("map is not defined on the basis poset");
  const auto idl = enumerate_ideals(PreorderBasis(p));
  std::vector<std::size_t> t;
  for (const auto& ideal : idl.ideals) {
    Subset image(f.cod().size());
    for (auto x : ideal.members()) image.insert(f(x));
    t.push_back(supremum(f.cod(), image));
  }
  return MonotoneMap(idl.poset, f.cod_ref(), std::move(t));
}

struct RetractReport {
  IdealPoset ideals;
  std::vector<std::size_t> section;  ///< s(x): index of {b : b ≪ x}
  std::vector<std::size_t> retraction;  ///< r(I) = sup I
  std::optional<std::size_t> roundtrip_failure;  ///< x with r(s(x)) ≠ x
  bool section_monotone = true;
  bool retraction_monotone = true;
  std::optional<std::size_t> deflation_failure;  ///< ideal I with s(r(I)) ⊄ I

  bool ok() const {
    return !roundtrip_failure && section_monotone && retraction_monotone && !deflation_failure;
  }
};

/// D as a retract of Idl(D, ⊑): s(x) = {b : b ≪ x}, r(I) = ⊔I.
inline RetractReport retract_roundtrip(const PosetRef& d) {
  RetractReport rep;
  rep.ideals = enumerate_ideals(PreorderBasis(d));
  const auto& ip = *rep.ideals.poset;
  for (std::size_t x = 0; x < d->size(); ++x) {
    Subset approx(d->size());
    for (std::size_t b = 0; b < d->size(); ++b)
      if (way_below(*d, b, x)) approx.insert(b);
    const auto idx = rep.ideals.find(approx);
    if (!idx) throw structural_error("{b : b << " + d->name(x) + "} is not an ideal");
    rep.section.push_back(*idx);
  }
  for (const auto& ideal : rep.ideals.ideals) rep.retraction.push_back(supremum(*d, ideal));
  for (std::size_t x = 0; x < d->size(); ++x)
    if (rep.retraction[rep.section[x]] != x && !rep.roundtrip_failure) rep.roundtrip_failure = x;
  for (std::size_t x = 0; x < d->size(); ++x)
    for (std::size_t y = 0; y < d->size(); ++y)
      if (d->leq(x, y) && !ip.leq(rep.section[x], rep.section[y])) rep.section_monotone = false;
  for (std::size_t i = 0; i < ip.size(); ++i) {
    for (std::size_t j = 0; j < ip.size(); ++j)
      if (ip.leq(i, j) && !d->leq(rep.retraction[i], rep.retraction[j])) rep.retraction_monotone = false;
    if (!ip.leq(rep.section[rep.retraction[i]], i) && !rep.deflation_failure) rep.deflation_failure = i;
  }
  return rep;
}

}  // namespace domwb::idl
