#pragma once

// Finite posets and the brute-force order-theoretic oracles built on them.
//
// Everything here is exhaustive: directed families are represented by their
// image subsets, and the way-below relation is decided by quantifying over
// every directed subset of the carrier. That is exponential in the carrier
// size and only meant for desk-scale posets (see kMaxOracleSize).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domwb/budget.hpp"
#include "domwb/error.hpp"

namespace domwb {

/// Largest carrier on which the subset-quantifying oracles will run.
inline constexpr std::size_t kMaxOracleSize = 20;

/// A subset of a finite carrier, as a membership bit vector.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t carrier_size) : bits_(carrier_size, false) {}

  static Subset from_mask(std::size_t carrier_size, std::uint64_t mask) {
    Subset s(carrier_size);
    for (std::size_t i = 0; i < carrier_size; ++i) s.bits_[i] = ((mask >> i) & 1U) != 0;
    return s;
  }
  static Subset of(std::size_t carrier_size, std::initializer_list<std::size_t> members) {
    Subset s(carrier_size);
    for (auto m : members) s.insert(m);
    return s;
  }
  static Subset all(std::size_t carrier_size) {
    Subset s(carrier_size);
    s.bits_.assign(carrier_size, true);
    return s;
  }

  std::size_t carrier_size() const noexcept { return bits_.size(); }
  bool contains(std::size_t x) const { return x < bits_.size() && bits_[x]; }
  void insert(std::size_t x) {
    if (x >= bits_.size()) throw out_of_range("subset member " + std::to_string(x) + " outside carrier");
    bits_[x] = true;
  }
  void erase(std::size_t x) {
    if (x < bits_.size()) bits_[x] = false;
  }
  bool empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }
  std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<bool> bits_;
};

/// A finite carrier with an explicit order table. Elements are identified
/// by index; names are labels only. Construction checks the table is
/// square but not the poset axioms, so malformed relations can still be
/// handed to check_poset_axioms for a report.
class FinPoset {
 public:
  FinPoset() = default;

  FinPoset(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq)
      : names_(std::move(names)), n_(names_.size()), leq_(n_ * n_, 0) {
    if (leq.size() != n_)
      throw structural_error("order table has " + std::to_string(leq.size()) + " rows for " +
                             std::to_string(n_) + " elements");
    for (std::size_t x = 0; x < n_; ++x) {
      if (leq[x].size() != n_)
        throw structural_error("order table row " + std::to_string(x) + " has " +
                               std::to_string(leq[x].size()) + " columns, expected " + std::to_string(n_));
      for (std::size_t y = 0; y < n_; ++y) leq_[x * n_ + y] = leq[x][y] ? 1 : 0;
    }
  }

  template <class Leq>
  static FinPoset from_relation(std::vector<std::string> names, Leq&& leq) {
    FinPoset p;
    p.n_ = names.size();
    p.names_ = std::move(names);
    p.leq_.assign(p.n_ * p.n_, 0);
    for (std::size_t x = 0; x < p.n_; ++x)
      for (std::size_t y = 0; y < p.n_; ++y) p.leq_[x * p.n_ + y] = leq(x, y) ? 1 : 0;
    return p;
  }

  /// Elements named 0..n-1 ordered as a chain.
  static FinPoset chain(std::size_t n) {
    return from_relation(index_names(n), [](std::size_t x, std::size_t y) { return x <= y; });
  }
  static FinPoset antichain(std::size_t n) {
    return from_relation(index_names(n), [](std::size_t x, std::size_t y) { return x == y; });
  }

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t x, std::size_t y) const { return leq_[x * n_ + y] != 0; }
  bool lt(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  const std::string& name(std::size_t x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  void check_index(std::size_t x) const {
    if (x >= n_) throw out_of_range("element index " + std::to_string(x) + " outside carrier of size " + std::to_string(n_));
  }

  friend bool operator==(const FinPoset& a, const FinPoset& b) { return a.n_ == b.n_ && a.leq_ == b.leq_; }

 private:
  static std::vector<std::string> index_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return names;
  }

  std::vector<std::string> names_;
  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
};

using PosetRef = std::shared_ptr<const FinPoset>;

inline PosetRef share(FinPoset p) { return std::make_shared<const FinPoset>(std::move(p)); }

// ---------------------------------------------------------------------------
// Axioms

struct AxiomReport {
  std::optional<std::size_t> reflexivity_failure;
  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_failure;
  std::optional<std::array<std::size_t, 3>> transitivity_failure;

  bool reflexive() const { return !reflexivity_failure; }
  bool antisymmetric() const { return !antisymmetry_failure; }
  bool transitive() const { return !transitivity_failure; }
  bool ok() const { return reflexive() && antisymmetric() && transitive(); }
};

/// Checks each poset axiom and records the first counterexample found.
inline AxiomReport check_poset_axioms(const FinPoset& p) {
  AxiomReport r;
  const auto n = p.size();
  for (std::size_t x = 0; x < n && !r.reflexivity_failure; ++x)
    if (!p.leq(x, x)) r.reflexivity_failure = x;
  for (std::size_t x = 0; x < n && !r.antisymmetry_failure; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (p.leq(x, y) && p.leq(y, x)) {
        r.antisymmetry_failure = std::pair{x, y};
        break;
      }
  for (std::size_t x = 0; x < n && !r.transitivity_failure; ++x)
    for (std::size_t y = 0; y < n && !r.transitivity_failure; ++y) {
      if (!p.leq(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (p.leq(y, z) && !p.leq(x, z)) {
          r.transitivity_failure = std::array{x, y, z};
          break;
        }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Directedness and suprema

/// Nonempty, and every pair of members has an upper bound inside the subset.
inline bool is_directed(const FinPoset& p, const Subset& s) {
  const auto m = s.members();
  if (m.empty()) return false;
  for (auto a : m)
    for (auto b : m) {
      const bool bounded = std::any_of(m.begin(), m.end(), [&](std::size_t c) { return p.leq(a, c) && p.leq(b, c); });
      if (!bounded) return false;
    }
  return true;
}

inline bool is_upper_bound(const FinPoset& p, const Subset& s, std::size_t u) {
  for (auto x : s.members())
    if (!p.leq(x, u)) return false;
  return true;
}

struct SupremumInfo {
  std::optional<std::size_t> value;
  bool directed = false;
};

/// Least upper bound of `s` if one exists, together with whether `s` was
/// directed. Works for arbitrary subsets so finite joins can reuse it.
inline SupremumInfo supremum_info(const FinPoset& p, const Subset& s) {
  SupremumInfo info;
  info.directed = is_directed(p, s);
  std::vector<std::size_t> ubs;
  for (std::size_t u = 0; u < p.size(); ++u)
    if (is_upper_bound(p, s, u)) ubs.push_back(u);
  for (auto u : ubs)
    if (std::all_of(ubs.begin(), ubs.end(), [&](std::size_t v) { return p.leq(u, v); })) {
      info.value = u;
      break;
    }
  return info;
}

inline std::size_t supremum(const FinPoset& p, const Subset& s) {
  const auto info = supremum_info(p, s);
  if (!info.value) throw no_supremum(info.directed);
  return *info.value;
}

/// Binary join, a hard error when it does not exist.
inline std::size_t join(const FinPoset& p, std::size_t a, std::size_t b) {
  Subset s(p.size());
  s.insert(a);
  s.insert(b);
  return supremum(p, s);
}

inline std::optional<std::size_t> least(const FinPoset& p) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    bool below_all = true;
    for (std::size_t y = 0; y < p.size() && below_all; ++y) below_all = p.leq(x, y);
    if (below_all) return x;
  }
  return std::nullopt;
}

inline std::size_t require_least(const FinPoset& p) {
  auto b = least(p);
  if (!b) throw not_pointed();
  return *b;
}

// ---------------------------------------------------------------------------
// Way-below

namespace detail {

inline void require_oracle_size(const FinPoset& p) {
  if (p.size() > kMaxOracleSize)
    throw budget_exceeded("way-below oracle over " + std::to_string(p.size()) + " elements", kMaxOracleSize);
}

/// Directed subsets paired with their supremum (on a finite poset every
/// directed subset has one).
inline std::vector<std::pair<Subset, std::size_t>> directed_subsets(const FinPoset& p) {
  require_oracle_size(p);
  std::vector<std::pair<Subset, std::size_t>> out;
  const std::uint64_t limit = std::uint64_t{1} << p.size();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    auto s = Subset::from_mask(p.size(), mask);
    if (!is_directed(p, s)) continue;
    auto sup = supremum_info(p, s).value;
    if (!sup) throw no_supremum(true);
    out.emplace_back(std::move(s), *sup);
  }
  return out;
}

inline bool way_below_against(const FinPoset& p, const std::vector<std::pair<Subset, std::size_t>>& dirs,
                              std::size_t x, std::size_t y) {
  for (const auto& [s, sup] : dirs) {
    if (!p.leq(y, sup)) continue;
    const auto m = s.members();
    if (std::none_of(m.begin(), m.end(), [&](std::size_t e) { return p.leq(x, e); })) return false;
  }
  return true;
}

}  // namespace detail

/// x ≪ y: every directed subset whose supremum is above y has a member above
/// x. Decided by enumerating all 2^n subsets.
inline bool way_below(const FinPoset& p, std::size_t x, std::size_t y) {
  p.check_index(x);
  p.check_index(y);
  return detail::way_below_against(p, detail::directed_subsets(p), x, y);
}

inline bool is_compact(const FinPoset& p, std::size_t x) { return way_below(p, x, x); }

/// The full way-below table, sharing one pass over the directed subsets.
class WayBelowTable {
 public:
  explicit WayBelowTable(const FinPoset& p) : n_(p.size()), table_(n_ * n_, 0) {
    const auto dirs = detail::directed_subsets(p);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) table_[x * n_ + y] = detail::way_below_against(p, dirs, x, y) ? 1 : 0;
  }
  bool operator()(std::size_t x, std::size_t y) const { return table_[x * n_ + y] != 0; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> table_;
};

// ---------------------------------------------------------------------------
// Monotone maps

/// An order-preserving map between finite posets, tabulated.
class MonotoneMap {
 public:
  MonotoneMap() = default;

  /// Builds the map and checks both that the table fits and that it is
  /// monotone.
  MonotoneMap(PosetRef dom, PosetRef cod, std::vector<std::size_t> table)
      : MonotoneMap(std::move(dom), std::move(cod), std::move(table), unchecked_tag{}) {
    if (table_.size() != dom_->size())
      throw structural_error("map table has " + std::to_string(table_.size()) + " entries for a domain of " +
                             std::to_string(dom_->size()));
    for (auto v : table_) cod_->check_index(v);
    if (auto w = monotonicity_witness())
      throw monotonicity_violation("map is not monotone at (" + dom_->name(w->first) + ", " + dom_->name(w->second) + ")");
  }

  static MonotoneMap identity(PosetRef p) {
    std::vector<std::size_t> t(p->size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return MonotoneMap(p, p, std::move(t), unchecked_tag{});
  }
  static MonotoneMap constant(PosetRef dom, PosetRef cod, std::size_t value) {
    cod->check_index(value);
    std::vector<std::size_t> t(dom->size(), value);
    return MonotoneMap(std::move(dom), std::move(cod), std::move(t), unchecked_tag{});
  }

  const FinPoset& dom() const { return *dom_; }
  const FinPoset& cod() const { return *cod_; }
  const PosetRef& dom_ref() const noexcept { return dom_; }
  const PosetRef& cod_ref() const noexcept { return cod_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }

  std::size_t operator()(std::size_t x) const {
    dom_->check_index(x);
    return table_[x];
  }

  /// A pair x ⊑ y with f(x) ⋢ f(y), if any.
  std::optional<std::pair<std::size_t, std::size_t>> monotonicity_witness() const {
    for (std::size_t x = 0; x < table_.size(); ++x)
      for (std::size_t y = 0; y < table_.size(); ++y)
        if (dom_->leq(x, y) && !cod_->leq(table_[x], table_[y])) return std::pair{x, y};
    return std::nullopt;
  }

  /// Extensional equality; posets are compared structurally.
  friend bool operator==(const MonotoneMap& f, const MonotoneMap& g) {
    return f.table_ == g.table_ && (f.cod_ == g.cod_ || *f.cod_ == *g.cod_);
  }

 private:
  struct unchecked_tag {};
  MonotoneMap(PosetRef dom, PosetRef cod, std::vector<std::size_t> table, unchecked_tag)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {}

  friend std::vector<MonotoneMap> enumerate_monotone_maps(const PosetRef&, const PosetRef&, std::size_t);

  PosetRef dom_;
  PosetRef cod_;
  std::vector<std::size_t> table_;
};

namespace detail {

/// Walks every monotone table P → Q in lexicographic order (position 0 most
/// significant), calling `visit` on each. `visit` returns false to stop.
template <class Visit>
void for_each_monotone_table(const FinPoset& p, const FinPoset& q, Visit&& visit) {
  const auto n = p.size();
  const auto m = q.size();
  std::vector<std::size_t> t(n, 0);
  bool stop = false;
  std::function<void(std::size_t)> step = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (!visit(t)) stop = true;
      return;
    }
    for (std::size_t v = 0; v < m && !stop; ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (p.leq(j, i) && !q.leq(t[j], v)) ok = false;
        if (p.leq(i, j) && !q.leq(v, t[j])) ok = false;
      }
      if (!ok) continue;
      t[i] = v;
      step(i + 1);
    }
  };
  step(0);
}

}  // namespace detail

/// All monotone maps P → Q, lexicographic in their tables. Throws
/// budget_exceeded rather than producing more than `budget` maps.
inline std::vector<MonotoneMap> enumerate_monotone_maps(const PosetRef& p, const PosetRef& q,
                                                        std::size_t budget = default_budget()) {
  std::vector<MonotoneMap> out;
  bool over = false;
  detail::for_each_monotone_table(*p, *q, [&](const std::vector<std::size_t>& t) {
    if (out.size() == budget) {
      over = true;
      return false;
    }
    out.push_back(MonotoneMap(p, q, t, MonotoneMap::unchecked_tag{}));
    return true;
  });
  if (over) throw budget_exceeded("monotone map enumeration", budget);
  return out;
}

/// Number of monotone maps P → Q, without materializing them.
inline std::size_t count_monotone_maps(const FinPoset& p, const FinPoset& q) {
  std::size_t count = 0;
  detail::for_each_monotone_table(p, q, [&](const std::vector<std::size_t>&) {
    ++count;
    return true;
  });
  return count;
}

// ---------------------------------------------------------------------------
// Bases

struct BasisEntry {
  std::size_t element = 0;
  bool directed = false;
  std::optional<std::size_t> supremum;
  bool way_below = false;
  bool ok() const { return directed && supremum == element && way_below; }
};

struct BasisReport {
  std::vector<BasisEntry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const BasisEntry& e) { return e.ok(); });
  }
  std::optional<std::size_t> first_failure() const {
    for (const auto& e : entries)
      if (!e.ok()) return e.element;
    return std::nullopt;
  }
};

/// Checks that `approx[x]` (indices into the basis carrier, mapped into `p`
/// by `beta`) is an approximating family for every x: its image is
/// directed, has supremum x, and consists of elements way below x.
inline BasisReport verify_basis(const FinPoset& p, const std::vector<std::size_t>& beta,
                                const std::vector<std::vector<std::size_t>>& approx) {
  if (approx.size() != p.size())
    throw structural_error("need one approximating family per element (" + std::to_string(p.size()) + "), got " +
                           std::to_string(approx.size()));
  for (auto b : beta) p.check_index(b);
  const WayBelowTable wb(p);
  BasisReport report;
  for (std::size_t x = 0; x < p.size(); ++x) {
    BasisEntry e;
    e.element = x;
    Subset image(p.size());
    bool all_below = true;
    for (auto i : approx[x]) {
      if (i >= beta.size()) throw out_of_range("basis index " + std::to_string(i) + " outside basis carrier");
      image.insert(beta[i]);
      all_below = all_below && wb(beta[i], x);
    }
    e.directed = is_directed(p, image);
    e.supremum = e.directed ? supremum_info(p, image).value : std::nullopt;
    e.way_below = all_below && !image.empty();
    report.entries.push_back(e);
  }
  return report;
}

/// The canonical approximating families {b : β(b) ⊑ x}.
inline std::vector<std::vector<std::size_t>> approximations_below(const FinPoset& p, const std::vector<std::size_t>& beta) {
  std::vector<std::vector<std::size_t>> approx(p.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t b = 0; b < beta.size(); ++b)
      if (p.leq(beta[b], x)) approx[x].push_back(b);
  return approx;
}

inline std::vector<std::size_t> identity_basis(const FinPoset& p) {
  std::vector<std::size_t> beta(p.size());
  for (std::size_t i = 0; i < beta.size(); ++i) beta[i] = i;
  return beta;
}

}  // namespace domwb
