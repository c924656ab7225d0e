#pragma once

// The exponential E^D of finite posets: all monotone maps D → E, ordered
// pointwise. On finite posets monotone and Scott-continuous coincide, so this
// is the dcpo of continuous functions.

#include <string>
#include <unordered_map>
#include <vector>

#include "domwb/finposet.hpp"

namespace domwb {

namespace detail {
struct TableHash {
  std::size_t operator()(const std::vector<std::size_t>& t) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : t) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
}  // namespace detail

inline bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.table().size() != g.table().size()) throw domain_mismatch("pointwise comparison of maps with different domains");
  for (std::size_t x = 0; x < f.table().size(); ++x)
    if (!f.cod().leq(f.table()[x], g.table()[x])) return false;
  return true;
}

/// Renders a map as the bracketed list of its values' names, e.g. "[bot,top]".
inline std::string map_name(const MonotoneMap& f) {
  std::string s = "[";
  for (std::size_t x = 0; x < f.table().size(); ++x) {
    if (x != 0) s += ",";
    s += f.cod().name(f.table()[x]);
  }
  return s + "]";
}

class ExponentialPoset {
 public:
  ExponentialPoset(PosetRef dom, PosetRef cod, std::size_t budget = default_budget())
      : dom_(std::move(dom)), cod_(std::move(cod)), maps_(enumerate_monotone_maps(dom_, cod_, budget)) {
    std::vector<std::string> names;
    names.reserve(maps_.size());
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      names.push_back(map_name(maps_[i]));
      index_.emplace(maps_[i].table(), i);
    }
    poset_ = share(FinPoset::from_relation(std::move(names), [this](std::size_t a, std::size_t b) {
      return pointwise_leq(maps_[a], maps_[b]);
    }));
  }

  const FinPoset& dom() const { return *dom_; }
  const FinPoset& cod() const { return *cod_; }
  const PosetRef& dom_ref() const noexcept { return dom_; }
  const PosetRef& cod_ref() const noexcept { return cod_; }

  /// The exponential itself as a finite poset; element i is maps()[i].
  const FinPoset& poset() const { return *poset_; }
  const PosetRef& poset_ref() const noexcept { return poset_; }

  std::size_t size() const noexcept { return maps_.size(); }
  const std::vector<MonotoneMap>& maps() const noexcept { return maps_; }
  const MonotoneMap& map(std::size_t i) const { return maps_.at(i); }

  /// Index of the map with the given table, if it is monotone.
  std::optional<std::size_t> find(const std::vector<std::size_t>& table) const {
    auto it = index_.find(table);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const MonotoneMap& f) const {
    auto i = find(f.table());
    if (!i) throw domain_mismatch("map does not belong to this exponential");
    return *i;
  }

 private:
  PosetRef dom_;
  PosetRef cod_;
  std::vector<MonotoneMap> maps_;
  std::unordered_map<std::vector<std::size_t>, std::size_t, detail::TableHash> index_;
  PosetRef poset_;
};

inline ExponentialPoset build_exponential(const PosetRef& dom, const PosetRef& cod,
                                          std::size_t budget = default_budget()) {
  return ExponentialPoset(dom, cod, budget);
}

inline std::size_t eval(const MonotoneMap& f, std::size_t x) { return f(x); }

/// g ∘ f, i.e. first f then g.
inline MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.cod().size() != g.dom().size() || (f.cod_ref() != g.dom_ref() && !(f.cod() == g.dom())))
    throw domain_mismatch("codomain of the first map is not the domain of the second");
  std::vector<std::size_t> t(f.table().size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = g.table()[f.table()[x]];
  return MonotoneMap(f.dom_ref(), g.cod_ref(), std::move(t));
}

/// Pointwise supremum of a family of maps that is directed in the
/// exponential order.
inline MonotoneMap pointwise_sup(const std::vector<MonotoneMap>& maps) {
  if (maps.empty()) throw not_directed("empty family of maps");
  const auto& first = maps.front();
  for (const auto& f : maps)
    if (f.table().size() != first.table().size()) throw domain_mismatch("maps with different domains");
  for (const auto& f : maps)
    for (const auto& g : maps) {
      bool bounded = false;
      for (const auto& h : maps)
        if (pointwise_leq(f, h) && pointwise_leq(g, h)) {
          bounded = true;
          break;
        }
      if (!bounded) throw not_directed("family of maps is not directed pointwise");
    }
  std::vector<std::size_t> t(first.table().size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    Subset values(first.cod().size());
    for (const auto& f : maps) values.insert(f.table()[x]);
    t[x] = supremum(first.cod(), values);
  }
  return MonotoneMap(first.dom_ref(), first.cod_ref(), std::move(t));
}

}  // namespace domwb
