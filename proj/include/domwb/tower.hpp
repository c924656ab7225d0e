#pragma once

// The sequential D∞ system.
//
//   D_0     = lifting of the one-point set  {bot, *}
//   D_{n+1} = D_n^{D_n}
//
//   eps_0(x)     = the constant map at x          pi_0(f)     = f(bot)
//   eps_{n+1}(f) = eps_n ∘ f ∘ pi_n               pi_{n+1}(f) = pi_n ∘ f ∘ eps_n
//
// Levels up to the tabulation cutoff K are enumerated finite posets and
// their elements are indices. Level K+1 elements are monotone tables over
// D_K, which keeps order and equality exact without enumerating D_{K+1}.
// Above that, elements are closures; order and equality there are only
// decided on a fixed sample of arguments and say so in their Verdict.
//
// D∞ itself is represented by π-compatible prefixes (σ_0, ..., σ_N).

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "domwb/exponential.hpp"
#include "domwb/finposet.hpp"
#include "domwb/lifting.hpp"

namespace domwb::tower {

/// Outcome of an order or equality query. `holds_on_samples` is only ever
/// produced above the level where elements are tables.
enum class Verdict { holds, fails, holds_on_samples };

inline Verdict operator&&(Verdict a, Verdict b) {
  if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
  if (a == Verdict::holds_on_samples || b == Verdict::holds_on_samples) return Verdict::holds_on_samples;
  return Verdict::holds;
}

inline bool affirmative(Verdict v) { return v != Verdict::fails; }

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::holds_on_samples: return "holds_on_samples";
  }
  return "?";
}

class Elem;

/// A function D_{n-1} → D_{n-1} standing for an element of D_n above the
/// cutoff. Exactly one representation is populated.
struct Fn {
  std::vector<std::size_t> table;
  std::function<Elem(const Elem&)> closure;
  bool is_table() const noexcept { return !closure; }
};

/// An element of D_n.
class Elem {
 public:
  Elem() = default;
  static Elem at(std::size_t level, std::size_t index) {
    Elem e;
    e.level_ = level;
    e.index_ = index;
    return e;
  }
  static Elem function(std::size_t level, std::shared_ptr<const Fn> fn) {
    Elem e;
    e.level_ = level;
    e.fn_ = std::move(fn);
    return e;
  }

  std::size_t level() const noexcept { return level_; }
  bool tabulated() const noexcept { return fn_ == nullptr; }
  std::size_t index() const {
    if (fn_) throw precondition_violation("element of D_" + std::to_string(level_) + " is not tabulated");
    return index_;
  }
  const Fn& fn() const {
    if (!fn_) throw precondition_violation("element of D_" + std::to_string(level_) + " is tabulated");
    return *fn_;
  }
  const std::shared_ptr<const Fn>& fn_ptr() const noexcept { return fn_; }

 private:
  std::size_t level_ = 0;
  std::size_t index_ = 0;
  std::shared_ptr<const Fn> fn_;
};

class Tower {
 public:
  /// Tabulates D_0..D_{tab_limit}. `levels` is the working truncation N and
  /// bounds nothing below the cutoff; levels above the cutoff are built on
  /// demand. Throws budget_exceeded when a level would exceed `budget`
  /// elements.
  static Tower build(std::size_t levels, std::size_t tab_limit, std::size_t budget = default_budget()) {
    if (tab_limit > levels)
      throw precondition_violation("tabulation limit " + std::to_string(tab_limit) + " exceeds levels " +
                                   std::to_string(levels));
    auto impl = std::make_shared<Impl>();
    impl->levels = levels;
    impl->tab_limit = tab_limit;
    impl->posets.push_back(share(lifted_poset(std::vector<std::string>{"*"})));
    impl->exps.push_back(nullptr);
    for (std::size_t n = 1; n <= tab_limit; ++n) {
      try {
        impl->exps.push_back(std::make_shared<const ExponentialPoset>(impl->posets[n - 1], impl->posets[n - 1], budget));
      } catch (const budget_exceeded&) {
        throw budget_exceeded("tabulating D_" + std::to_string(n), budget);
      }
      impl->posets.push_back(impl->exps[n]->poset_ref());
    }
    for (std::size_t n = 0; n < tab_limit; ++n) {
      impl->eps.push_back(impl->tabulate_eps(n));
      impl->pi.push_back(impl->tabulate_pi(n));
    }
    return Tower(std::move(impl));
  }

  std::size_t levels() const noexcept { return impl_->levels; }
  std::size_t tab_limit() const noexcept { return impl_->tab_limit; }

  /// D_n as a finite poset, n ≤ tab_limit.
  const FinPoset& level(std::size_t n) const { return *level_ref(n); }
  const PosetRef& level_ref(std::size_t n) const {
    require_tabulated(n);
    return impl_->posets[n];
  }
  /// D_n as the exponential of D_{n-1}, 1 ≤ n ≤ tab_limit.
  const ExponentialPoset& exponential(std::size_t n) const {
    require_tabulated(n);
    if (n == 0) throw out_of_range("D_0 is not an exponential");
    return *impl_->exps[n];
  }

  /// Tabulated ε_n : D_n → D_{n+1} and π_n : D_{n+1} → D_n, n < tab_limit.
  const MonotoneMap& eps(std::size_t n) const {
    require_tabulated(n + 1);
    return impl_->eps[n];
  }
  const MonotoneMap& pi(std::size_t n) const {
    require_tabulated(n + 1);
    return impl_->pi[n];
  }

  /// ε_{n,m} = ε_{m-1} ∘ … ∘ ε_n as a table, n ≤ m ≤ tab_limit.
  MonotoneMap eps_nm(std::size_t n, std::size_t m) const {
    check_range(n, m);
    auto result = MonotoneMap::identity(level_ref(n));
    for (std::size_t l = n; l < m; ++l) result = compose(result, impl_->eps[l]);
    return result;
  }
  /// π_{n,m} = π_n ∘ … ∘ π_{m-1} as a table, n ≤ m ≤ tab_limit.
  MonotoneMap pi_nm(std::size_t n, std::size_t m) const {
    check_range(n, m);
    auto result = MonotoneMap::identity(level_ref(m));
    for (std::size_t l = m; l > n; --l) result = compose(result, impl_->pi[l - 1]);
    return result;
  }

  // -- elements at any level -------------------------------------------------

  Elem element(std::size_t n, std::size_t index) const {
    level(n).check_index(index);
    return Elem::at(n, index);
  }

  Elem bottom(std::size_t n) const {
    const auto k = tab_limit();
    if (n <= k) return Elem::at(n, 0);
    if (n == k + 1) {
      auto fn = std::make_shared<Fn>();
      fn->table.assign(level(k).size(), 0);
      return Elem::function(n, std::move(fn));
    }
    auto below = bottom(n - 1);
    return closure(n, [below](const Elem&) { return below; });
  }

  /// f(x) for f ∈ D_{n+1} read as a function on D_n.
  Elem call(std::size_t n, const Elem& f, const Elem& x) const {
    if (f.level() != n + 1 || x.level() != n)
      throw domain_mismatch("applying an element of D_" + std::to_string(f.level()) + " to an element of D_" +
                            std::to_string(x.level()) + " at level " + std::to_string(n));
    const auto k = tab_limit();
    if (n + 1 <= k) return Elem::at(n, impl_->exps[n + 1]->map(f.index()).table()[x.index()]);
    const auto& fn = f.fn();
    if (fn.is_table()) return Elem::at(n, fn.table[x.index()]);
    return fn.closure(x);
  }

  /// ε_n : D_n → D_{n+1}.
  Elem eps_elem(std::size_t n, const Elem& x) const {
    require_level(x, n);
    if (n + 1 <= tab_limit()) return Elem::at(n + 1, impl_->eps[n].table()[x.index()]);
    if (n == 0) return function(1, [x](const Elem&) { return x; });
    Tower self = *this;
    return function(n + 1, [self, n, x](const Elem& y) {
      return self.eps_elem(n - 1, self.call(n - 1, x, self.pi_elem(n - 1, y)));
    });
  }

  /// π_n : D_{n+1} → D_n.
  Elem pi_elem(std::size_t n, const Elem& f) const {
    require_level(f, n + 1);
    if (n + 1 <= tab_limit()) return Elem::at(n, impl_->pi[n].table()[f.index()]);
    if (n == 0) return call(0, f, bottom(0));
    Tower self = *this;
    return function(n, [self, n, f](const Elem& y) {
      return self.pi_elem(n - 1, self.call(n, f, self.eps_elem(n - 1, y)));
    });
  }

  /// ε_{n,m}(x) at any levels.
  Elem eps_up(std::size_t n, std::size_t m, const Elem& x) const {
    if (n > m) throw precondition_violation("eps_up needs n <= m");
    Elem y = x;
    for (std::size_t l = n; l < m; ++l) y = eps_elem(l, y);
    return y;
  }
  /// π_{n,m}(x) at any levels.
  Elem pi_down(std::size_t n, std::size_t m, const Elem& x) const {
    if (n > m) throw precondition_violation("pi_down needs n <= m");
    Elem y = x;
    for (std::size_t l = m; l > n; --l) y = pi_elem(l - 1, y);
    return y;
  }

  /// The element of D_n (n ≥ 1) given by a function on D_{n-1}. Tabulated
  /// levels look the table up among the enumerated monotone maps; at K+1 the
  /// table is kept as is; above that the function is kept as a memoized
  /// closure. Throws monotonicity_violation when a table is not monotone.
  template <class F>
  Elem function(std::size_t n, F&& fun) const {
    if (n == 0) throw precondition_violation("D_0 has no function reading");
    const auto k = tab_limit();
    if (n <= k + 1) {
      const auto& dom = level(n - 1);
      std::vector<std::size_t> t(dom.size());
      for (std::size_t y = 0; y < t.size(); ++y) {
        Elem v = fun(Elem::at(n - 1, y));
        require_level(v, n - 1);
        t[y] = v.index();
      }
      if (n <= k) {
        if (auto i = impl_->exps[n]->find(t)) return Elem::at(n, *i);
        throw monotonicity_violation("table for D_" + std::to_string(n) + " is not monotone");
      }
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
          if (dom.leq(a, b) && !dom.leq(t[a], t[b]))
            throw monotonicity_violation("table for D_" + std::to_string(n) + " is not monotone at (" +
                                         dom.name(a) + ", " + dom.name(b) + ")");
      auto fn = std::make_shared<Fn>();
      fn->table = std::move(t);
      return Elem::function(n, std::move(fn));
    }
    return closure(n, std::forward<F>(fun));
  }

  // -- order ------------------------------------------------------------------

  Verdict leq(std::size_t n, const Elem& a, const Elem& b) const {
    require_level(a, n);
    require_level(b, n);
    const auto k = tab_limit();
    if (n <= k) return level(n).leq(a.index(), b.index()) ? Verdict::holds : Verdict::fails;
    if (a.fn_ptr() == b.fn_ptr()) return Verdict::holds;
    if (n == k + 1) {
      const auto& dk = level(k);
      const auto& ta = a.fn().table;
      const auto& tb = b.fn().table;
      for (std::size_t y = 0; y < ta.size(); ++y)
        if (!dk.leq(ta[y], tb[y])) return Verdict::fails;
      return Verdict::holds;
    }
    Verdict v = Verdict::holds_on_samples;
    for (const auto& s : samples(n - 1)) {
      v = v && leq(n - 1, call(n - 1, a, s), call(n - 1, b, s));
      if (v == Verdict::fails) return v;
    }
    return v;
  }

  Verdict equal(std::size_t n, const Elem& a, const Elem& b) const { return leq(n, a, b) && leq(n, b, a); }

  /// Sample arguments at level m > tab_limit: images of D_K and of the step
  /// functions over D_K.
  std::vector<Elem> samples(std::size_t m) const {
    const auto k = tab_limit();
    if (m <= k) {
      std::vector<Elem> all;
      for (std::size_t i = 0; i < level(m).size(); ++i) all.push_back(Elem::at(m, i));
      return all;
    }
    std::vector<Elem> out;
    for (std::size_t i = 0; i < level(k).size(); ++i) out.push_back(eps_up(k, m, Elem::at(k, i)));
    const auto& dk = level(k);
    std::vector<std::vector<std::size_t>> seen;
    for (std::size_t a = 0; a < dk.size(); ++a)
      for (std::size_t b = 0; b < dk.size(); ++b) {
        std::vector<std::size_t> t(dk.size());
        for (std::size_t x = 0; x < dk.size(); ++x) t[x] = dk.leq(a, x) ? b : 0;
        if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
        seen.push_back(t);
        auto fn = std::make_shared<Fn>();
        fn->table = t;
        out.push_back(eps_up(k + 1, m, Elem::function(k + 1, std::move(fn))));
      }
    return out;
  }

  std::string name(const Elem& x) const {
    const auto k = tab_limit();
    if (x.level() <= k) return level(x.level()).name(x.index());
    if (x.level() == k + 1) {
      std::string s = "[";
      const auto& t = x.fn().table;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i != 0) s += ",";
        s += level(k).name(t[i]);
      }
      return s + "]";
    }
    return "<fn D_" + std::to_string(x.level()) + ">";
  }

  void require_level(const Elem& x, std::size_t n) const {
    if (x.level() != n)
      throw domain_mismatch("expected an element of D_" + std::to_string(n) + ", got one of D_" + std::to_string(x.level()));
  }

 private:
  struct Impl {
    std::size_t levels = 0;
    std::size_t tab_limit = 0;
    std::vector<PosetRef> posets;
    std::vector<std::shared_ptr<const ExponentialPoset>> exps;
    std::vector<MonotoneMap> eps;
    std::vector<MonotoneMap> pi;

    MonotoneMap tabulate_eps(std::size_t n) const {
      const auto& dn = *posets[n];
      std::vector<std::size_t> t(dn.size());
      for (std::size_t x = 0; x < dn.size(); ++x) {
        std::vector<std::size_t> g;
        if (n == 0) {
          g.assign(dn.size(), x);
        } else {
          const auto& f = exps[n]->map(x);
          for (std::size_t y = 0; y < dn.size(); ++y) g.push_back(eps[n - 1].table()[f.table()[pi[n - 1].table()[y]]]);
        }
        t[x] = *exps[n + 1]->find(g);
      }
      return MonotoneMap(posets[n], posets[n + 1], std::move(t));
    }

    MonotoneMap tabulate_pi(std::size_t n) const {
      const auto& dn1 = *posets[n + 1];
      std::vector<std::size_t> t(dn1.size());
      for (std::size_t f = 0; f < dn1.size(); ++f) {
        const auto& h = exps[n + 1]->map(f);
        if (n == 0) {
          t[f] = h.table()[0];
          continue;
        }
        std::vector<std::size_t> g;
        for (std::size_t y = 0; y < posets[n - 1]->size(); ++y) g.push_back(pi[n - 1].table()[h.table()[eps[n - 1].table()[y]]]);
        t[f] = *exps[n]->find(g);
      }
      return MonotoneMap(posets[n + 1], posets[n], std::move(t));
    }
  };

  explicit Tower(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  void require_tabulated(std::size_t n) const {
    if (n > tab_limit())
      throw out_of_range("D_" + std::to_string(n) + " is above the tabulation limit " + std::to_string(tab_limit()));
  }
  void check_range(std::size_t n, std::size_t m) const {
    if (n > m) throw precondition_violation("composite needs n <= m, got " + std::to_string(n) + " > " + std::to_string(m));
    require_tabulated(m);
  }

  /// Closure-backed element of D_n, n ≥ K+2. Results are memoized when the
  /// argument is a table (level K+1), the only case with a cheap exact key.
  template <class F>
  Elem closure(std::size_t n, F&& fun) const {
    struct Memo {
      std::mutex mutex;
      std::unordered_map<std::vector<std::size_t>, Elem, detail::TableHash> values;
    };
    const bool memoize = n == tab_limit() + 2;
    auto memo = std::make_shared<Memo>();
    auto fn = std::make_shared<Fn>();
    fn->closure = [fun = std::function<Elem(const Elem&)>(std::forward<F>(fun)), memo, memoize, n](const Elem& x) {
      if (x.level() + 1 != n)
        throw domain_mismatch("closure for D_" + std::to_string(n) + " applied to an element of D_" + std::to_string(x.level()));
      if (!memoize) return fun(x);
      const auto& key = x.fn().table;
      {
        std::lock_guard lock(memo->mutex);
        if (auto it = memo->values.find(key); it != memo->values.end()) return it->second;
      }
      Elem v = fun(x);
      std::lock_guard lock(memo->mutex);
      memo->values.emplace(key, v);
      return v;
    };
    return Elem::function(n, std::move(fn));
  }

  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Truncated D∞ elements

/// A π-compatible prefix (σ_0, ..., σ_N) of an element of D∞.
class TowerElement {
 public:
  TowerElement() = default;
  explicit TowerElement(std::vector<Elem> components) : components_(std::move(components)) {
    if (components_.empty()) throw precondition_violation("a tower element needs at least one component");
    for (std::size_t n = 0; n < components_.size(); ++n)
      if (components_[n].level() != n) throw domain_mismatch("component " + std::to_string(n) + " has the wrong level");
  }

  std::size_t truncation() const noexcept { return components_.size() - 1; }
  const Elem& operator[](std::size_t n) const {
    if (n >= components_.size())
      throw out_of_range("component " + std::to_string(n) + " beyond truncation " + std::to_string(truncation()));
    return components_[n];
  }
  const std::vector<Elem>& components() const noexcept { return components_; }

 private:
  std::vector<Elem> components_;
};

inline TowerElement bottom_element(const Tower& t, std::size_t truncation) {
  std::vector<Elem> c;
  for (std::size_t n = 0; n <= truncation; ++n) c.push_back(t.bottom(n));
  return TowerElement(std::move(c));
}

/// ε_{n,∞}(x) cut at `truncation`: component j is ε_{n,j}(x) for j ≥ n and
/// π_{j,n}(x) below n.
inline TowerElement embed_to_tower(const Tower& t, std::size_t n, const Elem& x, std::size_t truncation) {
  if (n > truncation)
    throw out_of_range("level " + std::to_string(n) + " beyond truncation " + std::to_string(truncation));
  t.require_level(x, n);
  std::vector<Elem> c(truncation + 1);
  c[n] = x;
  for (std::size_t j = n; j > 0; --j) c[j - 1] = t.pi_elem(j - 1, c[j]);
  for (std::size_t j = n; j < truncation; ++j) c[j + 1] = t.eps_elem(j, c[j]);
  return TowerElement(std::move(c));
}

/// π_{n,∞}(σ) = σ_n.
inline const Elem& project(const TowerElement& s, std::size_t n) { return s[n]; }

/// π_n(σ_{n+1}) = σ_n for every n below the truncation.
inline Verdict is_compatible(const Tower& t, const TowerElement& s) {
  Verdict v = Verdict::holds;
  for (std::size_t n = 0; n < s.truncation(); ++n) v = v && t.equal(n, t.pi_elem(n, s[n + 1]), s[n]);
  return v;
}

namespace detail {
inline void same_truncation(const TowerElement& a, const TowerElement& b) {
  if (a.truncation() != b.truncation())
    throw domain_mismatch("tower elements at truncations " + std::to_string(a.truncation()) + " and " +
                          std::to_string(b.truncation()));
}
}  // namespace detail

/// Componentwise order.
inline Verdict leq(const Tower& t, const TowerElement& a, const TowerElement& b) {
  detail::same_truncation(a, b);
  Verdict v = Verdict::holds;
  for (std::size_t n = 0; n <= a.truncation() && v != Verdict::fails; ++n) v = v && t.leq(n, a[n], b[n]);
  return v;
}

inline Verdict equal(const Tower& t, const TowerElement& a, const TowerElement& b) {
  return leq(t, a, b) && leq(t, b, a);
}

/// Componentwise supremum of a family directed in every component. On a
/// finite family that is the componentwise greatest member.
inline TowerElement tower_sup(const Tower& t, const std::vector<TowerElement>& family) {
  if (family.empty()) throw not_directed("empty family of tower elements");
  const auto trunc = family.front().truncation();
  for (const auto& s : family) detail::same_truncation(family.front(), s);
  std::vector<Elem> c;
  for (std::size_t n = 0; n <= trunc; ++n) {
    const Elem* top = nullptr;
    for (const auto& cand : family) {
      bool dominates = true;
      for (const auto& other : family) dominates = dominates && affirmative(t.leq(n, other[n], cand[n]));
      if (dominates) {
        top = &cand[n];
        break;
      }
    }
    if (top == nullptr) throw not_directed("family is not directed at component " + std::to_string(n));
    c.push_back(*top);
  }
  return TowerElement(std::move(c));
}

using TowerFunction = std::function<TowerElement(const TowerElement&)>;

/// ε'_m : D_m → (D∞ → D∞) at truncation N. For m ≥ 1 an element f of
/// D_m = D_{m-1}^{D_{m-1}} acts by σ ↦ ε_{m-1,∞}(f(σ_{m-1})); for m = 0 the
/// element is first embedded into D_1.
inline TowerFunction eps_prime(const Tower& t, std::size_t m, const Elem& x, std::size_t truncation) {
  t.require_level(x, m);
  if (m == 0) return eps_prime(t, 1, t.eps_elem(0, x), truncation);
  if (m - 1 > truncation) throw out_of_range("eps_prime level beyond truncation");
  return [t, m, x, truncation](const TowerElement& s) {
    return embed_to_tower(t, m - 1, t.call(m - 1, x, s[m - 1]), truncation);
  };
}

/// π'_m : (D∞ → D∞) → D_m at truncation N. For m ≥ 1 the element of D_m is
/// x ↦ π_{m-1,∞}(F(ε_{m-1,∞}(x))); for m = 0 it is π_0 of the level-1 one.
/// Non-monotone results surface as monotonicity_violation.
inline Elem pi_prime(const Tower& t, std::size_t m, const TowerFunction& f, std::size_t truncation) {
  if (m == 0) return t.pi_elem(0, pi_prime(t, 1, f, truncation));
  if (m - 1 > truncation) throw out_of_range("pi_prime level beyond truncation");
  return t.function(m, [&t, m, f, truncation](const Elem& x) {
    return f(embed_to_tower(t, m - 1, x, truncation))[m - 1];
  });
}

// ---------------------------------------------------------------------------
// Step functions and the compact basis

/// (a ⇒ b) ∈ D_{m+1}: x ↦ b if a ⊑ x, else bottom. a, b ∈ D_m, m ≤ tab_limit.
inline Elem step_function(const Tower& t, std::size_t m, std::size_t a, std::size_t b) {
  const auto& dm = t.level(m);
  dm.check_index(a);
  dm.check_index(b);
  return t.function(m + 1, [&dm, m, a, b](const Elem& x) { return Elem::at(m, dm.leq(a, x.index()) ? b : 0); });
}

struct StepBasis {
  std::vector<std::size_t> elements;  ///< indices into D_n
  BasisReport report;
};

/// The compact basis of D_n: for n = 0 both elements; for n ≥ 1 every
/// finite join of step functions over D_{n-1}. Joins are taken in D_n and
/// a missing join is a hard error.
inline StepBasis step_basis(const Tower& t, std::size_t n) {
  const auto& dn = t.level(n);
  StepBasis basis;
  if (n == 0) {
    basis.elements = identity_basis(dn);
  } else {
    std::vector<bool> in(dn.size(), false);
    for (std::size_t a = 0; a < t.level(n - 1).size(); ++a)
      for (std::size_t b = 0; b < t.level(n - 1).size(); ++b) in[step_function(t, n - 1, a, b).index()] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t x = 0; x < dn.size(); ++x)
        for (std::size_t y = 0; y < dn.size(); ++y)
          if (in[x] && in[y]) {
            const auto j = join(dn, x, y);
            if (!in[j]) in[j] = grew = true;
          }
    }
    for (std::size_t x = 0; x < dn.size(); ++x)
      if (in[x]) basis.elements.push_back(x);
  }
  basis.report = verify_basis(dn, basis.elements, approximations_below(dn, basis.elements));
  return basis;
}

/// ⋁{(a ⇒ b) : (a ⇒ b) ⊑ f} for f ∈ D_{m+1}.
inline std::size_t join_of_steps_below(const Tower& t, std::size_t m, std::size_t f) {
  const auto& dm1 = t.level(m + 1);
  Subset below(dm1.size());
  for (std::size_t a = 0; a < t.level(m).size(); ++a)
    for (std::size_t b = 0; b < t.level(m).size(); ++b) {
      const auto s = step_function(t, m, a, b).index();
      if (dm1.leq(s, f)) below.insert(s);
    }
  return supremum(dm1, below);
}

}  // namespace domwb::tower
