#pragma once

// Untyped λ-terms and their denotations in truncated D∞.
//
//   term := lam | app        lam  := ("\" | "λ") ident "." term
//   app  := atom+            atom := ident | "(" term ")"
//
// A term denotes a TowerElement at truncation N:
//   Var x     ↦ env(x)
//   App(f, a) ↦ apply(⟦f⟧, ⟦a⟧)
//   Lam x. b  ↦ abstract(d ↦ ⟦b⟧ env[x := d])

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "domwb/tower.hpp"

namespace domwb::lambda {

class unbound_variable : public error {
 public:
  explicit unbound_variable(const std::string& name) : error("unbound variable: " + name), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class truncation_mismatch : public error {
 public:
  truncation_mismatch(std::size_t a, std::size_t b)
      : error("truncations differ: " + std::to_string(a) + " and " + std::to_string(b)) {}
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { var, lam, app };
  Kind kind;
  std::string name;  ///< variable, or the bound variable of a lam
  TermPtr fun;       ///< lam body, or app function
  TermPtr arg;       ///< app argument
};

inline TermPtr var(std::string name) { return std::make_shared<const Term>(Term{Term::Kind::var, std::move(name), {}, {}}); }
inline TermPtr lam(std::string name, TermPtr body) {
  return std::make_shared<const Term>(Term{Term::Kind::lam, std::move(name), std::move(body), {}});
}
inline TermPtr app(TermPtr f, TermPtr a) {
  return std::make_shared<const Term>(Term{Term::Kind::app, {}, std::move(f), std::move(a)});
}

// -- syntax --------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  TermPtr parse() {
    auto t = term();
    skip();
    if (pos_ != s_.size()) throw syntax_error("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_lambda() const {
    return (pos_ < s_.size() && s_[pos_] == '\\') ||
           (pos_ + 1 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xCE &&
            static_cast<unsigned char>(s_[pos_ + 1]) == 0xBB);
  }
  bool at_atom() const { return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('); }
  std::string describe() const { return pos_ >= s_.size() ? "end of input" : "'" + std::string(1, s_[pos_]) + "'"; }

  std::string ident() {
    skip();
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw syntax_error("expected identifier, got " + describe(), pos_);
    const auto start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  TermPtr term() {
    skip();
    if (at_lambda()) {
      pos_ += s_[pos_] == '\\' ? 1 : 2;
      auto x = ident();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '.') throw syntax_error("expected '.', got " + describe(), pos_);
      ++pos_;
      return lam(std::move(x), term());
    }
    auto t = atom();
    for (skip(); at_atom(); skip()) t = app(std::move(t), atom());
    return t;
  }

  TermPtr atom() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      auto t = term();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw syntax_error("expected ')', got " + describe(), pos_);
      ++pos_;
      return t;
    }
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw syntax_error("expected identifier or '(', got " + describe(), pos_);
    return var(ident());
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline TermPtr parse(const std::string& text) { return detail::Parser(text).parse(); }

/// Minimal parentheses; the result parses back to the same tree.
inline std::string to_string(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::var: return t->name;
    case Term::Kind::lam: return "\\" + t->name + "." + to_string(t->fun);
    case Term::Kind::app: {
      auto f = to_string(t->fun);
      if (t->fun->kind == Term::Kind::lam) f = "(" + f + ")";
      auto a = to_string(t->arg);
      if (t->arg->kind != Term::Kind::var) a = "(" + a + ")";
      return f + " " + a;
    }
  }
  return {};
}

/// Structural equality, bound names included.
inline bool same_tree(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::var: return a->name == b->name;
    case Term::Kind::lam: return a->name == b->name && same_tree(a->fun, b->fun);
    case Term::Kind::app: return same_tree(a->fun, b->fun) && same_tree(a->arg, b->arg);
  }
  return false;
}

inline std::set<std::string> free_vars(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::var: return {t->name};
    case Term::Kind::lam: {
      auto s = free_vars(t->fun);
      s.erase(t->name);
      return s;
    }
    case Term::Kind::app: {
      auto s = free_vars(t->fun);
      s.merge(free_vars(t->arg));
      return s;
    }
  }
  return {};
}

inline bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

namespace detail {
inline void all_names(const TermPtr& t, std::set<std::string>& out) {
  out.insert(t->name);
  if (t->fun) all_names(t->fun, out);
  if (t->arg) all_names(t->arg, out);
}
}  // namespace detail

/// `base` with the smallest numeric suffix avoiding `taken`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (std::size_t i = 1;; ++i) {
    auto candidate = base + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

/// t[x := s], renaming binders that would capture a free variable of s.
inline TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s) {
  switch (t->kind) {
    case Term::Kind::var: return t->name == x ? s : t;
    case Term::Kind::app: return app(substitute(t->fun, x, s), substitute(t->arg, x, s));
    case Term::Kind::lam: {
      if (t->name == x) return t;
      const auto fs = free_vars(s);
      if (!fs.contains(t->name) || !free_vars(t->fun).contains(x)) return lam(t->name, substitute(t->fun, x, s));
      std::set<std::string> taken = fs;
      detail::all_names(t->fun, taken);
      taken.insert(x);
      const auto y = fresh_name(t->name, taken);
      return lam(y, substitute(substitute(t->fun, t->name, var(y)), x, s));
    }
  }
  return t;
}

/// (λx.M) N ↦ M[x := N] at the root; nullptr when the root is not a redex.
inline TermPtr beta_root(const TermPtr& t) {
  if (t->kind != Term::Kind::app || t->fun->kind != Term::Kind::lam) return nullptr;
  return substitute(t->fun->fun, t->fun->name, t->arg);
}

/// Equality up to renaming of bound variables.
inline bool alpha_equivalent(const TermPtr& a, const TermPtr& b) {
  struct Cmp {
    std::vector<std::pair<std::string, std::string>> bound;
    bool run(const TermPtr& x, const TermPtr& y) {
      if (x->kind != y->kind) return false;
      switch (x->kind) {
        case Term::Kind::var:
          for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
            if (it->first == x->name || it->second == y->name) return it->first == x->name && it->second == y->name;
          }
          return x->name == y->name;
        case Term::Kind::lam: {
          bound.emplace_back(x->name, y->name);
          const bool r = run(x->fun, y->fun);
          bound.pop_back();
          return r;
        }
        case Term::Kind::app: return run(x->fun, y->fun) && run(x->arg, y->arg);
      }
      return false;
    }
  };
  return Cmp{}.run(a, b);
}

// -- semantics -----------------------------------------------------------------

using tower::Elem;
using tower::Tower;
using tower::TowerElement;
using tower::TowerFunction;
using tower::Verdict;
using Env = std::map<std::string, TowerElement>;

inline void require_same_truncation(const TowerElement& a, const TowerElement& b) {
  if (a.truncation() != b.truncation()) throw truncation_mismatch(a.truncation(), b.truncation());
}

/// σ applied to τ read at level k < N: ε_{k,∞}(σ_{k+1}(τ_k)). Increasing in k.
inline TowerElement apply_at_level(const Tower& t, const TowerElement& s, const TowerElement& x, std::size_t k) {
  require_same_truncation(s, x);
  const auto n = s.truncation();
  if (n == 0) throw precondition_violation("application needs truncation at least 1");
  if (k >= n) throw out_of_range("application level " + std::to_string(k) + " at truncation " + std::to_string(n));
  return tower::embed_to_tower(t, k, t.call(k, s[k + 1], x[k]), n);
}

/// σ · τ at truncation N: component k is π_{k,N-1}(σ_N(τ_{N-1})).
inline TowerElement apply(const Tower& t, const TowerElement& s, const TowerElement& x) {
  require_same_truncation(s, x);
  if (s.truncation() == 0) throw precondition_violation("application needs truncation at least 1");
  return apply_at_level(t, s, x, s.truncation() - 1);
}

/// The element whose level-(k+1) component is x ↦ f(ε_{k,∞}(x))_k, with
/// component 0 = π_0 of component 1. Non-monotone tables are rejected.
inline TowerElement abstract(const Tower& t, const TowerFunction& f, std::size_t truncation) {
  if (truncation == 0) throw precondition_violation("abstraction needs truncation at least 1");
  std::vector<Elem> c(truncation + 1);
  for (std::size_t k = 1; k <= truncation; ++k) c[k] = tower::pi_prime(t, k, f, truncation);
  c[0] = t.pi_elem(0, c[1]);
  return TowerElement(std::move(c));
}

inline TowerElement denote(const Tower& t, const TermPtr& term, const Env& env, std::size_t truncation) {
  switch (term->kind) {
    case Term::Kind::var: {
      auto it = env.find(term->name);
      if (it == env.end()) throw unbound_variable(term->name);
      if (it->second.truncation() != truncation) throw truncation_mismatch(it->second.truncation(), truncation);
      return it->second;
    }
    case Term::Kind::app:
      return apply(t, denote(t, term->fun, env, truncation), denote(t, term->arg, env, truncation));
    case Term::Kind::lam: {
      auto body = term->fun;
      auto name = term->name;
      return abstract(
          t,
          [t, body, name, env, truncation](const TowerElement& d) {
            Env inner = env;
            inner.insert_or_assign(name, d);
            return denote(t, body, inner, truncation);
          },
          truncation);
    }
  }
  throw precondition_violation("unknown term kind");
}

inline TowerElement denote(const Tower& t, const TermPtr& term, std::size_t truncation) {
  return denote(t, term, Env{}, truncation);
}

enum class Relation { equal, leq, geq, incomparable };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::leq: return "leq";
    case Relation::geq: return "geq";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

namespace detail {
/// Relation between components 0..upto of a and b. `exact` is cleared when
/// a comparison was only decided on samples.
inline Relation relate(const Tower& t, const TowerElement& a, const TowerElement& b, std::size_t upto, bool& exact) {
  bool le = true;
  bool ge = true;
  for (std::size_t n = 0; n <= upto; ++n) {
    const auto l = t.leq(n, a[n], b[n]);
    const auto g = t.leq(n, b[n], a[n]);
    le = le && tower::affirmative(l);
    ge = ge && tower::affirmative(g);
    exact = exact && l != Verdict::holds_on_samples && g != Verdict::holds_on_samples;
  }
  if (le && ge) return Relation::equal;
  if (le) return Relation::leq;
  if (ge) return Relation::geq;
  return Relation::incomparable;
}
}  // namespace detail

inline Relation relate(const Tower& t, const TowerElement& a, const TowerElement& b, bool& exact) {
  require_same_truncation(a, b);
  return detail::relate(t, a, b, a.truncation(), exact);
}

/// Outcome of comparing two closed terms at truncation N.
///
/// `relation` compares the truncation-N denotations. `stabilized` holds when
/// the truncation-(N+1) denotations are equal on components 0..N, i.e. one
/// more level of unfolding leaves nothing to tell the terms apart on the
/// shared prefix. `exact` is false if any comparison was decided on samples.
struct BetaVerdict {
  Relation relation = Relation::incomparable;
  Relation relation_next = Relation::incomparable;
  bool stabilized = false;
  bool exact = true;
};

inline BetaVerdict beta_compare(const Tower& t, const TermPtr& a, const TermPtr& b, std::size_t truncation) {
  BetaVerdict v;
  v.relation = relate(t, denote(t, a, truncation), denote(t, b, truncation), v.exact);
  const auto da = denote(t, a, truncation + 1);
  const auto db = denote(t, b, truncation + 1);
  v.relation_next = detail::relate(t, da, db, truncation, v.exact);
  v.stabilized = v.relation_next == Relation::equal;
  return v;
}

/// Whether the truncation-N denotation reappears unchanged as the prefix of
/// the truncation-(N+1) one.
inline bool prefix_stable(const Tower& t, const TermPtr& term, std::size_t truncation, bool& exact) {
  const auto now = denote(t, term, truncation);
  const auto next = denote(t, term, truncation + 1);
  return detail::relate(t, now, next, truncation, exact) == Relation::equal;
}

// -- corpus ----------------------------------------------------------------------

struct NamedTerm {
  std::string name;
  std::string source;
};

/// Closed terms shipped for the semantic checks.
inline std::vector<NamedTerm> corpus() {
  return {
      {"I", "\\x.x"},
      {"K", "\\x.\\y.x"},
      {"S", "\\x.\\y.\\z.x z (y z)"},
      {"Omega", "(\\x.x x) (\\x.x x)"},
      {"Yg", "(\\f.(\\x.f (x x)) (\\x.f (x x))) (\\h.\\x.x)"},
      {"zero", "\\f.\\x.x"},
      {"one", "\\f.\\x.f x"},
      {"two", "\\f.\\x.f (f x)"},
      {"three", "\\f.\\x.f (f (f x))"},
  };
}

}  // namespace domwb::lambda
