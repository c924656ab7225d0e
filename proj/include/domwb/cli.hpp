#pragma once

// Command-line surface. Exit codes: 0 success, 1 a checked property failed
// (the JSON carries a counterexample), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "domwb/dyadic.hpp"
#include "domwb/ideal.hpp"
#include "domwb/lambda.hpp"
#include "domwb/lifting.hpp"
#include "domwb/poset_io.hpp"
#include "domwb/tower.hpp"

namespace domwb::cli {

using json = nlohmann::ordered_json;

inline constexpr int kOk = 0;
inline constexpr int kPropertyFailure = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline void render_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "text")
    render_text(j, "", out);
  else
    out << j.dump(2) << "\n";
}

inline std::size_t element(const FinPoset& p, const std::string& name) {
  if (auto i = p.find(name)) return *i;
  throw structural_error("no element named '" + name + "'");
}

inline json tower_dump(const tower::Tower& t) {
  json levels = json::array();
  for (std::size_t n = 0; n <= t.tab_limit(); ++n) {
    const auto& p = t.level(n);
    json rows = json::array();
    for (std::size_t x = 0; x < p.size(); ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < p.size(); ++y) row.push_back(p.leq(x, y));
      rows.push_back(std::move(row));
    }
    levels.push_back({{"level", n}, {"size", p.size()}, {"elements", p.names()}, {"leq", std::move(rows)}});
  }
  json eps = json::array();
  json pi = json::array();
  for (std::size_t n = 0; n < t.tab_limit(); ++n) {
    eps.push_back({{"from", n}, {"to", n + 1}, {"table", t.eps(n).table()}});
    pi.push_back({{"from", n + 1}, {"to", n}, {"table", t.pi(n).table()}});
  }
  return {{"levels", std::move(levels)}, {"eps", std::move(eps)}, {"pi", std::move(pi)}};
}

/// EP laws, strictness and functoriality on every tabulated level.
inline json tower_laws(const tower::Tower& t, bool& ok) {
  json laws = json::array();
  auto record = [&](const std::string& law, std::size_t n, std::optional<std::string> counterexample) {
    json entry = {{"law", law}, {"level", n}, {"pass", !counterexample}};
    if (counterexample) {
      entry["counterexample"] = *counterexample;
      ok = false;
    }
    laws.push_back(std::move(entry));
  };
  for (std::size_t n = 0; n < t.tab_limit(); ++n) {
    const auto& dn = t.level(n);
    const auto& dn1 = t.level(n + 1);
    std::optional<std::string> bad;
    for (std::size_t x = 0; x < dn.size() && !bad; ++x)
      if (t.pi(n)(t.eps(n)(x)) != x) bad = dn.name(x);
    record("pi.eps = id", n, bad);
    bad.reset();
    for (std::size_t f = 0; f < dn1.size() && !bad; ++f)
      if (!dn1.leq(t.eps(n)(t.pi(n)(f)), f)) bad = dn1.name(f);
    record("eps.pi deflationary", n, bad);
    bad.reset();
    if (t.pi(n)(0) != 0) bad = dn1.name(0);
    record("pi strict", n, bad);
  }
  for (std::size_t k = 0; k <= t.tab_limit(); ++k)
    for (std::size_t n = k; n <= t.tab_limit(); ++n)
      for (std::size_t m = n; m <= t.tab_limit(); ++m) {
        std::optional<std::string> bad;
        if (compose(t.eps_nm(k, n), t.eps_nm(n, m)).table() != t.eps_nm(k, m).table())
          bad = "eps " + std::to_string(k) + "," + std::to_string(n) + "," + std::to_string(m);
        else if (compose(t.pi_nm(n, m), t.pi_nm(k, n)).table() != t.pi_nm(k, m).table())
          bad = "pi " + std::to_string(k) + "," + std::to_string(n) + "," + std::to_string(m);
        if (bad || (k == 0 && n == 0)) record("functoriality k<=n<=m", m, bad);
      }
  return laws;
}

inline json dyadic_checks(std::size_t depth, bool& ok) {
  using namespace dyadic;
  const auto xs = enumerate(depth);
  json report = json::array();
  auto record = [&](const std::string& name, std::optional<std::string> bad) {
    json e = {{"property", name}, {"depth", depth}, {"pass", !bad}};
    if (bad) {
      e["counterexample"] = *bad;
      ok = false;
    }
    report.push_back(std::move(e));
  };
  std::optional<std::string> bad;
  for (const auto& x : xs)
    for (const auto& y : xs) {
      const int cases = int(prec(x, y)) + int(x == y) + int(prec(y, x));
      if (cases != 1 && !bad) bad = to_string(x) + " " + to_string(y);
    }
  record("trichotomy", bad);
  bad.reset();
  for (const auto& x : xs)
    if (prec(x, x) && !bad) bad = to_string(x);
  record("irreflexivity", bad);
  bad.reset();
  for (const auto& x : xs)
    for (const auto& y : xs) {
      if (!prec(x, y) || bad) continue;
      for (const auto& z : xs)
        if (prec(y, z) && !prec(x, z)) {
          bad = to_string(x) + " " + to_string(y) + " " + to_string(z);
          break;
        }
    }
  record("transitivity", bad);
  bad.reset();
  for (const auto& x : xs)
    for (const auto& y : xs)
      if (prec(x, y) != (to_rational(x) < to_rational(y)) && !bad) bad = to_string(x) + " " + to_string(y);
  record("prec iff value <", bad);
  bad.reset();
  for (const auto& x : xs)
    for (const auto& y : xs) {
      if (!prec(x, y) || bad) continue;
      const auto z = density_witness(x, y);
      if (!prec(x, z) || !prec(z, y)) bad = to_string(x) + " " + to_string(y);
    }
  record("density", bad);
  bad.reset();
  for (const auto& x : xs) {
    const auto w = endpoint_witnesses(x);
    if ((!prec(w.below, x) || !prec(x, w.above)) && !bad) bad = to_string(x);
  }
  record("no endpoints", bad);
  return report;
}

inline std::vector<std::size_t> parse_index_list(const std::string& s, const FinPoset& target) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(element(target, item));
  return out;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Domain-theory workbench: finite posets, the D-infinity tower, lambda denotations, ideals, dyadics.",
               "domwb"};
  app.require_subcommand(1);
  std::string format = "json";
  std::function<int()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* sub = parent->add_subcommand(name, desc);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->require_subcommand(1);
    return sub;
  };

  // poset
  auto* poset = group("poset", "Finite posets given as JSON files");
  std::string file;
  std::string a_name;
  std::string b_name;
  auto* poset_check = leaf(poset, "check", "Check the partial-order axioms");
  poset_check->add_option("file", file, "Poset JSON")->required();
  poset_check->callback([&] {
    action = [&] {
      const auto p = load_poset(file);
      const auto r = check_poset_axioms(p);
      json j = {{"size", p.size()}, {"ok", r.ok()}};
      if (r.reflexivity_failure) j["reflexivity_failure"] = p.name(*r.reflexivity_failure);
      if (r.antisymmetry_failure)
        j["antisymmetry_failure"] = {p.name(r.antisymmetry_failure->first), p.name(r.antisymmetry_failure->second)};
      if (r.transitivity_failure) {
        const auto& [x, y, z] = *r.transitivity_failure;
        j["transitivity_failure"] = {p.name(x), p.name(y), p.name(z)};
      }
      detail::emit(j, format, out);
      return r.ok() ? kOk : kPropertyFailure;
    };
  });
  auto* poset_wb = leaf(poset, "waybelow", "Decide x << y by the finite oracle");
  poset_wb->add_option("file", file, "Poset JSON")->required();
  poset_wb->add_option("x", a_name, "Element name")->required();
  poset_wb->add_option("y", b_name, "Element name")->required();
  poset_wb->callback([&] {
    action = [&] {
      const auto p = load_poset(file);
      const auto x = detail::element(p, a_name);
      const auto y = detail::element(p, b_name);
      detail::emit({{"x", a_name}, {"y", b_name}, {"way_below", way_below(p, x, y)}, {"leq", p.leq(x, y)}}, format, out);
      return kOk;
    };
  });
  auto* poset_dot = leaf(poset, "export-dot", "Hasse diagram in DOT");
  poset_dot->add_option("file", file, "Poset JSON")->required();
  poset_dot->callback([&] {
    action = [&] {
      const auto dot = to_dot(load_poset(file));
      if (format == "text")
        out << dot;
      else
        out << json{{"dot", dot}}.dump(2) << "\n";
      return kOk;
    };
  });

  // tower
  auto* tower_cmd = group("tower", "The D-infinity tower");
  std::size_t levels = 2;
  std::optional<std::size_t> tab_limit;
  std::string out_file;
  auto make_tower = [&] { return tower::Tower::build(levels, tab_limit.value_or(std::min<std::size_t>(levels, 2))); };
  auto* tower_build = leaf(tower_cmd, "build", "Tabulate levels and dump them");
  tower_build->add_option("--levels", levels, "Truncation N")->required();
  tower_build->add_option("--tab-limit", tab_limit, "Highest tabulated level (default min(N, 2))");
  tower_build->add_option("--out", out_file, "Write the dump here instead of stdout");
  tower_build->callback([&] {
    action = [&] {
      const auto t = make_tower();
      auto dump = detail::tower_dump(t);
      if (out_file.empty()) {
        detail::emit(dump, format, out);
      } else {
        std::ofstream f(out_file);
        if (!f) throw structural_error("cannot write " + out_file);
        f << dump.dump(2) << "\n";
        json sizes = json::array();
        for (std::size_t n = 0; n <= t.tab_limit(); ++n) sizes.push_back(t.level(n).size());
        detail::emit({{"written", out_file}, {"sizes", sizes}}, format, out);
      }
      return kOk;
    };
  });
  auto* tower_check = leaf(tower_cmd, "check", "Check EP laws and functoriality");
  tower_check->add_option("--levels", levels, "Truncation N")->required();
  tower_check->add_option("--tab-limit", tab_limit, "Highest tabulated level (default min(N, 2))");
  tower_check->callback([&] {
    action = [&] {
      const auto t = make_tower();
      bool ok = true;
      json sizes = json::array();
      for (std::size_t n = 0; n <= t.tab_limit(); ++n) sizes.push_back(t.level(n).size());
      auto laws = detail::tower_laws(t, ok);
      detail::emit({{"levels", levels}, {"tab_limit", t.tab_limit()}, {"sizes", sizes}, {"ok", ok}, {"laws", laws}},
                   format, out);
      return ok ? kOk : kPropertyFailure;
    };
  });

  // lam
  auto* lam_cmd = group("lam", "Lambda-term denotations in truncated D-infinity");
  std::string term_a;
  std::string term_b;
  auto lam_tower = [&] { return tower::Tower::build(levels + 1, std::min<std::size_t>(levels + 1, 2)); };
  auto* lam_eval = leaf(lam_cmd, "eval", "Denotation of a closed term");
  lam_eval->add_option("--levels", levels, "Truncation N (at least 1)")->required()->check(CLI::PositiveNumber);
  lam_eval->add_option("term", term_a, "Closed lambda term")->required();
  lam_eval->callback([&] {
    action = [&] {
      const auto term = lambda::parse(term_a);
      const auto t = lam_tower();
      const auto d = lambda::denote(t, term, levels);
      json names = json::array();
      for (const auto& c : d.components()) names.push_back(t.name(c));
      bool exact = true;
      const bool stable = lambda::prefix_stable(t, term, levels, exact);
      detail::emit({{"term", lambda::to_string(term)},
                    {"levels", levels},
                    {"components", names},
                    {"stabilized", stable},
                    {"exact", exact}},
                   format, out);
      return kOk;
    };
  });
  auto* lam_cmp = leaf(lam_cmd, "compare", "Compare the denotations of two closed terms");
  lam_cmp->add_option("--levels", levels, "Truncation N (at least 1)")->required()->check(CLI::PositiveNumber);
  lam_cmp->add_option("t1", term_a, "Closed lambda term")->required();
  lam_cmp->add_option("t2", term_b, "Closed lambda term")->required();
  lam_cmp->callback([&] {
    action = [&] {
      const auto a = lambda::parse(term_a);
      const auto b = lambda::parse(term_b);
      const auto v = lambda::beta_compare(lam_tower(), a, b, levels);
      detail::emit({{"t1", lambda::to_string(a)},
                    {"t2", lambda::to_string(b)},
                    {"levels", levels},
                    {"relation", lambda::to_string(v.relation)},
                    {"relation_next", lambda::to_string(v.relation_next)},
                    {"stabilized", v.stabilized},
                    {"exact", v.exact}},
                   format, out);
      return kOk;
    };
  });

  // idl
  auto* idl_cmd = group("idl", "Abstract bases and rounded ideals");
  std::string basis_name = "dyadic";
  std::size_t depth = 4;
  auto* idl_check = leaf(idl_cmd, "check-basis", "Transitivity and interpolation up to a depth");
  idl_check->add_option("--basis", basis_name, "dyadic, or a poset JSON file read as a reflexive basis");
  idl_check->add_option("--depth", depth, "Enumeration depth");
  idl_check->callback([&] {
    action = [&] {
      auto report = [&](const auto& basis) {
        const auto r = idl::check_abstract_basis(basis, depth);
        json j = {{"basis", basis_name},
                  {"depth", depth},
                  {"carrier", r.carrier_size},
                  {"transitive", r.transitive()},
                  {"nullary_interpolation", r.nullary()},
                  {"binary_interpolation", r.binary()},
                  {"ok", r.ok()}};
        if (r.transitivity_failure) {
          json ce = json::array();
          for (const auto& x : *r.transitivity_failure) ce.push_back(basis.name(x));
          j["transitivity_failure"] = ce;
        }
        if (r.nullary_failure) j["nullary_failure"] = basis.name(*r.nullary_failure);
        if (r.binary_failure) j["binary_failure"] = {basis.name(r.binary_failure->first), basis.name(r.binary_failure->second)};
        detail::emit(j, format, out);
        return r.ok() ? kOk : kPropertyFailure;
      };
      if (basis_name == "dyadic") return report(idl::DyadicBasis{});
      return report(idl::PreorderBasis(share(load_poset(basis_name))));
    };
  });
  auto* idl_wb = leaf(idl_cmd, "waybelow", "Decide Principal(x) << Principal(y)");
  idl_wb->add_option("--basis", basis_name, "dyadic, or a poset JSON file read as a reflexive basis");
  idl_wb->add_option("--depth", depth, "Search depth");
  idl_wb->add_option("x", a_name, "Basis element")->required();
  idl_wb->add_option("y", b_name, "Basis element")->required();
  idl_wb->callback([&] {
    action = [&] {
      auto decide = [&](const auto& basis, const auto& x, const auto& y) {
        using T = std::decay_t<decltype(x)>;
        const auto r = idl::way_below_ideal(basis, idl::Ideal<T>::principal(x), idl::Ideal<T>::principal(y), depth);
        json j = {{"x", basis.name(x)}, {"y", basis.name(y)}, {"depth", depth}, {"way_below", idl::to_string(r.value)}};
        if (r.witness) j["witness"] = basis.name(*r.witness);
        detail::emit(j, format, out);
        return kOk;
      };
      if (basis_name == "dyadic") return decide(idl::DyadicBasis{}, dyadic::parse(a_name), dyadic::parse(b_name));
      const auto p = share(load_poset(basis_name));
      return decide(idl::PreorderBasis(p), detail::element(*p, a_name), detail::element(*p, b_name));
    };
  });

  // dyadic
  auto* dy_cmd = group("dyadic", "Dyadic trees and their order");
  auto* dy_check = leaf(dy_cmd, "check", "Order properties and the numeric cross-check up to a depth");
  dy_check->add_option("--depth", depth, "Enumeration depth");
  dy_check->callback([&] {
    action = [&] {
      bool ok = true;
      auto report = detail::dyadic_checks(depth, ok);
      detail::emit({{"depth", depth}, {"elements", dyadic::enumerate(depth).size()}, {"ok", ok}, {"properties", report}},
                   format, out);
      return ok ? kOk : kPropertyFailure;
    };
  });
  auto* dy_val = leaf(dy_cmd, "val", "Rational value of a dyadic tree");
  dy_val->add_option("expr", a_name, "c, l(...), r(...)")->required();
  dy_val->callback([&] {
    action = [&] {
      const auto q = dyadic::to_rational(dyadic::parse(a_name));
      detail::emit({{"num", q.num}, {"den", q.den}}, format, out);
      return kOk;
    };
  });

  // lift
  auto* lift_cmd = group("lift", "Lifting and its universal property");
  std::string values;
  auto* lift_ext = leaf(lift_cmd, "free-ext", "Strict extension of f : X -> E along eta");
  lift_ext->add_option("file", file, "Target poset E (JSON, pointed)")->required();
  lift_ext->add_option("--map", values, "f as comma-separated element names of E")->required();
  lift_ext->callback([&] {
    action = [&] {
      const auto e = share(load_poset(file));
      const auto f = detail::parse_index_list(values, *e);
      const auto ext = free_extension(f, e);
      json table = json::object();
      for (std::size_t i = 0; i < ext.dom().size(); ++i) table[ext.dom().name(i)] = e->name(ext(i));
      bool triangle = true;
      for (std::size_t x = 0; x < f.size(); ++x) triangle = triangle && ext(lifted_index(eta(x))) == f[x];
      detail::emit({{"extension", table}, {"strict", ext(0) == require_least(*e)}, {"triangle", triangle}}, format, out);
      return triangle ? kOk : kPropertyFailure;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub != nullptr;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front())
      failing = sub;
    err << failing->help();
    return kUsage;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const error& e) {
    err << json{{"error", e.what()}}.dump() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << json{{"error", e.what()}}.dump() << "\n";
    return kUsage;
  }
}

}  // namespace domwb::cli
