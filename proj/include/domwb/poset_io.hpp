#pragma once

// JSON poset format: {"elements": ["a","b",...], "leq": [[true,false,...],...]}
// where row x, column y holds x ⊑ y. DOT export draws the Hasse diagram.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "domwb/finposet.hpp"

namespace domwb {

inline nlohmann::json to_json(const FinPoset& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t x = 0; x < p.size(); ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t y = 0; y < p.size(); ++y) row.push_back(p.leq(x, y));
    rows.push_back(std::move(row));
  }
  return {{"elements", p.names()}, {"leq", std::move(rows)}};
}

inline FinPoset poset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("leq"))
    throw structural_error("poset JSON needs \"elements\" and \"leq\"");
  const auto& elems = j.at("elements");
  const auto& leq = j.at("leq");
  if (!elems.is_array() || !leq.is_array()) throw structural_error("\"elements\" and \"leq\" must be arrays");
  std::vector<std::string> names;
  for (const auto& e : elems) {
    if (!e.is_string()) throw structural_error("element names must be strings");
    names.push_back(e.get<std::string>());
  }
  std::vector<std::vector<bool>> table;
  for (const auto& row : leq) {
    if (!row.is_array()) throw structural_error("\"leq\" rows must be arrays");
    std::vector<bool> r;
    for (const auto& cell : row) {
      if (!cell.is_boolean()) throw structural_error("\"leq\" entries must be booleans");
      r.push_back(cell.get<bool>());
    }
    table.push_back(std::move(r));
  }
  return FinPoset(std::move(names), table);
}

inline FinPoset load_poset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw structural_error("cannot open poset file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw structural_error("invalid JSON in " + path + ": " + e.what());
  }
  return poset_from_json(j);
}

/// Covering pairs x ⋖ y: x < y with nothing strictly between. This is the
/// transitive reduction of the strict order.
inline std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const FinPoset& p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (!p.lt(x, y)) continue;
      bool covered = true;
      for (std::size_t z = 0; z < p.size() && covered; ++z) covered = !(p.lt(x, z) && p.lt(z, y));
      if (covered) edges.emplace_back(x, y);
    }
  return edges;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string to_dot(const FinPoset& p, const std::string& graph_name = "poset") {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(graph_name) << " {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < p.size(); ++x) os << "  n" << x << " [label=" << detail::dot_quote(p.name(x)) << "];\n";
  for (auto [x, y] : hasse_edges(p)) os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace domwb
