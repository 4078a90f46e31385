#ifndef SCOL_IO_HPP
#define SCOL_IO_HPP

// Instance formats:
//   JSON  {"n": int, "q": int, "edges": [[u,v],...], "lists": [[c,...],...]}
//         0-based vertices, 1-based colors.
//   text  one "u v" pair per line ('#' starts a comment); full palettes [q].

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scol/error.hpp"
#include "scol/graph.hpp"

namespace scol {

inline ListColoringInstance instance_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "instance must be a JSON object");
    for (const char* key : {"n", "q", "edges", "lists"})
      if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    const int n = j.at("n").get<int>();
    const int q = j.at("q").get<int>();
    if (n < 0) throw Error(ErrorCode::ParseError, "n must be non-negative");
    if (q < 1) throw Error(ErrorCode::ParseError, "q must be positive");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "each edge must be a pair [u, v]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    auto lists = j.at("lists").get<std::vector<ColorList>>();
    if (static_cast<int>(lists.size()) != n)
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(n) + " lists, got " + std::to_string(lists.size()));
    return build_instance(edges, std::move(lists), q);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline nlohmann::json instance_to_json(const ListColoringInstance& inst) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : inst.graph().edges()) edges.push_back({u, v});
  return nlohmann::json{{"n", inst.size()}, {"q", inst.q()}, {"edges", edges}, {"lists", inst.lists()}};
}

inline ListColoringInstance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return instance_from_json(j);
}

/// Edge-list text; n is one past the largest vertex (or `n` when larger).
inline ListColoringInstance parse_edge_list(const std::string& text, int q, int n = 0) {
  if (q < 1) throw Error(ErrorCode::ParseError, "edge-list input needs --q");
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u)) continue;
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0 || u > 1000000000LL || v > 1000000000LL)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'u v'");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    n = std::max(n, static_cast<int>(std::max(u, v)) + 1);
  }
  return full_palette(Graph::from_edges(n, edges), q);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// JSON when the first non-blank character is '{', edge list otherwise.
inline ListColoringInstance parse_instance(const std::string& text, std::optional<int> q = std::nullopt) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_instance_json(text);
  if (!q) throw Error(ErrorCode::ParseError, "edge-list input needs --q");
  return parse_edge_list(text, *q);
}

inline ListColoringInstance load_instance(const std::string& path, std::optional<int> q = std::nullopt) {
  return parse_instance(read_file(path), q);
}

}  // namespace scol

#endif  // SCOL_IO_HPP
