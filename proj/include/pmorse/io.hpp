#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmorse/moves.hpp"
#include "pmorse/polytope.hpp"

namespace pmorse {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Parse errors carry the line and column reported by the parser.
inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

namespace detail {

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

template <class T>
T as(const Json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const Json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace detail

inline Json polytope_to_json(const Polytope& p) {
  Json j;
  j["dimension"] = p.dimension();
  Json facets = Json::array();
  for (const auto& f : p.facets()) {
    Json row;
    row["id"] = f.id;
    row["label"] = f.label;
    if (f.vector) row["vector"] = *f.vector;
    facets.push_back(std::move(row));
  }
  j["facets"] = std::move(facets);
  Json adjacency = Json::array();
  for (std::size_t a = 0; a < p.num_facets(); ++a) {
    for (std::size_t b = a + 1; b < p.num_facets(); ++b) {
      if (p.adjacent(static_cast<FacetId>(a), static_cast<FacetId>(b))) {
        adjacency.push_back({a, b});
      }
    }
  }
  j["adjacency"] = std::move(adjacency);
  Json ideal = Json::array();
  for (const auto& v : p.ideal_vertices()) ideal.push_back({{"label", v.label}, {"incident", v.incident}});
  j["ideal_vertices"] = std::move(ideal);
  return j;
}

inline Polytope polytope_from_json(const Json& j, const std::string& where = "polytope") {
  const int dimension = detail::as<int>(detail::field(j, "dimension", where), where + ".dimension");
  const Json& rows = detail::field(j, "facets", where);
  if (!rows.is_array()) throw InputError(where + ".facets: expected a list");
  std::vector<FacetRecord> facets;
  std::vector<LorentzVector> vectors;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string at = where + ".facets[" + std::to_string(i) + "]";
    FacetRecord f;
    f.id = detail::as<FacetId>(detail::field(rows[i], "id", at), at + ".id");
    f.label = detail::as<std::string>(detail::field(rows[i], "label", at), at + ".label");
    if (rows[i].contains("vector")) {
      f.vector = detail::as<LorentzVector>(rows[i]["vector"], at + ".vector");
      vectors.push_back(*f.vector);
    }
    facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  const std::size_t n = facets.size();
  if (!vectors.empty() && vectors.size() != n) {
    throw InputError(where + ": either every facet has a vector or none does");
  }
  std::vector<std::vector<char>> adj;
  if (!vectors.empty()) {
    vectors.clear();
    for (const auto& f : facets) vectors.push_back(*f.vector);
    adj = adjacency_from_lorentz(vectors);
  }
  if (j.contains("adjacency")) {
    std::vector<std::vector<char>> listed(n, std::vector<char>(n, 0));
    const auto pairs = detail::as<std::vector<std::vector<long long>>>(j["adjacency"], where + ".adjacency");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& e = pairs[i];
      const std::string at = where + ".adjacency[" + std::to_string(i) + "]";
      if (e.size() != 2) throw InputError(at + ": expected a pair");
      for (long long x : e) {
        if (x < 0 || static_cast<std::size_t>(x) >= n) throw InputError(at + ": unknown facet " + std::to_string(x));
      }
      if (e[0] == e[1]) throw InputError(at + ": facet adjacent to itself");
      listed[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = 1;
      listed[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = 1;
    }
    if (!adj.empty() && adj != listed) {
      throw InputError(where + ": explicit adjacency disagrees with the facet vectors");
    }
    adj = std::move(listed);
  }
  if (adj.empty() && n > 0) throw InputError(where + ": adjacency is required when vectors are absent");
  std::vector<IdealVertex> ideal;
  if (j.contains("ideal_vertices")) {
    const Json& list = j["ideal_vertices"];
    if (!list.is_array()) throw InputError(where + ".ideal_vertices: expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = where + ".ideal_vertices[" + std::to_string(i) + "]";
      IdealVertex v;
      v.id = static_cast<int>(i);
      v.label = detail::as<std::string>(detail::field(list[i], "label", at), at + ".label");
      v.incident = detail::as<std::vector<FacetId>>(detail::field(list[i], "incident", at), at + ".incident");
      ideal.push_back(std::move(v));
    }
  }
  return Polytope(dimension, std::move(facets), std::move(adj), std::move(ideal));
}

inline Json moves_to_json(const MoveSystem& m) {
  Json blocks = Json::array();
  for (std::size_t b = 0; b < m.size(); ++b) blocks.push_back(m.block(static_cast<int>(b)));
  return {{"moves", blocks}};
}

// Accepts a bare list of blocks or {"moves": [...]}.
inline MoveSystem moves_from_json(const Json& j, std::size_t num_facets, const std::string& where = "moves") {
  const Json& list = j.is_object() ? detail::field(j, "moves", where) : j;
  return MoveSystem(detail::as<std::vector<std::vector<FacetId>>>(list, where), num_facets);
}

inline Json state_to_json(const State& s) {
  Json map = Json::object();
  for (std::size_t f = 0; f < s.size(); ++f) {
    map[std::to_string(f)] = std::string(1, static_cast<char>(s[static_cast<FacetId>(f)]));
  }
  return {{"state", map}};
}

// Accepts a bare mapping or {"state": {...}}; keys are facet ids.
inline State state_from_json(const Json& j, std::size_t num_facets, const std::string& where = "state") {
  const Json& map = j.contains("state") ? j["state"] : j;
  if (!map.is_object()) throw InputError(where + ": expected a mapping from facet id to I/O");
  std::vector<int> seen(num_facets, 0);
  std::vector<Status> status(num_facets, Status::In);
  for (const auto& [key, value] : map.items()) {
    std::size_t pos = 0;
    long long id = -1;
    try {
      id = std::stoll(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || id < 0 || static_cast<std::size_t>(id) >= num_facets) {
      throw InputError(where + ": unknown facet id '" + key + "'");
    }
    const auto v = detail::as<std::string>(value, where + "." + key);
    if (v != "I" && v != "O") throw InputError(where + "." + key + ": status must be \"I\" or \"O\"");
    status[static_cast<std::size_t>(id)] = v == "I" ? Status::In : Status::Out;
    seen[static_cast<std::size_t>(id)] = 1;
  }
  for (std::size_t f = 0; f < num_facets; ++f) {
    if (!seen[f]) throw InputError(where + ": facet " + std::to_string(f) + " has no status");
  }
  return State(std::move(status));
}

}  // namespace pmorse
