#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmorse/simplicial_complex.hpp"

namespace pmorse {

using AntipodalPairs = std::vector<std::pair<Vertex, Vertex>>;

// Boundary of the k-dimensional cross-polytope on the given antipodal pairs:
// the maximal faces pick exactly one vertex from every pair.
inline SimplicialComplex crosspolytope_boundary(const AntipodalPairs& pairs) {
  std::vector<Simplex> faces;
  if (pairs.empty()) return {};
  const std::size_t k = pairs.size();
  if (k >= 31) throw InputError("crosspolytope_boundary: too many pairs");
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    Simplex s;
    for (std::size_t i = 0; i < k; ++i) {
      s.push_back((mask >> i) & 1u ? pairs[i].second : pairs[i].first);
    }
    faces.push_back(std::move(s));
  }
  return SimplicialComplex::from_antichain(std::move(faces));
}

// Decides whether K is the join of k copies of S^0. On success returns the
// antipodal pairing (sorted), which is the isomorphism witness.
inline std::optional<AntipodalPairs> is_crosspolytope_boundary(const SimplicialComplex& k,
                                                               int dim) {
  if (dim < 1) throw InputError("is_crosspolytope_boundary: k must be >= 1");
  const auto kk = static_cast<std::size_t>(dim);
  if (k.num_vertices() != 2 * kk) return std::nullopt;
  if (kk < 31 && k.maximal_faces().size() != (std::size_t{1} << kk)) return std::nullopt;

  std::map<Vertex, std::set<Vertex>> neighbours;
  for (Vertex v : k.vertices()) neighbours[v];
  for (const auto& m : k.maximal_faces()) {
    if (m.size() != kk) return std::nullopt;
    for (Vertex a : m) {
      for (Vertex b : m) {
        if (a != b) neighbours[a].insert(b);
      }
    }
  }
  AntipodalPairs pairs;
  std::map<Vertex, Vertex> partner;
  for (Vertex v : k.vertices()) {
    if (neighbours[v].size() != 2 * kk - 2) return std::nullopt;
    std::vector<Vertex> missing;
    for (Vertex w : k.vertices()) {
      if (w != v && !neighbours[v].count(w)) missing.push_back(w);
    }
    if (missing.size() != 1) return std::nullopt;
    partner[v] = missing.front();
  }
  for (const auto& [v, w] : partner) {
    if (partner.at(w) != v) return std::nullopt;
    if (v < w) pairs.emplace_back(v, w);
  }
  if (!(crosspolytope_boundary(pairs) == k)) return std::nullopt;
  return pairs;
}

// Evidence that J is the barycentric subdivision of a cross-polytope boundary:
// the antipodal pairs of the cross-polytope and, for every vertex of J, the
// cross-polytope face whose barycentre it is.
struct SubdividedCrossPolytopeWitness {
  AntipodalPairs pairs;
  std::map<Vertex, Simplex> face_of;
};

struct WitnessCheck {
  bool valid = false;
  std::string error;
};

inline WitnessCheck check_subdivided_crosspolytope(const SimplicialComplex& j, int k,
                                                   const SubdividedCrossPolytopeWitness& w) {
  WitnessCheck out;
  if (k < 1 || w.pairs.size() != static_cast<std::size_t>(k)) {
    out.error = "pair count differs from the sphere dimension";
    return out;
  }
  const SimplicialComplex beta = crosspolytope_boundary(w.pairs);
  const auto pairing = is_crosspolytope_boundary(beta, k);
  if (!pairing) {
    out.error = "pairs do not form a cross-polytope";
    return out;
  }
  const Subdivision sd = barycentric_subdivision(beta);
  std::map<Simplex, Vertex> vertex_of_face;
  for (const auto& [v, face] : w.face_of) {
    Simplex f = face;
    normalize(f);
    if (f != face || !beta.contains(f)) {
      out.error = "vertex " + std::to_string(v) + " names a non-face";
      return out;
    }
    if (!vertex_of_face.emplace(f, v).second) {
      out.error = "face " + to_string(f) + " named twice";
      return out;
    }
  }
  if (vertex_of_face.size() != sd.origin.size()) {
    out.error = "witness does not cover every face of the cross-polytope";
    return out;
  }
  const SimplicialComplex image = relabel(sd.complex, [&](Vertex x) {
    return vertex_of_face.at(sd.origin[static_cast<std::size_t>(x)]);
  });
  if (!(image == j)) {
    out.error = "complex differs from the relabelled subdivision";
    return out;
  }
  out.valid = true;
  return out;
}

}  // namespace pmorse
