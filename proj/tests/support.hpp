#pragma once

#include <random>
#include <set>
#include <vector>

#include "pmorse/pmorse.hpp"

namespace pmorse::testing {

// Random complex on vertices 0..n-1 with up to `count` candidate faces.
inline SimplicialComplex random_complex(std::mt19937& rng, int n, int count, int max_size) {
  std::uniform_int_distribution<int> size(1, max_size);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::vector<Simplex> faces;
  for (int i = 0; i < count; ++i) {
    std::set<Vertex> s;
    const int k = size(rng);
    while (static_cast<int>(s.size()) < k) s.insert(vertex(rng));
    faces.emplace_back(s.begin(), s.end());
  }
  return SimplicialComplex::from_maximal_faces(std::move(faces));
}

// Every face list is downward closed and the maximal faces form an antichain.
inline bool well_formed(const SimplicialComplex& k) {
  const auto faces = k.faces();
  const std::set<Simplex> all(faces.begin(), faces.end());
  for (const auto& s : faces) {
    for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
      Simplex t = s;
      t.erase(t.begin() + static_cast<long>(drop));
      if (!all.count(t)) return false;
    }
  }
  const auto& m = k.maximal_faces();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && is_subset(m[i], m[j])) return false;
    }
  }
  std::set<Vertex> seen;
  for (const auto& s : m) seen.insert(s.begin(), s.end());
  return std::vector<Vertex>(seen.begin(), seen.end()) == k.vertices();
}

inline SimplicialComplex octahedron() { return crosspolytope_boundary({{0, 1}, {2, 3}, {4, 5}}); }

inline SimplicialComplex cycle(int n) {
  std::vector<Simplex> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return SimplicialComplex::from_maximal_faces(edges);
}

inline SimplicialComplex s0(Vertex a, Vertex b) { return SimplicialComplex::from_antichain({{a}, {b}}); }

}  // namespace pmorse::testing
