#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmorse/error.hpp"

namespace pmorse {

using Vertex = std::int32_t;

// A simplex is a strictly increasing list of vertex labels.
using Simplex = std::vector<Vertex>;

inline void normalize(Simplex& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Simplex simplex_union(const Simplex& a, const Simplex& b) {
  Simplex out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline std::string to_string(const Simplex& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (Vertex v : s) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Finite abstract simplicial complex stored through its maximal faces.
//
// Both the vertex list and the maximal faces are kept in lexicographic order,
// so two complexes with the same faces compare equal and iterate identically.
// The empty complex has no vertices and no faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Downward closure of `candidates`. Redundant faces (contained in another
  // candidate) are absorbed and empty candidates are ignored.
  static SimplicialComplex from_maximal_faces(std::vector<Simplex> candidates) {
    for (auto& c : candidates) normalize(c);
    std::erase_if(candidates, [](const Simplex& s) { return s.empty(); });
    std::sort(candidates.begin(), candidates.end(),
              [](const Simplex& a, const Simplex& b) {
                if (a.size() != b.size()) return a.size() > b.size();
                return a < b;
              });
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    std::vector<Simplex> kept;
    std::unordered_map<Vertex, std::vector<std::size_t>> by_vertex;
    for (auto& c : candidates) {
      const std::vector<std::size_t>* best = nullptr;
      bool fresh_vertex = false;
      for (Vertex v : c) {
        auto it = by_vertex.find(v);
        if (it == by_vertex.end()) {
          fresh_vertex = true;
          break;
        }
        if (!best || it->second.size() < best->size()) best = &it->second;
      }
      bool absorbed = false;
      if (!fresh_vertex && best) {
        for (std::size_t idx : *best) {
          if (kept[idx].size() > c.size() && is_subset(c, kept[idx])) {
            absorbed = true;
            break;
          }
        }
      }
      if (absorbed) continue;
      for (Vertex v : c) by_vertex[v].push_back(kept.size());
      kept.push_back(std::move(c));
    }

    SimplicialComplex k;
    std::sort(kept.begin(), kept.end());
    k.maximal_ = std::move(kept);
    for (const auto& [v, _] : by_vertex) k.vertices_.push_back(v);
    std::sort(k.vertices_.begin(), k.vertices_.end());
    return k;
  }

  // Caller guarantees that no face contains another; only sorting is done.
  static SimplicialComplex from_antichain(std::vector<Simplex> maximal) {
    SimplicialComplex k;
    for (auto& s : maximal) normalize(s);
    std::sort(maximal.begin(), maximal.end());
    for (const auto& s : maximal) {
      k.vertices_.insert(k.vertices_.end(), s.begin(), s.end());
    }
    normalize(k.vertices_);
    k.maximal_ = std::move(maximal);
    return k;
  }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Simplex>& maximal_faces() const noexcept { return maximal_; }
  bool empty() const noexcept { return vertices_.empty(); }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }

  int dimension() const noexcept {
    int d = -1;
    for (const auto& s : maximal_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
  }

  bool has_vertex(Vertex v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  // True iff `s` (sorted) is a nonempty face.
  bool contains(std::span<const Vertex> s) const {
    if (s.empty()) return false;
    return std::any_of(maximal_.begin(), maximal_.end(),
                       [&](const Simplex& m) { return is_subset(s, m); });
  }

  // All nonempty faces in lexicographic order.
  std::vector<Simplex> faces() const {
    std::vector<Simplex> out;
    for (const auto& m : maximal_) {
      if (m.size() >= 31) {
        throw InputError("simplex too large to enumerate: " + to_string(m));
      }
      const std::uint32_t n = static_cast<std::uint32_t>(m.size());
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Simplex s;
        s.reserve(static_cast<std::size_t>(std::popcount(mask)));
        for (std::uint32_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) s.push_back(m[i]);
        }
        out.push_back(std::move(s));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // f[d] = number of d-dimensional faces.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& s : faces()) ++f[s.size() - 1];
    return f;
  }

  bool is_subcomplex_of(const SimplicialComplex& other) const {
    return std::all_of(maximal_.begin(), maximal_.end(),
                       [&](const Simplex& s) { return other.contains(s); });
  }

  // Connected components of the 1-skeleton, each as a sorted vertex list.
  std::vector<std::vector<Vertex>> components() const {
    std::unordered_map<Vertex, std::size_t> index;
    for (std::size_t i = 0; i < vertices_.size(); ++i) index[vertices_[i]] = i;
    std::vector<std::size_t> parent(vertices_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& m : maximal_) {
      for (std::size_t i = 1; i < m.size(); ++i) {
        parent[find(index[m[i]])] = find(index[m[0]]);
      }
    }
    std::map<std::size_t, std::vector<Vertex>> groups;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      groups[find(i)].push_back(vertices_[i]);
    }
    std::vector<std::vector<Vertex>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
  }

  // The empty complex is not connected.
  bool is_connected() const { return components().size() == 1; }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.maximal_ == b.maximal_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Simplex> maximal_;
};

inline std::ostream& operator<<(std::ostream& os, const SimplicialComplex& k) {
  os << '[';
  for (std::size_t i = 0; i < k.maximal_faces().size(); ++i) {
    os << (i ? " " : "") << to_string(k.maximal_faces()[i]);
  }
  return os << ']';
}

// {sigma in K : sigma subset of S}.
inline SimplicialComplex full_subcomplex(const SimplicialComplex& k,
                                         std::vector<Vertex> subset) {
  normalize(subset);
  for (Vertex v : subset) {
    if (!k.has_vertex(v)) {
      throw InputError("full_subcomplex: vertex " + std::to_string(v) +
                       " is not a vertex of the complex");
    }
  }
  std::vector<Simplex> pieces;
  pieces.reserve(k.maximal_faces().size());
  for (const auto& m : k.maximal_faces()) {
    Simplex s;
    std::set_intersection(m.begin(), m.end(), subset.begin(), subset.end(),
                          std::back_inserter(s));
    if (!s.empty()) pieces.push_back(std::move(s));
  }
  return SimplicialComplex::from_maximal_faces(std::move(pieces));
}

// Link of a vertex: {sigma \ v : v in sigma}.
inline SimplicialComplex link(const SimplicialComplex& k, Vertex v) {
  std::vector<Simplex> pieces;
  for (const auto& m : k.maximal_faces()) {
    if (!std::binary_search(m.begin(), m.end(), v)) continue;
    Simplex s;
    for (Vertex u : m) {
      if (u != v) s.push_back(u);
    }
    if (!s.empty()) pieces.push_back(std::move(s));
  }
  return SimplicialComplex::from_maximal_faces(std::move(pieces));
}

inline SimplicialComplex relabel(const SimplicialComplex& k,
                                 const std::function<Vertex(Vertex)>& map) {
  std::vector<Simplex> faces;
  faces.reserve(k.maximal_faces().size());
  for (const auto& m : k.maximal_faces()) {
    Simplex s;
    s.reserve(m.size());
    for (Vertex v : m) s.push_back(map(v));
    faces.push_back(std::move(s));
  }
  return SimplicialComplex::from_maximal_faces(std::move(faces));
}

// Join K * L. When the label sets collide, L is shifted past max(K).
inline SimplicialComplex join(const SimplicialComplex& k,
                              const SimplicialComplex& l) {
  if (k.empty()) return l;
  if (l.empty()) return k;
  SimplicialComplex right = l;
  std::vector<Vertex> common;
  std::set_intersection(k.vertices().begin(), k.vertices().end(),
                        l.vertices().begin(), l.vertices().end(),
                        std::back_inserter(common));
  if (!common.empty()) {
    const Vertex shift = k.vertices().back() + 1 - l.vertices().front();
    right = relabel(l, [shift](Vertex v) { return v + shift; });
  }
  std::vector<Simplex> faces;
  faces.reserve(k.maximal_faces().size() * right.maximal_faces().size());
  for (const auto& a : k.maximal_faces()) {
    for (const auto& b : right.maximal_faces()) faces.push_back(simplex_union(a, b));
  }
  return SimplicialComplex::from_antichain(std::move(faces));
}

inline SimplicialComplex point(Vertex v) {
  return SimplicialComplex::from_antichain({{v}});
}

// Cone with the given apex; the apex must not be a vertex of K.
inline SimplicialComplex cone(const SimplicialComplex& k, Vertex apex) {
  if (k.has_vertex(apex)) {
    throw InputError("cone: apex " + std::to_string(apex) + " already a vertex");
  }
  return join(k, point(apex));
}

// Barycentric subdivision. Vertex i of `complex` is the barycentre of
// `origin[i]`, where `origin` lists the faces of the input lexicographically.
struct Subdivision {
  SimplicialComplex complex;
  std::vector<Simplex> origin;

  Vertex vertex_of(const Simplex& face) const {
    auto it = std::lower_bound(origin.begin(), origin.end(), face);
    if (it == origin.end() || *it != face) {
      throw InputError("subdivision: " + to_string(face) + " is not a face");
    }
    return static_cast<Vertex>(it - origin.begin());
  }
};

inline Subdivision barycentric_subdivision(const SimplicialComplex& k) {
  Subdivision out;
  out.origin = k.faces();
  std::vector<Simplex> chains;
  for (const auto& m : k.maximal_faces()) {
    Simplex order = m;
    do {
      Simplex chain;
      Simplex prefix;
      for (Vertex v : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        chain.push_back(out.vertex_of(prefix));
      }
      chains.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  out.complex = SimplicialComplex::from_antichain(std::move(chains));
  return out;
}

// Searches for a vertex bijection carrying the faces of `a` onto those of `b`.
// Intended for small complexes (tests and witnesses).
inline std::optional<std::map<Vertex, Vertex>> find_isomorphism(
    const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.num_vertices() != b.num_vertices()) return std::nullopt;
  if (a.maximal_faces().size() != b.maximal_faces().size()) return std::nullopt;
  if (a.f_vector() != b.f_vector()) return std::nullopt;

  auto signature = [](const SimplicialComplex& k) {
    std::map<Vertex, std::vector<std::size_t>> sig;
    for (Vertex v : k.vertices()) sig[v] = {};
    for (const auto& m : k.maximal_faces()) {
      for (Vertex v : m) sig[v].push_back(m.size());
    }
    for (auto& [_, s] : sig) std::sort(s.begin(), s.end());
    return sig;
  };
  const auto sig_a = signature(a);
  const auto sig_b = signature(b);
  std::vector<Simplex> target = b.maximal_faces();
  std::sort(target.begin(), target.end());

  const std::vector<Vertex>& va = a.vertices();
  std::map<Vertex, Vertex> map;
  std::map<Vertex, bool> used;

  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == va.size()) {
      std::vector<Simplex> image;
      for (const auto& m : a.maximal_faces()) {
        Simplex s;
        for (Vertex v : m) s.push_back(map[v]);
        normalize(s);
        image.push_back(std::move(s));
      }
      std::sort(image.begin(), image.end());
      return image == target;
    }
    for (Vertex w : b.vertices()) {
      if (used[w] || sig_a.at(va[i]) != sig_b.at(w)) continue;
      map[va[i]] = w;
      used[w] = true;
      if (extend(i + 1)) return true;
      used[w] = false;
    }
    map.erase(va[i]);
    return false;
  };
  if (extend(0)) return map;
  return std::nullopt;
}

}  // namespace pmorse
