#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmorse/error.hpp"
#include "pmorse/moves.hpp"
#include "pmorse/simplicial_complex.hpp"

namespace pmorse {

using LorentzVector = std::array<std::int64_t, 7>;

struct FacetRecord {
  FacetId id = 0;
  std::string label;
  std::optional<LorentzVector> vector;
};

struct IdealVertex {
  int id = 0;
  std::string label;
  std::vector<FacetId> incident;  // sorted
};

// A face, named by its defining facets. The empty set is the polytope itself.
struct FaceHandle {
  std::vector<FacetId> facets;  // sorted

  std::size_t codim() const noexcept { return facets.size(); }
  bool contains(FacetId f) const { return std::binary_search(facets.begin(), facets.end(), f); }

  // Canonical order: by codimension, then lexicographically.
  friend std::strong_ordering operator<=>(const FaceHandle& a, const FaceHandle& b) {
    if (a.facets.size() != b.facets.size()) return a.facets.size() <=> b.facets.size();
    return a.facets <=> b.facets;
  }
  friend bool operator==(const FaceHandle&, const FaceHandle&) = default;
};

inline std::string to_string(const FaceHandle& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(f.facets[i]);
  }
  return out + "}";
}

// Combinatorics of a right-angled polytope: facets, adjacency and the
// incidence of ideal vertices. Faces are the cliques of the adjacency graph.
class Polytope {
 public:
  Polytope() = default;

  Polytope(int dimension, std::vector<FacetRecord> facets,
           std::vector<std::vector<char>> adjacency,
           std::vector<IdealVertex> ideal_vertices = {})
      : dimension_(dimension),
        facets_(std::move(facets)),
        adjacency_(std::move(adjacency)),
        ideal_(std::move(ideal_vertices)) {
    const std::size_t n = facets_.size();
    if (dimension_ < 1) throw InputError("polytope: dimension must be positive");
    for (std::size_t i = 0; i < n; ++i) {
      if (facets_[i].id != static_cast<FacetId>(i)) {
        throw InputError("polytope: facet ids must be 0..n-1 in order");
      }
    }
    if (adjacency_.size() != n) throw InputError("polytope: adjacency size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (adjacency_[i].size() != n) throw InputError("polytope: adjacency size mismatch");
      if (adjacency_[i][i]) {
        throw InputError("polytope: facet " + facets_[i].label + " adjacent to itself");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (adjacency_[i][j] != adjacency_[j][i]) {
          throw InputError("polytope: adjacency not symmetric at " + facets_[i].label +
                           ", " + facets_[j].label);
        }
      }
    }
    for (auto& v : ideal_) {
      std::sort(v.incident.begin(), v.incident.end());
      for (FacetId f : v.incident) {
        if (f < 0 || static_cast<std::size_t>(f) >= n) {
          throw InputError("polytope: ideal vertex " + v.label + " names unknown facet");
        }
      }
    }
  }

  int dimension() const noexcept { return dimension_; }
  std::size_t num_facets() const noexcept { return facets_.size(); }
  const std::vector<FacetRecord>& facets() const noexcept { return facets_; }
  const FacetRecord& facet(FacetId f) const { return facets_.at(static_cast<std::size_t>(f)); }
  const std::string& label(FacetId f) const { return facet(f).label; }
  const std::vector<IdealVertex>& ideal_vertices() const noexcept { return ideal_; }

  const std::optional<MoveSystem>& moves_hint() const noexcept { return moves_hint_; }
  void set_moves_hint(MoveSystem m) {
    if (m.num_facets() != num_facets()) throw InputError("polytope: move hint size mismatch");
    moves_hint_ = std::move(m);
  }

  bool adjacent(FacetId a, FacetId b) const {
    return adjacency_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
  }
  const std::vector<std::vector<char>>& adjacency() const noexcept { return adjacency_; }

  std::vector<FacetId> neighbours(FacetId f) const {
    std::vector<FacetId> out;
    for (std::size_t j = 0; j < facets_.size(); ++j) {
      if (adjacent(f, static_cast<FacetId>(j))) out.push_back(static_cast<FacetId>(j));
    }
    return out;
  }

  std::optional<FacetId> find_label(const std::string& label) const {
    for (const auto& f : facets_) {
      if (f.label == label) return f.id;
    }
    return std::nullopt;
  }

  FacetId id_of(const std::string& label) const {
    if (auto f = find_label(label)) return *f;
    throw InputError("polytope: no facet labelled " + label);
  }

  bool is_clique(const std::vector<FacetId>& s) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (!adjacent(s[i], s[j])) return false;
      }
    }
    return true;
  }

  FaceHandle face(std::vector<FacetId> facets) const {
    std::sort(facets.begin(), facets.end());
    if (std::adjacent_find(facets.begin(), facets.end()) != facets.end() || !is_clique(facets)) {
      throw InputError("face handle: defining facets are not pairwise adjacent");
    }
    for (FacetId f : facets) {
      if (f < 0 || static_cast<std::size_t>(f) >= num_facets()) {
        throw InputError("face handle: unknown facet " + std::to_string(f));
      }
    }
    return FaceHandle{std::move(facets)};
  }

  FaceHandle face_of_labels(const std::vector<std::string>& labels) const {
    std::vector<FacetId> ids;
    for (const auto& l : labels) ids.push_back(id_of(l));
    return face(std::move(ids));
  }

  // Facets adjacent to every defining facet of F (all facets when F = P).
  std::vector<FacetId> facets_around(const FaceHandle& f) const {
    std::vector<FacetId> out;
    for (std::size_t g = 0; g < facets_.size(); ++g) {
      const auto id = static_cast<FacetId>(g);
      if (f.contains(id)) continue;
      if (std::all_of(f.facets.begin(), f.facets.end(),
                      [&](FacetId d) { return adjacent(id, d); })) {
        out.push_back(id);
      }
    }
    return out;
  }

 private:
  int dimension_ = 0;
  std::vector<FacetRecord> facets_;
  std::vector<std::vector<char>> adjacency_;
  std::vector<IdealVertex> ideal_;
  std::optional<MoveSystem> moves_hint_;
};

inline std::int64_t lorentz_product(const LorentzVector& x, const LorentzVector& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < 6; ++i) s += x[i] * y[i];
  return s - x[6] * y[6];
}

// Adjacency of facets with unit Lorentzian normals: orthogonal normals.
inline std::vector<std::vector<char>> adjacency_from_lorentz(
    const std::vector<LorentzVector>& vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (lorentz_product(vectors[i], vectors[i]) != 1) {
      throw InputError("adjacency_from_lorentz: row " + std::to_string(i) +
                       " is not a unit vector");
    }
  }
  std::vector<std::vector<char>> adj(vectors.size(), std::vector<char>(vectors.size(), 0));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      if (i != j && lorentz_product(vectors[i], vectors[j]) == 0) adj[i][j] = 1;
    }
  }
  return adj;
}

namespace detail {

inline void extend_cliques(const Polytope& p, std::vector<FacetId>& current,
                           std::size_t size, std::vector<FaceHandle>& out) {
  if (current.size() == size) {
    out.push_back(FaceHandle{current});
    return;
  }
  const FacetId start = current.empty() ? 0 : current.back() + 1;
  for (auto f = start; static_cast<std::size_t>(f) < p.num_facets(); ++f) {
    if (std::all_of(current.begin(), current.end(), [&](FacetId g) { return p.adjacent(f, g); })) {
      current.push_back(f);
      extend_cliques(p, current, size, out);
      current.pop_back();
    }
  }
}

// Bron-Kerbosch with pivoting; reports maximal cliques of the induced graph.
inline void bron_kerbosch(const Polytope& p, std::vector<FacetId>& r, std::vector<FacetId> cand,
                          std::vector<FacetId> excluded, std::vector<Simplex>& out) {
  if (cand.empty() && excluded.empty()) {
    out.emplace_back(r.begin(), r.end());
    return;
  }
  FacetId pivot = cand.empty() ? excluded.front() : cand.front();
  std::size_t best = 0;
  for (const auto* pool : {&cand, &excluded}) {
    for (FacetId u : *pool) {
      const auto c = static_cast<std::size_t>(
          std::count_if(cand.begin(), cand.end(), [&](FacetId w) { return p.adjacent(u, w); }));
      if (c > best) {
        best = c;
        pivot = u;
      }
    }
  }
  const std::vector<FacetId> snapshot = cand;
  for (FacetId v : snapshot) {
    if (p.adjacent(pivot, v)) continue;
    std::vector<FacetId> nc, nx;
    for (FacetId w : cand) {
      if (p.adjacent(v, w)) nc.push_back(w);
    }
    for (FacetId w : excluded) {
      if (p.adjacent(v, w)) nx.push_back(w);
    }
    r.push_back(v);
    bron_kerbosch(p, r, std::move(nc), std::move(nx), out);
    r.pop_back();
    std::erase(cand, v);
    excluded.push_back(v);
  }
}

}  // namespace detail

// All faces of the given codimension (cliques of that size), lexicographic.
inline std::vector<FaceHandle> enumerate_faces(const Polytope& p, int codim) {
  if (codim < 0 || codim > p.dimension()) {
    throw InputError("enumerate_faces: codimension out of range");
  }
  std::vector<FaceHandle> out;
  std::vector<FacetId> current;
  detail::extend_cliques(p, current, static_cast<std::size_t>(codim), out);
  return out;
}

// Faces of every codimension 0..dim in canonical order.
inline std::vector<FaceHandle> enumerate_all_faces(const Polytope& p) {
  std::vector<FaceHandle> out;
  for (int k = 0; k <= p.dimension(); ++k) {
    auto level = enumerate_faces(p, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// Clique complex on the facets around F; vertex labels are facet ids.
inline SimplicialComplex dual_complex(const Polytope& p, const FaceHandle& f) {
  if (!p.is_clique(f.facets)) throw InputError("dual_complex: invalid face handle");
  std::vector<FacetId> around = p.facets_around(f);
  if (around.empty()) return {};
  std::vector<Simplex> maximal;
  std::vector<FacetId> r;
  detail::bron_kerbosch(p, r, around, {}, maximal);
  return SimplicialComplex::from_antichain(std::move(maximal));
}

struct CountCheck {
  std::string name;
  std::size_t expected = 0;
  std::size_t actual = 0;
  bool pass = false;
};

struct FVectorReport {
  std::vector<std::size_t> clique_counts;  // index k: number of k-cliques
  std::vector<std::size_t> degrees;        // sorted distinct facet degrees
  std::vector<CountCheck> checks;
  bool pass = true;
};

struct FVectorExpectations {
  std::map<int, std::size_t> clique_counts;
  std::optional<std::size_t> degree;
  std::optional<std::size_t> ideal_vertices;
  std::optional<std::size_t> ideal_incidence;
};

// Clique census. Always requires that no clique exceeds the dimension (the
// flag model of faces); further expectations are checked when given.
// Throws StructuralError if a check fails.
inline FVectorReport f_vector_check(const Polytope& p, const FVectorExpectations& expect = {}) {
  FVectorReport rep;
  rep.clique_counts.push_back(1);
  for (int k = 1; k <= p.dimension() + 1; ++k) {
    std::vector<FaceHandle> level;
    std::vector<FacetId> cur;
    detail::extend_cliques(p, cur, static_cast<std::size_t>(k), level);
    rep.clique_counts.push_back(level.size());
    if (level.empty()) break;
  }
  while (rep.clique_counts.size() < static_cast<std::size_t>(p.dimension()) + 2) {
    rep.clique_counts.push_back(0);
  }
  std::vector<std::size_t> degrees;
  for (std::size_t f = 0; f < p.num_facets(); ++f) {
    degrees.push_back(p.neighbours(static_cast<FacetId>(f)).size());
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  rep.degrees = degrees;

  auto add = [&](std::string name, std::size_t expected, std::size_t actual) {
    rep.checks.push_back({std::move(name), expected, actual, expected == actual});
    if (expected != actual) rep.pass = false;
  };
  const auto over = static_cast<std::size_t>(p.dimension()) + 1;
  add("cliques of size " + std::to_string(over), 0, rep.clique_counts[over]);
  for (const auto& [k, n] : expect.clique_counts) {
    const std::size_t actual =
        static_cast<std::size_t>(k) < rep.clique_counts.size() ? rep.clique_counts[static_cast<std::size_t>(k)] : 0;
    add("cliques of size " + std::to_string(k), n, actual);
  }
  if (expect.degree) {
    add("uniform facet degree", *expect.degree,
        degrees.size() == 1 ? degrees.front() : std::size_t{0});
  }
  if (expect.ideal_vertices) {
    add("ideal vertices", *expect.ideal_vertices, p.ideal_vertices().size());
  }
  if (expect.ideal_incidence) {
    std::size_t uniform = 0;
    for (const auto& v : p.ideal_vertices()) {
      if (uniform == 0) uniform = v.incident.size();
      if (v.incident.size() != uniform) uniform = 0;
    }
    add("facets per ideal vertex", *expect.ideal_incidence, uniform);
  }
  if (!rep.pass) {
    std::string msg = "f-vector check failed:";
    for (const auto& c : rep.checks) {
      if (!c.pass) {
        msg += " " + c.name + " expected " + std::to_string(c.expected) + " got " +
               std::to_string(c.actual) + ";";
      }
    }
    throw StructuralError(msg);
  }
  return rep;
}

struct CuspSection {
  Polytope cube;
  std::vector<FacetId> to_parent;             // cube facet -> parent facet
  std::vector<std::pair<FacetId, FacetId>> opposite_pairs;  // cube facet ids
};

// Horospherical section at an ideal vertex: a combinatorial cube whose facets
// are the facets incident to the cusp, grouped into pairs of opposite facets.
inline CuspSection build_cusp_section(const Polytope& p, int cusp) {
  if (cusp < 0 || static_cast<std::size_t>(cusp) >= p.ideal_vertices().size()) {
    throw InputError("build_cusp_section: unknown ideal vertex " + std::to_string(cusp));
  }
  const IdealVertex& v = p.ideal_vertices()[static_cast<std::size_t>(cusp)];
  CuspSection out;
  out.to_parent = v.incident;
  const std::size_t n = v.incident.size();
  if (n == 0 || n % 2 != 0) {
    throw StructuralError("cusp " + v.label + ": odd or zero number of incident facets");
  }
  std::vector<FacetRecord> facets;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const FacetRecord& parent = p.facet(v.incident[i]);
    facets.push_back({static_cast<FacetId>(i), parent.label, parent.vector});
    for (std::size_t j = 0; j < n; ++j) {
      adj[i][j] = p.adjacent(v.incident[i], v.incident[j]) ? 1 : 0;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> missing;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && !adj[i][j]) missing.push_back(j);
    }
    if (missing.size() != 1) {
      throw StructuralError("cusp " + v.label + ": facet " + facets[i].label +
                            " is not opposite to exactly one facet");
    }
    if (i < missing.front()) {
      out.opposite_pairs.emplace_back(static_cast<FacetId>(i),
                                      static_cast<FacetId>(missing.front()));
    }
  }
  if (out.opposite_pairs.size() * 2 != n) {
    throw StructuralError("cusp " + v.label + ": opposite facets do not pair up");
  }
  const int dim = static_cast<int>(n / 2);
  if (dim != p.dimension() - 1) {
    throw StructuralError("cusp " + v.label + ": section has dimension " +
                          std::to_string(dim));
  }
  out.cube = Polytope(dim, std::move(facets), std::move(adj));
  return out;
}

}  // namespace pmorse
