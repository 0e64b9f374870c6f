#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pmorse/crosspolytope.hpp"
#include "pmorse/moves.hpp"
#include "pmorse/polytope.hpp"
#include "pmorse/simplicial_complex.hpp"
#include "pmorse/state_system.hpp"

namespace pmorse {

// base + depth * epsilon for a symbolic small epsilon > 0.
struct LiftValue {
  std::int64_t base = 0;
  int depth = 0;

  friend auto operator<=>(const LiftValue&, const LiftValue&) = default;
  friend LiftValue operator+(LiftValue a, const LiftValue& b) {
    return {a.base + b.base, a.depth + b.depth};
  }
};

inline constexpr int kMaxCubeDimension = 7;

// Faces of the cube [0,1]^k are coded in base 3: digit i is 0 or 1 when
// coordinate i is fixed, 2 when it is free. Vertices are bit masks.
namespace cube {

inline int pow3(int k) {
  int p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return p;
}

inline int digit(int code, int i) { return code / pow3(i) % 3; }

inline int top_code(int k) { return pow3(k) - 1; }

inline int vertex_code(unsigned mask, int k) {
  int code = 0;
  for (int i = 0; i < k; ++i) {
    if ((mask >> i) & 1u) code += pow3(i);
  }
  return code;
}

inline int free_count(int code, int k) {
  int c = 0;
  for (int i = 0; i < k; ++i) c += digit(code, i) == 2;
  return c;
}

inline std::string code_string(int code, int k) {
  std::string s;
  for (int i = 0; i < k; ++i) s.push_back("01*"[digit(code, i)]);
  return s;
}

// Maximal chains vertex < edge < ... < facet of the boundary of [0,1]^k, as
// simplices of its barycentric subdivision labelled by face codes.
inline const std::vector<Simplex>& boundary_chains(int k) {
  if (k < 1 || k > kMaxCubeDimension) {
    throw InputError("cube dimension " + std::to_string(k) + " outside 1.." +
                     std::to_string(kMaxCubeDimension));
  }
  static std::array<std::once_flag, kMaxCubeDimension + 1> once;
  static std::array<std::vector<Simplex>, kMaxCubeDimension + 1> cache;
  const auto idx = static_cast<std::size_t>(k);
  std::call_once(once[idx], [k, idx] {
    std::vector<Simplex> chains;
    std::vector<int> order(static_cast<std::size_t>(k));
    for (unsigned w = 0; w < (1u << k); ++w) {
      std::iota(order.begin(), order.end(), 0);
      do {
        Simplex chain;
        int code = vertex_code(w, k);
        chain.push_back(code);
        for (int step = 0; step + 1 < k; ++step) {
          const int i = order[static_cast<std::size_t>(step)];
          code += (2 - digit(code, i)) * pow3(i);
          chain.push_back(code);
        }
        normalize(chain);
        chains.push_back(std::move(chain));
      } while (std::next_permutation(order.begin(), order.end()));
    }
    std::sort(chains.begin(), chains.end());
    chains.erase(std::unique(chains.begin(), chains.end()), chains.end());
    cache[idx] = std::move(chains);
  });
  return cache[idx];
}

// Full subcomplex of sd(boundary of [0,1]^k) on the codes marked in `keep`.
inline SimplicialComplex boundary_subcomplex(int k, const std::vector<char>& keep) {
  std::vector<Simplex> pieces;
  for (const auto& chain : boundary_chains(k)) {
    Simplex s;
    for (Vertex c : chain) {
      if (keep[static_cast<std::size_t>(c)]) s.push_back(c);
    }
    if (!s.empty()) pieces.push_back(std::move(s));
  }
  return SimplicialComplex::from_maximal_faces(std::move(pieces));
}

}  // namespace cube

// The dual cube of a face F, seen from the copy of P carrying state s: vertex
// w (a subset of the defining facets) carries the state reached by crossing
// the facets in w, and every face of the cube carries its lift value.
class CubeModel {
 public:
  static CubeModel build(const Polytope& p, const MoveSystem& m, const State& s,
                         const FaceHandle& f) {
    require_total(p, s);
    CubeModel c;
    c.defining_ = f.facets;
    c.dim_ = static_cast<int>(f.facets.size());
    if (c.dim_ > kMaxCubeDimension) throw InputError("cube model: dimension too large");
    for (FacetId d : f.facets) c.blocks_.push_back(m.block_of(d));
    const unsigned n = 1u << c.dim_;
    c.states_.resize(n);
    c.states_[0] = s;
    for (unsigned w = 1; w < n; ++w) {
      const int low = std::countr_zero(w);
      c.states_[w] = act(c.states_[w & (w - 1)], m, f.facets[static_cast<std::size_t>(low)]);
    }

    std::vector<std::int64_t> value(n, 0);
    for (unsigned w = 1; w < n; ++w) {
      const int low = std::countr_zero(w);
      value[w] = value[w & (w - 1)] + c.step(w & (w - 1), low);
    }
    for (unsigned w = 0; w < n; ++w) {
      for (int i = 0; i < c.dim_; ++i) {
        if ((w >> i) & 1u) continue;
        if (value[w | (1u << i)] - value[w] != c.step(w, i)) {
          throw InternalError("cube model: orientation cocycle fails at face " + to_string(f));
        }
      }
    }
    const std::int64_t lo = *std::min_element(value.begin(), value.end());
    for (auto& v : value) v -= lo;

    const int faces = cube::pow3(c.dim_);
    c.values_.assign(static_cast<std::size_t>(faces), {});
    std::vector<LiftValue> closed_min(static_cast<std::size_t>(faces));
    for (int code = 0; code < faces; ++code) {
      int first_free = -1;
      unsigned mask = 0;
      for (int i = 0; i < c.dim_; ++i) {
        const int d = cube::digit(code, i);
        if (d == 2 && first_free < 0) first_free = i;
        if (d == 1) mask |= 1u << i;
      }
      const auto at = static_cast<std::size_t>(code);
      if (first_free < 0) {
        c.values_[at] = {value[mask], 0};
        closed_min[at] = c.values_[at];
        continue;
      }
      // minimum over the boundary, reached through the facets of this face
      LiftValue boundary{INT64_MAX, 0};
      for (int i = 0; i < c.dim_; ++i) {
        if (cube::digit(code, i) != 2) continue;
        boundary = std::min(boundary, closed_min[static_cast<std::size_t>(code - 2 * cube::pow3(i))]);
        boundary = std::min(boundary, closed_min[static_cast<std::size_t>(code - cube::pow3(i))]);
      }
      c.values_[at] = boundary + LiftValue{0, cube::free_count(code, c.dim_)};
      closed_min[at] = std::min(boundary, c.values_[at]);
    }
    return c;
  }

  int dimension() const noexcept { return dim_; }
  const std::vector<FacetId>& defining_facets() const noexcept { return defining_; }
  const std::vector<int>& blocks() const noexcept { return blocks_; }
  const State& vertex_state(unsigned w) const { return states_.at(w); }
  const State& base_state() const { return states_.front(); }
  LiftValue value(int code) const { return values_.at(static_cast<std::size_t>(code)); }
  LiftValue vertex_value(unsigned w) const { return value(cube::vertex_code(w, dim_)); }
  LiftValue top_value() const { return value(cube::top_code(dim_)); }
  int num_faces() const noexcept { return static_cast<int>(values_.size()); }

  // +1 if crossing defining facet i from vertex w goes up, -1 otherwise.
  int step(unsigned w, int i) const {
    return states_[w][defining_[static_cast<std::size_t>(i)]] == Status::Out ? 1 : -1;
  }

 private:
  int dim_ = 0;
  std::vector<FacetId> defining_;
  std::vector<int> blocks_;
  std::vector<State> states_;
  std::vector<LiftValue> values_;
};

struct FaceLinks {
  SimplicialComplex ascending;
  SimplicialComplex descending;
  std::vector<int> ascending_codes;   // vertices, as face codes
  std::vector<int> descending_codes;
};

inline FaceLinks face_links_from_sets(int k, const std::vector<char>& up,
                                      const std::vector<char>& down) {
  FaceLinks out;
  for (std::size_t c = 0; c < up.size(); ++c) {
    if (up[c]) out.ascending_codes.push_back(static_cast<int>(c));
    if (down[c]) out.descending_codes.push_back(static_cast<int>(c));
  }
  out.ascending = cube::boundary_subcomplex(k, up);
  out.descending = cube::boundary_subcomplex(k, down);
  return out;
}

// Literal face links: barycentres of proper faces whose lift value is above
// (ascending) or below (descending) the value at the centre.
inline FaceLinks face_links_oracle(const CubeModel& model) {
  const int k = model.dimension();
  if (k < 1) throw InputError("face_links_oracle: cube dimension must be >= 1");
  const LiftValue top = model.top_value();
  std::vector<char> up(static_cast<std::size_t>(model.num_faces()), 0);
  std::vector<char> down(up.size(), 0);
  for (int code = 0; code < cube::top_code(k); ++code) {
    const LiftValue v = model.value(code);
    up[static_cast<std::size_t>(code)] = v > top;
    down[static_cast<std::size_t>(code)] = v < top;
  }
  return face_links_from_sets(k, up, down);
}

// Splitting of a cube into monochromatic factors (coordinates whose defining
// facets share a move). On each factor the lift is a checkerboard.
class MonochromaticSplit {
 public:
  struct Factor {
    std::vector<int> coords;
    bool rises_at_base = false;  // first step out of vertex 0 goes up
  };

  explicit MonochromaticSplit(const CubeModel& model) : k_(model.dimension()) {
    std::vector<int> seen;
    for (int i = 0; i < k_; ++i) {
      const int b = model.blocks()[static_cast<std::size_t>(i)];
      auto it = std::find(seen.begin(), seen.end(), b);
      if (it == seen.end()) {
        seen.push_back(b);
        factors_.push_back({{i}, model.step(0, i) > 0});
      } else {
        factors_[static_cast<std::size_t>(it - seen.begin())].coords.push_back(i);
      }
    }
  }

  int dimension() const noexcept { return k_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }

  // Value of factor j on the projection of a face: (height, free coordinates).
  LiftValue factor_value(std::size_t j, int code) const {
    const Factor& f = factors_[j];
    int free = 0, ones = 0;
    for (int i : f.coords) {
      const int d = cube::digit(code, i);
      free += d == 2;
      ones += d == 1;
    }
    if (free > 0) return {0, free};
    const int parity = ones % 2;
    return {f.rises_at_base ? parity : 1 - parity, 0};
  }

  enum class Part { MinVertex, MaxVertex, Whole, Other };

  Part part(std::size_t j, int code) const {
    const Factor& f = factors_[j];
    int free = 0;
    for (int i : f.coords) free += cube::digit(code, i) == 2;
    if (free == static_cast<int>(f.coords.size())) return Part::Whole;
    if (free > 0) return Part::Other;
    return factor_value(j, code).base == 1 ? Part::MaxVertex : Part::MinVertex;
  }

  LiftValue sum_value(int code) const {
    LiftValue v;
    for (std::size_t j = 0; j < factors_.size(); ++j) v = v + factor_value(j, code);
    return v;
  }

  bool predicted_ascending(int code) const {
    if (code == cube::top_code(k_)) return false;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (part(j, code) == Part::MaxVertex) return true;
    }
    return false;
  }

  bool predicted_descending(int code) const {
    return code != cube::top_code(k_) && !predicted_ascending(code);
  }

  // Join of the factor links: every factor at an extreme vertex of the given
  // kind or whole.
  bool in_join(int code, Part extreme) const {
    if (code == cube::top_code(k_)) return false;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      const Part p = part(j, code);
      if (p != extreme && p != Part::Whole) return false;
    }
    return true;
  }

  std::vector<char> mark(const std::function<bool(int)>& pred) const {
    std::vector<char> out(static_cast<std::size_t>(cube::pow3(k_)), 0);
    for (int c = 0; c < cube::pow3(k_); ++c) out[static_cast<std::size_t>(c)] = pred(c);
    return out;
  }

  FaceLinks predicted_links() const {
    return face_links_from_sets(k_, mark([&](int c) { return predicted_ascending(c); }),
                                mark([&](int c) { return predicted_descending(c); }));
  }

  SimplicialComplex join_target(Part extreme) const {
    return cube::boundary_subcomplex(k_, mark([&](int c) { return in_join(c, extreme); }));
  }

  // When every factor is a square, the join target is the subdivided boundary
  // of a cross-polytope: factor j contributes the antipodal pair (2j, 2j+1)
  // made of its two extreme vertices.
  std::optional<SubdividedCrossPolytopeWitness> crosspolytope_witness(Part extreme) const {
    for (const auto& f : factors_) {
      if (f.coords.size() != 2) return std::nullopt;
    }
    SubdividedCrossPolytopeWitness w;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      w.pairs.emplace_back(static_cast<Vertex>(2 * j), static_cast<Vertex>(2 * j + 1));
    }
    for (int code = 0; code < cube::pow3(k_); ++code) {
      if (!in_join(code, extreme)) continue;
      Simplex face;
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (part(j, code) == Part::Whole) continue;
        // the two extreme vertices of a square differ in both coordinates
        const int first = cube::digit(code, factors_[j].coords.front());
        face.push_back(static_cast<Vertex>(2 * j + static_cast<std::size_t>(first)));
      }
      w.face_of[code] = face;
    }
    return w;
  }

 private:
  int k_ = 0;
  std::vector<Factor> factors_;
};

}  // namespace pmorse
