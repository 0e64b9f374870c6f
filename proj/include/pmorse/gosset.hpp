#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmorse/error.hpp"
#include "pmorse/moves.hpp"
#include "pmorse/polytope.hpp"

namespace pmorse {

// Hurwitz unit stored with doubled coordinates (w, x, y, z) for w + xi + yj + zk:
// Q8 elements have one entry +-2, the others have four entries +-1.
struct Quaternion {
  int w = 0, x = 0, y = 0, z = 0;

  friend auto operator<=>(const Quaternion&, const Quaternion&) = default;

  Quaternion operator-() const { return {-w, -x, -y, -z}; }

  // Product of the represented quaternions, again doubled.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    const int w = a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z;
    const int x = a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y;
    const int y = a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x;
    const int z = a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w;
    if (w % 2 || x % 2 || y % 2 || z % 2) throw InternalError("quaternion product left T24");
    return {w / 2, x / 2, y / 2, z / 2};
  }

  int dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
  bool in_q8() const { return std::abs(w) + std::abs(x) + std::abs(y) + std::abs(z) == 2; }
  int minus_signs() const { return (w < 0) + (x < 0) + (y < 0) + (z < 0); }
};

// (x1, x2, x3, x4) -> (x1, -x2, -x4, -x3)
inline Quaternion iota(const Quaternion& q) { return {q.w, -q.x, -q.z, -q.y}; }

inline std::string quaternion_label(const Quaternion& q) {
  static const char* const names[] = {"1", "i", "j", "k"};
  const int c[] = {q.w, q.x, q.y, q.z};
  std::string out;
  for (int m = 0; m < 4; ++m) {
    if (c[m] == 0) continue;
    if (c[m] < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    out += names[m];
  }
  return out;
}

inline Quaternion parse_quaternion(const std::string& label) {
  Quaternion q;
  int* slots[] = {&q.w, &q.x, &q.y, &q.z};
  std::size_t pos = 0;
  int terms = 0;
  while (pos < label.size()) {
    int sign = 1;
    if (label[pos] == '+' || label[pos] == '-') {
      sign = label[pos] == '-' ? -1 : 1;
      ++pos;
    }
    if (pos >= label.size()) throw InputError("bad quaternion label " + label);
    const std::string names = "1ijk";
    const auto m = names.find(label[pos]);
    if (m == std::string::npos || *slots[m] != 0) throw InputError("bad quaternion label " + label);
    *slots[m] = sign;
    ++pos;
    ++terms;
  }
  if (terms == 1) {
    for (int* s : slots) *s *= 2;
  } else if (terms != 4) {
    throw InputError("bad quaternion label " + label);
  }
  return q;
}

inline const std::vector<Quaternion>& q8_elements() {
  static const std::vector<Quaternion> q8 = {{2, 0, 0, 0}, {-2, 0, 0, 0}, {0, 2, 0, 0},
                                             {0, -2, 0, 0}, {0, 0, 2, 0}, {0, 0, -2, 0},
                                             {0, 0, 0, 2}, {0, 0, 0, -2}};
  return q8;
}

namespace gosset {

struct Row {
  const char* label;
  LorentzVector vector;
};

// Facet order: A, B, C, the eight elements of Q8, then the sixteen labels
// +-1+-i+-j+-k in table order.
inline const std::array<Row, 27>& table() {
  static const std::array<Row, 27> rows = {{
      {"A", {0, 0, 0, 0, 0, -1, 0}},
      {"B", {1, 1, 1, 1, 0, 1, 2}},
      {"C", {0, 0, 0, 0, 1, 1, 1}},
      {"1", {1, 0, 0, 0, 0, 1, 1}},
      {"-1", {0, 1, 1, 1, 1, 1, 2}},
      {"i", {0, 1, 0, 0, 0, 1, 1}},
      {"-i", {1, 0, 1, 1, 1, 1, 2}},
      {"j", {0, 0, 1, 0, 0, 1, 1}},
      {"-j", {1, 1, 0, 1, 1, 1, 2}},
      {"k", {0, 0, 0, 1, 0, 1, 1}},
      {"-k", {1, 1, 1, 0, 1, 1, 2}},
      {"1+i+j+k", {0, 0, 0, 0, -1, 0, 0}},
      {"-1-i-j-k", {1, 1, 1, 1, 1, 0, 2}},
      {"1+i-j-k", {1, 1, 0, 0, 0, 0, 1}},
      {"1-i+j-k", {1, 0, 1, 0, 0, 0, 1}},
      {"1-i-j+k", {1, 0, 0, 1, 0, 0, 1}},
      {"1-i-j-k", {1, 0, 0, 0, 1, 0, 1}},
      {"-1+i+j-k", {0, 1, 1, 0, 0, 0, 1}},
      {"-1+i-j+k", {0, 1, 0, 1, 0, 0, 1}},
      {"-1+i-j-k", {0, 1, 0, 0, 1, 0, 1}},
      {"-1-i+j+k", {0, 0, 1, 1, 0, 0, 1}},
      {"-1-i+j-k", {0, 0, 1, 0, 1, 0, 1}},
      {"-1-i-j+k", {0, 0, 0, 1, 1, 0, 1}},
      {"-1+i+j+k", {-1, 0, 0, 0, 0, 0, 0}},
      {"1-i+j+k", {0, -1, 0, 0, 0, 0, 0}},
      {"1+i-j+k", {0, 0, -1, 0, 0, 0, 0}},
      {"1+i+j-k", {0, 0, 0, -1, 0, 0, 0}},
  }};
  return rows;
}

inline constexpr FacetId kA = 0;
inline constexpr FacetId kB = 1;
inline constexpr FacetId kC = 2;

// r(t) for each T24 label: the rows q, q(1-i+j-k), q(1+i+j-k).
inline const std::vector<std::array<const char*, 4>>& r_table() {
  static const std::vector<std::array<const char*, 4>> rows = {
      {"1", "1", "1-i+j-k", "1+i+j-k"},    {"-1", "-1", "-1+i-j+k", "-1-i-j+k"},
      {"i", "i", "1+i+j+k", "-1+i+j+k"},   {"-i", "-i", "-1-i-j-k", "1-i-j-k"},
      {"j", "j", "-1-i+j+k", "-1-i+j-k"},  {"-j", "-j", "1+i-j-k", "1+i-j+k"},
      {"k", "k", "1-i-j+k", "1-i+j+k"},    {"-k", "-k", "-1+i+j-k", "-1+i-j-k"},
  };
  return rows;
}

inline const std::array<Quaternion, 3>& base_points() {
  static const std::array<Quaternion, 3> pts = {Quaternion{2, 0, 0, 0}, Quaternion{1, -1, 1, -1},
                                                Quaternion{1, 1, 1, -1}};
  return pts;
}

inline bool is_abc(FacetId f) { return f == kA || f == kB || f == kC; }

}  // namespace gosset

inline void require(bool ok, const std::string& rule) {
  if (!ok) throw InternalError("validation failed: " + rule);
}

// Quaternion of a T24-labelled facet of P6 (ids 3..26).
inline Quaternion p6_quaternion(FacetId f) {
  if (f < 3 || f > 26) throw InputError("facet " + std::to_string(f) + " has no T24 label");
  return parse_quaternion(gosset::table()[static_cast<std::size_t>(f)].label);
}

inline FacetId p6_facet_of(const Quaternion& q) {
  for (FacetId f = 3; f < 27; ++f) {
    if (p6_quaternion(f) == q) return f;
  }
  throw InternalError("no facet with label " + quaternion_label(q));
}

// r: T24 -> Q8 from the hard-coded table, cross-checked against the
// definition r(q t') = q.
inline Quaternion r_value(const Quaternion& t) {
  for (const auto& row : gosset::r_table()) {
    for (std::size_t c = 1; c < 4; ++c) {
      if (parse_quaternion(row[c]) == t) return parse_quaternion(row[0]);
    }
  }
  throw InternalError("r undefined on " + quaternion_label(t));
}

inline MoveSystem move_system_p6() {
  std::vector<std::vector<FacetId>> blocks(5);
  blocks[0] = {gosset::kA, gosset::kB, gosset::kC};
  std::vector<Quaternion> seen;
  for (const auto& row : gosset::r_table()) {
    const Quaternion q = parse_quaternion(row[0]);
    require(q.in_q8(), "r values lie in Q8");
    for (std::size_t c = 1; c < 4; ++c) {
      const Quaternion t = parse_quaternion(row[c]);
      require(q * gosset::base_points()[c - 1] == t,
              std::string("r table row ") + row[0] + " matches left multiplication");
      seen.push_back(t);
    }
    const int axis = q.w ? 0 : q.x ? 1 : q.y ? 2 : 3;
    for (std::size_t c = 1; c < 4; ++c) {
      blocks[1 + static_cast<std::size_t>(axis)].push_back(p6_facet_of(parse_quaternion(row[c])));
    }
  }
  std::sort(seen.begin(), seen.end());
  require(std::unique(seen.begin(), seen.end()) == seen.end() && seen.size() == 24,
          "r table covers T24 once");
  MoveSystem m(std::move(blocks), 27);
  std::vector<std::size_t> sizes;
  for (const auto& b : m.blocks()) sizes.push_back(b.size());
  require(sizes == std::vector<std::size_t>{3, 6, 6, 6, 6}, "block sizes (3,6,6,6,6)");
  return m;
}

inline Polytope build_p6() {
  const auto& rows = gosset::table();
  std::vector<FacetRecord> facets;
  std::vector<LorentzVector> vectors;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    facets.push_back({static_cast<FacetId>(i), rows[i].label, rows[i].vector});
    vectors.push_back(rows[i].vector);
  }
  std::vector<std::vector<char>> adj;
  try {
    adj = adjacency_from_lorentz(vectors);
  } catch (const InputError& e) {
    throw InternalError(std::string("P6 table: ") + e.what());
  }
  auto adjacent = [&](FacetId a, FacetId b) { return adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0; };

  require(!adjacent(gosset::kA, gosset::kB) && !adjacent(gosset::kA, gosset::kC) &&
              !adjacent(gosset::kB, gosset::kC),
          "A, B, C pairwise disjoint");
  for (FacetId a = 3; a < 27; ++a) {
    const Quaternion qa = p6_quaternion(a);
    for (FacetId b = 3; b < 27; ++b) {
      if (a == b) continue;
      require(adjacent(a, b) == (qa.dot(p6_quaternion(b)) >= 0),
              "T24 adjacency iff non-negative scalar product (" + facets[static_cast<std::size_t>(a)].label + ", " +
                  facets[static_cast<std::size_t>(b)].label + ")");
    }
    require(adjacent(gosset::kA, a) == !qa.in_q8(), "A adjacent exactly to +-1+-i+-j+-k");
    const bool even = qa.minus_signs() % 2 == 0;
    require(adjacent(gosset::kB, a) == (qa.in_q8() || even), "B adjacency rule at " + facets[static_cast<std::size_t>(a)].label);
    require(adjacent(gosset::kC, a) == (qa.in_q8() || !even), "C adjacency rule at " + facets[static_cast<std::size_t>(a)].label);
  }

  std::vector<IdealVertex> ideal;
  for (FacetId f = 0; f < 27; ++f) {
    IdealVertex v{f, "c(" + facets[static_cast<std::size_t>(f)].label + ")", {}};
    for (FacetId g = 0; g < 27; ++g) {
      if (g != f && !adjacent(f, g)) v.incident.push_back(g);
    }
    require(v.incident.size() == 10, "ideal vertex " + v.label + " meets 10 facets");
    ideal.push_back(std::move(v));
  }
  Polytope p(6, std::move(facets), std::move(adj), std::move(ideal));
  p.set_moves_hint(move_system_p6());
  return p;
}

// Facets of P5 are the neighbours of A in P6, in P6 id order.
inline std::vector<FacetId> p5_parent_facets() {
  std::vector<FacetId> out;
  for (FacetId f = 11; f < 27; ++f) out.push_back(f);
  return out;
}

// Ideal vertices of P5 in P6 id order: B, C and Q8.
inline std::vector<FacetId> p5_parent_cusps() {
  std::vector<FacetId> out;
  for (FacetId f = 1; f < 11; ++f) out.push_back(f);
  return out;
}

// Restriction of the P6 moves to the facets of P5.
inline MoveSystem move_system_p5() {
  const MoveSystem m6 = move_system_p6();
  const auto parent = p5_parent_facets();
  std::map<int, std::vector<FacetId>> blocks;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    blocks[m6.block_of(parent[i])].push_back(static_cast<FacetId>(i));
  }
  std::vector<std::vector<FacetId>> out;
  for (auto& [_, b] : blocks) {
    require(b.size() == 4, "restricted moves have four facets");
    out.push_back(std::move(b));
  }
  return MoveSystem(std::move(out), parent.size());
}

inline Polytope build_p5() {
  const Polytope p6 = build_p6();
  const auto parent = p5_parent_facets();
  const auto cusps = p5_parent_cusps();
  require(p6.neighbours(gosset::kA) == parent, "P5 facets are the neighbours of A");
  const std::size_t n = parent.size();
  std::vector<FacetRecord> facets;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    facets.push_back({static_cast<FacetId>(i), p6.label(parent[i]), std::nullopt});
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = p6.adjacent(parent[i], parent[j]) ? 1 : 0;
  }
  std::vector<IdealVertex> ideal;
  for (std::size_t c = 0; c < cusps.size(); ++c) {
    IdealVertex v{static_cast<int>(c), p6.label(cusps[c]), {}};
    for (std::size_t i = 0; i < n; ++i) {
      if (p6.adjacent(parent[i], cusps[c])) v.incident.push_back(static_cast<FacetId>(i));
    }
    ideal.push_back(std::move(v));
  }

  // Cross-check against the sign-vector model: a facet is an even-sign vector
  // s in {+-1}^5, adjacency is a positive scalar product, and the ideal vertex
  // +-e_m is incident iff <s, +-e_m> = 1.
  auto sign_vector = [&](std::size_t i) {
    const Quaternion q = parse_quaternion(facets[i].label);
    std::array<int, 5> s = {q.w, q.x, q.y, q.z, q.minus_signs() % 2 ? -1 : 1};
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto si = sign_vector(i);
    require(std::count(si.begin(), si.end(), -1) % 2 == 0, "P5 sign vectors are even");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto sj = sign_vector(j);
      int dot = 0;
      for (std::size_t m = 0; m < 5; ++m) dot += si[m] * sj[m];
      require((adj[i][j] != 0) == (dot > 0), "P5 adjacency matches the sign model");
    }
    for (std::size_t c = 0; c < cusps.size(); ++c) {
      std::array<int, 5> e{};
      const std::string& label = ideal[c].label;
      if (label == "B") {
        e[4] = 1;
      } else if (label == "C") {
        e[4] = -1;
      } else {
        const Quaternion q = parse_quaternion(label);
        e = {q.w / 2, q.x / 2, q.y / 2, q.z / 2, 0};
      }
      int dot = 0;
      for (std::size_t m = 0; m < 5; ++m) dot += si[m] * e[m];
      require(std::binary_search(ideal[c].incident.begin(), ideal[c].incident.end(),
                                 static_cast<FacetId>(i)) == (dot == 1),
              "P5 ideal incidence matches the sign model");
    }
  }
  Polytope p(5, std::move(facets), std::move(adj), std::move(ideal));
  p.set_moves_hint(move_system_p5());
  return p;
}

// Image of a facet under left multiplication by q composed with iota^e.
inline FacetId apply_symmetry(FacetId f, const Quaternion& q, bool with_iota) {
  if (f == gosset::kA) return f;
  if (f == gosset::kB || f == gosset::kC) {
    return with_iota ? (f == gosset::kB ? gosset::kC : gosset::kB) : f;
  }
  Quaternion t = p6_quaternion(f);
  if (with_iota) t = iota(t);
  return p6_facet_of(q * t);
}

struct Symmetry {
  Quaternion q;
  bool with_iota = false;
  std::vector<FacetId> permutation;
};

// The 16 symmetries L_q o iota^e, each validated to preserve adjacency and
// the moves, and to commute with r.
inline std::vector<Symmetry> symmetries_p6() {
  const Polytope p = build_p6();
  const MoveSystem m = move_system_p6();
  std::vector<Symmetry> out;
  for (int e = 0; e < 2; ++e) {
    for (const Quaternion& q : q8_elements()) {
      Symmetry s{q, e == 1, {}};
      for (FacetId f = 0; f < 27; ++f) s.permutation.push_back(apply_symmetry(f, q, e == 1));
      std::vector<FacetId> sorted = s.permutation;
      std::sort(sorted.begin(), sorted.end());
      for (FacetId f = 0; f < 27; ++f) require(sorted[static_cast<std::size_t>(f)] == f, "symmetry is a permutation");
      const std::string name = (e ? "iota then " : "") + quaternion_label(q);
      for (FacetId a = 0; a < 27; ++a) {
        for (FacetId b = 0; b < 27; ++b) {
          const FacetId pa = s.permutation[static_cast<std::size_t>(a)];
          const FacetId pb = s.permutation[static_cast<std::size_t>(b)];
          require(p.adjacent(a, b) == p.adjacent(pa, pb), name + " preserves adjacency");
          require((m.block_of(a) == m.block_of(b)) == (m.block_of(pa) == m.block_of(pb)),
                  name + " preserves the moves");
        }
        if (a >= 3) {
          Quaternion image_r = r_value(p6_quaternion(a));
          if (e) image_r = iota(image_r);
          image_r = q * image_r;
          require(r_value(p6_quaternion(s.permutation[static_cast<std::size_t>(a)])) == image_r,
                  name + " commutes with r");
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace pmorse
