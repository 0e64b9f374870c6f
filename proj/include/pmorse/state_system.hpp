#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmorse/collapse.hpp"
#include "pmorse/gosset.hpp"
#include "pmorse/homology.hpp"
#include "pmorse/moves.hpp"
#include "pmorse/polytope.hpp"

namespace pmorse {

inline void require_total(const Polytope& p, const State& s) {
  if (s.size() != p.num_facets()) {
    throw InputError("state has " + std::to_string(s.size()) + " entries for " +
                     std::to_string(p.num_facets()) + " facets");
  }
}

struct CompatibilityResult {
  bool compatible = true;
  std::optional<std::pair<FacetId, FacetId>> witness;
};

// Adjacent facets in the same move must share their status.
inline CompatibilityResult is_compatible(const Polytope& p, const MoveSystem& m, const State& s) {
  require_total(p, s);
  for (FacetId a = 0; static_cast<std::size_t>(a) < p.num_facets(); ++a) {
    for (FacetId b = a + 1; static_cast<std::size_t>(b) < p.num_facets(); ++b) {
      if (p.adjacent(a, b) && m.block_of(a) == m.block_of(b) && s[a] != s[b]) {
        return {false, std::make_pair(a, b)};
      }
    }
  }
  return {};
}

// Flips every facet in the block of `facet`.
inline State act(const State& s, const MoveSystem& m, FacetId facet) {
  State out = s;
  for (FacetId f : m.block(m.block_of(facet))) out.set(f, flip(s[f]));
  return out;
}

inline State act_block(const State& s, const MoveSystem& m, int block) {
  return act(s, m, m.block(block).front());
}

// Closure of {s} under all moves, in canonical (sorted) order.
inline std::vector<State> orbit(const State& s, const MoveSystem& m) {
  std::set<State> seen{s};
  std::deque<State> queue{s};
  while (!queue.empty()) {
    const State cur = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < m.size(); ++b) {
      State next = act_block(cur, m, static_cast<int>(b));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

// All balanced states of P6: A, B, C share a status and every six-facet move
// gives In to one of its two r-classes and Out to the other.
inline std::vector<State> balanced_states_p6() {
  const MoveSystem m = move_system_p6();
  std::vector<State> out;
  for (unsigned mask = 0; mask < 32; ++mask) {
    State s = State::all(27, Status::In);
    const Status abc = (mask & 1u) ? Status::Out : Status::In;
    for (FacetId f : m.block(0)) s.set(f, abc);
    for (int b = 1; b <= 4; ++b) {
      const bool positive_out = (mask >> b) & 1u;
      for (FacetId f : m.block(b)) {
        const Quaternion r = r_value(p6_quaternion(f));
        const bool positive = r.w + r.x + r.y + r.z > 0;
        s.set(f, positive == positive_out ? Status::Out : Status::In);
      }
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_balanced_p6(const State& s) {
  const auto all = balanced_states_p6();
  return std::binary_search(all.begin(), all.end(), s);
}

// The balanced state whose Out facets are exactly the r-classes 1, i, j, k.
inline State reference_state_p6() {
  const Polytope p = build_p6();
  State s = State::all(27, Status::In);
  for (const char* label : {"1", "1-i+j-k", "1+i+j-k", "i", "1+i+j+k", "-1+i+j+k", "j",
                            "-1-i+j+k", "-1-i+j-k", "k", "1-i-j+k", "1-i+j+k"}) {
    s.set(p.id_of(label), Status::Out);
  }
  return s;
}

// Restriction of the reference P6 state to the facets of P5.
inline State reference_state_p5() {
  const State s6 = reference_state_p6();
  std::vector<Status> v;
  for (FacetId f : p5_parent_facets()) v.push_back(s6[f]);
  return State(std::move(v));
}

// Statuses on the facets around a face (the vertices of its dual complex).
struct FaceState {
  std::vector<FacetId> facets;  // sorted
  std::vector<Status> status;

  std::vector<FacetId> with(Status which) const {
    std::vector<FacetId> out;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      if (status[i] == which) out.push_back(facets[i]);
    }
    return out;
  }

  Status operator[](FacetId f) const {
    auto it = std::lower_bound(facets.begin(), facets.end(), f);
    if (it == facets.end() || *it != f) throw InputError("face state: facet not around face");
    return status[static_cast<std::size_t>(it - facets.begin())];
  }

  std::string key() const {
    std::string out;
    for (Status s : status) out.push_back(static_cast<char>(s));
    return out;
  }

  friend bool operator==(const FaceState&, const FaceState&) = default;
};

// Out for facets sharing a move with a defining facet, the ambient status
// otherwise.
inline FaceState inherited_state(const Polytope& p, const MoveSystem& m, const State& s,
                                 const FaceHandle& f) {
  require_total(p, s);
  FaceState out;
  out.facets = p.facets_around(f);
  std::set<int> blocks;
  for (FacetId d : f.facets) blocks.insert(m.block_of(d));
  for (FacetId g : out.facets) {
    out.status.push_back(blocks.count(m.block_of(g)) ? Status::Out : s[g]);
  }
  return out;
}

inline bool is_good_face(const MoveSystem& m, const FaceHandle& f) {
  std::map<int, int> count;
  for (FacetId d : f.facets) ++count[m.block_of(d)];
  return std::any_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 1; });
}

// Block meeting F in exactly one facet (smallest such block), if any.
inline std::optional<int> good_face_witness(const MoveSystem& m, const FaceHandle& f) {
  std::map<int, int> count;
  for (FacetId d : f.facets) ++count[m.block_of(d)];
  for (const auto& [b, c] : count) {
    if (c == 1) return b;
  }
  return std::nullopt;
}

struct LegalityRecord {
  bool legal = false;
  // True only when collapse certificates were found for both complexes;
  // false means "not certified".
  bool totally_legal = false;
  std::vector<std::size_t> betti_out;
  std::vector<std::size_t> betti_in;
  CollapseOutcome collapse_out;
  CollapseOutcome collapse_in;
};

struct StateComplexes {
  SimplicialComplex dual;
  SimplicialComplex out;
  SimplicialComplex in;
};

inline StateComplexes state_complexes(const Polytope& p, const FaceHandle& f, const FaceState& s) {
  StateComplexes c;
  c.dual = dual_complex(p, f);
  if (c.dual.vertices() != s.facets) throw InputError("face state does not match the face");
  c.out = full_subcomplex(c.dual, s.with(Status::Out));
  c.in = full_subcomplex(c.dual, s.with(Status::In));
  return c;
}

inline LegalityRecord legality(const Polytope& p, const FaceHandle& f, const FaceState& s,
                               const CollapseOptions& options = {}) {
  const StateComplexes c = state_complexes(p, f, s);
  LegalityRecord rec;
  rec.legal = c.out.is_connected() && c.in.is_connected();
  const int top = std::max(c.dual.dimension(), 0);
  rec.betti_out = betti_mod2(c.out, top);
  rec.betti_in = betti_mod2(c.in, top);
  if (rec.legal) {
    rec.collapse_out = try_collapse(c.out, std::nullopt, options);
    rec.collapse_in = try_collapse(c.in, std::nullopt, options);
    rec.totally_legal = rec.collapse_out.success && rec.collapse_in.success;
  }
  return rec;
}

// Per-move counts of the defining facets, in decreasing order.
using BadFaceSignature = std::vector<int>;

inline BadFaceSignature signature_of(const MoveSystem& m, const FaceHandle& f) {
  std::map<int, int> count;
  for (FacetId d : f.facets) ++count[m.block_of(d)];
  BadFaceSignature sig;
  for (const auto& [_, c] : count) sig.push_back(c);
  std::sort(sig.rbegin(), sig.rend());
  return sig;
}

inline std::string signature_string(const BadFaceSignature& sig) {
  std::string out = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sig[i]);
  }
  return out + ")";
}

// Proper bad faces grouped by signature. With `allowed`, a signature outside
// the set raises CertificationError naming the face.
inline std::map<BadFaceSignature, std::vector<FaceHandle>> classify_bad_faces(
    const Polytope& p, const MoveSystem& m,
    const std::optional<std::set<BadFaceSignature>>& allowed = std::nullopt) {
  std::map<BadFaceSignature, std::vector<FaceHandle>> out;
  for (int k = 1; k <= p.dimension(); ++k) {
    for (auto& f : enumerate_faces(p, k)) {
      if (is_good_face(m, f)) continue;
      BadFaceSignature sig = signature_of(m, f);
      if (allowed && !allowed->count(sig)) {
        throw CertificationError("unexpected bad face " + to_string(f) + " with signature " +
                                 signature_string(sig));
      }
      out[sig].push_back(std::move(f));
    }
  }
  return out;
}

inline std::set<BadFaceSignature> p6_bad_signatures() {
  return {{2}, {3}, {2, 2}, {2, 2, 2}};
}

}  // namespace pmorse
