#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmorse/collapse.hpp"
#include "pmorse/crosspolytope.hpp"
#include "pmorse/cube_model.hpp"
#include "pmorse/polytope.hpp"
#include "pmorse/state_system.hpp"

namespace pmorse {

// Coface part of the link of a cube barycentre. Vertices of both complexes
// are vertices of sd(D), D the dual complex of the face; `simplices[v]` is the
// simplex of D whose barycentre is v.
struct CofaceLinks {
  SimplicialComplex dual;
  FaceState inherited;
  std::vector<Simplex> simplices;
  std::vector<char> ascending_vertex;  // indexed like `simplices`
  SimplicialComplex ascending;
  SimplicialComplex descending;
};

inline CofaceLinks coface_links_fast(const Polytope& p, const MoveSystem& m, const State& s,
                                     const FaceHandle& f) {
  CofaceLinks out;
  out.dual = dual_complex(p, f);
  out.inherited = inherited_state(p, m, s, f);
  if (out.dual.empty()) return out;
  const Subdivision sd = barycentric_subdivision(out.dual);
  out.simplices = sd.origin;
  std::vector<Vertex> up, down;
  for (std::size_t v = 0; v < sd.origin.size(); ++v) {
    const bool all_out = std::all_of(sd.origin[v].begin(), sd.origin[v].end(), [&](Vertex g) {
      return out.inherited[g] == Status::Out;
    });
    out.ascending_vertex.push_back(all_out ? 1 : 0);
    (all_out ? up : down).push_back(static_cast<Vertex>(v));
  }
  out.ascending = up.empty() ? SimplicialComplex{} : full_subcomplex(sd.complex, up);
  out.descending = down.empty() ? SimplicialComplex{} : full_subcomplex(sd.complex, down);
  return out;
}

// Decides from the lift on the larger cube whether the barycentre of the
// coface F + G lies above the barycentre of F: it does iff the minimum over
// the larger cube is already attained on the smaller one.
inline bool coface_membership_oracle(const Polytope& p, const MoveSystem& m, const State& s,
                                     const FaceHandle& f, const std::vector<FacetId>& extra) {
  if (extra.empty()) throw InputError("coface_membership_oracle: empty extension");
  std::vector<FacetId> all = f.facets;
  all.insert(all.end(), extra.begin(), extra.end());
  const FaceHandle big = p.face(all);
  if (big.codim() != f.codim() + extra.size()) {
    throw InputError("coface_membership_oracle: extension overlaps the face");
  }
  const CubeModel model = CubeModel::build(p, m, s, big);
  int code = 0;
  for (std::size_t i = 0; i < big.facets.size(); ++i) {
    if (f.contains(big.facets[i])) code += 2 * cube::pow3(static_cast<int>(i));
  }
  return model.top_value() > model.value(code);
}

enum class Verdict { Regular, Critical, Unknown };
enum class LinkPath { GoodFace, TotallyLegal, CriticalPattern, Oracle, None };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "Regular";
    case Verdict::Critical: return "Critical";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* to_string(LinkPath p) {
  switch (p) {
    case LinkPath::GoodFace: return "good_face";
    case LinkPath::TotallyLegal: return "totally_legal";
    case LinkPath::CriticalPattern: return "critical_pattern";
    case LinkPath::Oracle: return "oracle";
    case LinkPath::None: return "none";
  }
  return "?";
}

struct CriticalEvidence {
  int index = 0;
  CollapseSequence ascending;
  CollapseSequence descending;
  SubdividedCrossPolytopeWitness ascending_sphere;
  SubdividedCrossPolytopeWitness descending_sphere;
};

struct LinkClassification {
  Verdict verdict = Verdict::Unknown;
  int index = 0;  // meaningful for Critical
  LinkPath path = LinkPath::None;
  std::optional<int> good_block;
  FaceState inherited;
  CollapseSequence collapse_out;
  CollapseSequence collapse_in;
  std::optional<CriticalEvidence> critical;
  std::string note;

  std::string label() const {
    if (verdict == Verdict::Critical) return "Critical(" + std::to_string(index) + ")";
    return to_string(verdict);
  }
};

// All defining facets come in pairs from distinct moves.
inline bool is_pair_pattern(const MoveSystem& m, const FaceHandle& f) {
  const BadFaceSignature sig = signature_of(m, f);
  return !sig.empty() && std::all_of(sig.begin(), sig.end(), [](int c) { return c == 2; });
}

inline LinkClassification classify_link(const Polytope& p, const MoveSystem& m, const State& s,
                                        const FaceHandle& f, const CollapseOptions& options = {}) {
  LinkClassification out;
  if (auto block = good_face_witness(m, f)) {
    out.verdict = Verdict::Regular;
    out.path = LinkPath::GoodFace;
    out.good_block = block;
    return out;
  }
  out.inherited = inherited_state(p, m, s, f);
  const LegalityRecord legal = legality(p, f, out.inherited, options);
  if (legal.totally_legal) {
    out.verdict = Verdict::Regular;
    out.path = LinkPath::TotallyLegal;
    out.collapse_out = legal.collapse_out.sequence;
    out.collapse_in = legal.collapse_in.sequence;
    return out;
  }
  const bool top = static_cast<int>(f.codim()) == p.dimension();
  if (!is_pair_pattern(m, f) || !top || !out.inherited.facets.empty()) {
    out.note = "bad face outside the known patterns and inherited state not certified totally legal";
    return out;
  }
  const CubeModel model = CubeModel::build(p, m, s, f);
  const MonochromaticSplit split(model);
  const FaceLinks links = face_links_oracle(model);
  using Part = MonochromaticSplit::Part;
  const SimplicialComplex up_target = split.join_target(Part::MaxVertex);
  const SimplicialComplex down_target = split.join_target(Part::MinVertex);
  if (!up_target.is_subcomplex_of(links.ascending) ||
      !down_target.is_subcomplex_of(links.descending)) {
    out.note = "factor joins are not inside the links";
    return out;
  }
  const CollapseOutcome up = try_collapse(links.ascending, up_target, options);
  const CollapseOutcome down = try_collapse(links.descending, down_target, options);
  if (!up.success || !down.success) {
    out.note = "relative collapse onto the factor join not found";
    return out;
  }
  CriticalEvidence ev;
  ev.index = static_cast<int>(split.factors().size());
  ev.ascending = up.sequence;
  ev.descending = down.sequence;
  ev.ascending_sphere = *split.crosspolytope_witness(Part::MaxVertex);
  ev.descending_sphere = *split.crosspolytope_witness(Part::MinVertex);
  if (!check_subdivided_crosspolytope(up_target, ev.index, ev.ascending_sphere).valid ||
      !check_subdivided_crosspolytope(down_target, ev.index, ev.descending_sphere).valid) {
    out.note = "factor join is not a subdivided cross-polytope boundary";
    return out;
  }
  out.verdict = Verdict::Critical;
  out.index = ev.index;
  out.path = LinkPath::CriticalPattern;
  out.critical = std::move(ev);
  return out;
}

struct FullLinks {
  SimplicialComplex ascending;
  SimplicialComplex descending;
};

// Literal links: face part from the lift on the cube, coface part decided
// simplex by simplex by the membership oracle; the full link is their join.
inline FullLinks full_links_oracle(const Polytope& p, const MoveSystem& m, const State& s,
                                   const FaceHandle& f) {
  FullLinks face;
  if (f.codim() > 0) {
    const FaceLinks fl = face_links_oracle(CubeModel::build(p, m, s, f));
    face.ascending = fl.ascending;
    face.descending = fl.descending;
  }
  FullLinks coface;
  const SimplicialComplex dual = dual_complex(p, f);
  if (!dual.empty()) {
    const Subdivision sd = barycentric_subdivision(dual);
    std::vector<Vertex> up, down;
    for (std::size_t v = 0; v < sd.origin.size(); ++v) {
      const bool asc = coface_membership_oracle(p, m, s, f, sd.origin[v]);
      (asc ? up : down).push_back(static_cast<Vertex>(v));
    }
    if (!up.empty()) coface.ascending = full_subcomplex(sd.complex, up);
    if (!down.empty()) coface.descending = full_subcomplex(sd.complex, down);
  }
  return {join(face.ascending, coface.ascending), join(face.descending, coface.descending)};
}

// Audit path: Regular iff both literal links are found collapsible.
inline LinkClassification classify_link_oracle(const Polytope& p, const MoveSystem& m,
                                               const State& s, const FaceHandle& f,
                                               const CollapseOptions& options = {}) {
  LinkClassification out;
  out.path = LinkPath::Oracle;
  const FullLinks links = full_links_oracle(p, m, s, f);
  const CollapseOutcome up = try_collapse(links.ascending, std::nullopt, options);
  const CollapseOutcome down = try_collapse(links.descending, std::nullopt, options);
  if (up.success && down.success) {
    out.verdict = Verdict::Regular;
    out.collapse_out = up.sequence;
    out.collapse_in = down.sequence;
  } else {
    out.note = "literal links not certified collapsible";
  }
  return out;
}

struct CuspWitness {
  bool ok = false;
  int block = -1;
  FacetId first = -1;
  FacetId second = -1;
};

// Moves meeting the cusp in exactly two facets that are non-adjacent and of
// opposite status, in block order.
inline std::vector<CuspWitness> cusp_witnesses(const Polytope& p, const State& s, int cusp,
                                               const MoveSystem& m) {
  if (cusp < 0 || static_cast<std::size_t>(cusp) >= p.ideal_vertices().size()) {
    throw InputError("unknown ideal vertex " + std::to_string(cusp));
  }
  require_total(p, s);
  const auto& incident = p.ideal_vertices()[static_cast<std::size_t>(cusp)].incident;
  std::vector<CuspWitness> out;
  for (std::size_t b = 0; b < m.size(); ++b) {
    std::vector<FacetId> meet;
    for (FacetId f : m.block(static_cast<int>(b))) {
      if (std::binary_search(incident.begin(), incident.end(), f)) meet.push_back(f);
    }
    if (meet.size() != 2) continue;
    if (p.adjacent(meet[0], meet[1]) || s[meet[0]] == s[meet[1]]) continue;
    out.push_back({true, static_cast<int>(b), meet[0], meet[1]});
  }
  return out;
}

inline CuspWitness check_cusp_condition(const Polytope& p, const State& s, int cusp,
                                        const MoveSystem& m) {
  const auto all = cusp_witnesses(p, s, cusp, m);
  return all.empty() ? CuspWitness{} : all.front();
}

// The cusp-section cube with the moves and state restricted to it.
struct CuspRestriction {
  CuspSection section;
  MoveSystem moves;
  State state;

  FaceHandle to_parent(const FaceHandle& f) const {
    std::vector<FacetId> ids;
    for (FacetId x : f.facets) ids.push_back(section.to_parent[static_cast<std::size_t>(x)]);
    std::sort(ids.begin(), ids.end());
    return FaceHandle{ids};
  }

  FaceHandle from_parent(const FaceHandle& f) const {
    std::vector<FacetId> ids;
    for (FacetId x : f.facets) {
      auto it = std::find(section.to_parent.begin(), section.to_parent.end(), x);
      if (it == section.to_parent.end()) throw InputError("facet not incident to the cusp");
      ids.push_back(static_cast<FacetId>(it - section.to_parent.begin()));
    }
    return section.cube.face(ids);
  }
};

inline CuspRestriction restrict_to_cusp(const Polytope& p, const MoveSystem& m, const State& s,
                                        int cusp) {
  CuspRestriction r{build_cusp_section(p, cusp), {}, {}};
  const auto& parent = r.section.to_parent;
  std::map<int, std::vector<FacetId>> blocks;
  std::vector<Status> status;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    blocks[m.block_of(parent[i])].push_back(static_cast<FacetId>(i));
    status.push_back(s[parent[i]]);
  }
  std::vector<std::vector<FacetId>> list;
  for (auto& [_, b] : blocks) list.push_back(std::move(b));
  r.moves = MoveSystem(std::move(list), parent.size());
  r.state = State(std::move(status));
  return r;
}

struct BoundaryCertificate {
  int cusp = 0;
  CuspWitness witness;
  std::vector<std::pair<FaceHandle, LinkClassification>> faces;  // parent facet ids
  bool pass = false;
  std::string failure;
};

inline BoundaryCertificate certify_boundary_cube(const Polytope& p, const MoveSystem& m,
                                                 const State& s, int cusp,
                                                 const CollapseOptions& options = {}) {
  BoundaryCertificate cert;
  cert.cusp = cusp;
  cert.witness = check_cusp_condition(p, s, cusp, m);
  if (!cert.witness.ok) {
    cert.failure = "cusp condition fails at " + p.ideal_vertices()[static_cast<std::size_t>(cusp)].label;
    return cert;
  }
  const CuspRestriction r = restrict_to_cusp(p, m, s, cusp);
  cert.pass = true;
  for (const auto& face : enumerate_all_faces(r.section.cube)) {
    LinkClassification c = classify_link(r.section.cube, r.moves, r.state, face, options);
    if (c.verdict != Verdict::Regular && cert.pass) {
      cert.pass = false;
      cert.failure = "boundary face " + to_string(r.to_parent(face)) + " is " + c.label();
    }
    cert.faces.emplace_back(r.to_parent(face), std::move(c));
  }
  return cert;
}

}  // namespace pmorse
