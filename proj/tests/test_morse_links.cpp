#include <gtest/gtest.h>

#include "support.hpp"

namespace pmorse {
namespace {

const Polytope& p6() {
  static const Polytope p = build_p6();
  return p;
}

const MoveSystem& m6() {
  static const MoveSystem m = move_system_p6();
  return m;
}

// Combinatorial k-cube: facet 2i is opposite to facet 2i+1.
Polytope cube_polytope(int k) {
  const auto n = static_cast<std::size_t>(2 * k);
  std::vector<FacetRecord> facets;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 1));
  for (std::size_t i = 0; i < n; ++i) {
    facets.push_back({static_cast<FacetId>(i), "x" + std::to_string(i), std::nullopt});
    adj[i][i] = 0;
    adj[i][i ^ 1u] = 0;
  }
  return Polytope(k, std::move(facets), std::move(adj));
}

// The face {0, 2, ..., 2k-2} of the k-cube, whose defining facets sit in the
// blocks given by `block_of_coord`; the opposite facets share those blocks.
CubeModel corner_model(int k, const std::vector<int>& block_of_coord, Status base) {
  const Polytope p = cube_polytope(k);
  std::map<int, std::vector<FacetId>> blocks;
  for (int i = 0; i < k; ++i) {
    blocks[block_of_coord[static_cast<std::size_t>(i)]].push_back(2 * i);
    blocks[block_of_coord[static_cast<std::size_t>(i)]].push_back(2 * i + 1);
  }
  std::vector<std::vector<FacetId>> list;
  for (auto& [_, b] : blocks) list.push_back(b);
  const MoveSystem m(list, static_cast<std::size_t>(2 * k));
  std::vector<FacetId> corner;
  for (int i = 0; i < k; ++i) corner.push_back(2 * i);
  return CubeModel::build(p, m, State::all(static_cast<std::size_t>(2 * k), base), p.face(corner));
}

TEST(CubeModel, CoherentSquare) {
  const CubeModel c = corner_model(2, {0, 1}, Status::Out);
  EXPECT_EQ(c.vertex_value(0), (LiftValue{0, 0}));
  EXPECT_EQ(c.vertex_value(1), (LiftValue{1, 0}));
  EXPECT_EQ(c.vertex_value(2), (LiftValue{1, 0}));
  EXPECT_EQ(c.vertex_value(3), (LiftValue{2, 0}));
  EXPECT_EQ(c.top_value(), (LiftValue{0, 2}));
}

TEST(CubeModel, MonochromaticSquareIsCheckerboard) {
  const CubeModel c = corner_model(2, {0, 0}, Status::Out);
  EXPECT_EQ(c.vertex_value(0), (LiftValue{0, 0}));
  EXPECT_EQ(c.vertex_value(1), (LiftValue{1, 0}));
  EXPECT_EQ(c.vertex_value(2), (LiftValue{1, 0}));
  EXPECT_EQ(c.vertex_value(3), (LiftValue{0, 0}));
  for (int code = 0; code < 9; ++code) {
    if (cube::free_count(code, 2) == 1) {
      EXPECT_EQ(c.value(code), (LiftValue{0, 1}));
    }
  }
  EXPECT_EQ(c.top_value(), (LiftValue{0, 2}));
}

TEST(CubeModel, MinimumVertexValueIsZero) {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<int> blocks;
    for (int i = 0; i < k; ++i) blocks.push_back(static_cast<int>(rng() % 3));
    const CubeModel c = corner_model(k, blocks, rng() % 2 ? Status::Out : Status::In);
    LiftValue lo{INT64_MAX, 0};
    for (unsigned w = 0; w < (1u << k); ++w) lo = std::min(lo, c.vertex_value(w));
    ASSERT_EQ(lo, (LiftValue{0, 0}));
    for (int code = 0; code < c.num_faces(); ++code) {
      LiftValue vmin{INT64_MAX, 0};
      for (unsigned w = 0; w < (1u << k); ++w) {
        bool inside = true;
        for (int i = 0; i < k; ++i) {
          const int d = cube::digit(code, i);
          if (d != 2 && static_cast<unsigned>(d) != ((w >> i) & 1u)) inside = false;
        }
        if (inside) vmin = std::min(vmin, c.vertex_value(w));
      }
      ASSERT_EQ(c.value(code), (vmin + LiftValue{0, cube::free_count(code, k)}));
    }
  }
}

TEST(FaceLinks, MonochromaticSquareAscendingIsTwoPoints) {
  const FaceLinks l = face_links_oracle(corner_model(2, {0, 0}, Status::Out));
  EXPECT_EQ(l.ascending.num_vertices(), 2u);
  EXPECT_EQ(l.ascending.dimension(), 0);
  EXPECT_EQ(l.descending.components().size(), 2u);
}

TEST(FaceLinks, MonochromaticThreeCube) {
  const FaceLinks l = face_links_oracle(corner_model(3, {0, 0, 0}, Status::Out));
  EXPECT_EQ(l.ascending.num_vertices(), 4u);
  EXPECT_EQ(l.ascending.dimension(), 0);
  // 26 barycentres of the boundary minus the 4 top vertices
  EXPECT_EQ(l.descending.num_vertices(), 22u);
  EXPECT_EQ(betti_mod2(l.descending, 2), (std::vector<std::size_t>{1, 3, 0}));
}

TEST(FaceLinks, OracleRejectsPoint) {
  EXPECT_THROW(face_links_oracle(CubeModel::build(p6(), m6(), reference_state_p6(), FaceHandle{})), InputError);
}

TEST(FaceLinks, SumOverMonochromaticFactors) {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 5);
    std::vector<int> blocks;
    for (int i = 0; i < k; ++i) blocks.push_back(static_cast<int>(rng() % 3));
    const CubeModel c = corner_model(k, blocks, rng() % 2 ? Status::Out : Status::In);
    const MonochromaticSplit split(c);
    for (int code = 0; code < c.num_faces(); ++code) ASSERT_EQ(c.value(code), split.sum_value(code));
    const FaceLinks oracle = face_links_oracle(c);
    const FaceLinks fast = split.predicted_links();
    ASSERT_EQ(oracle.ascending, fast.ascending);
    ASSERT_EQ(oracle.descending, fast.descending);
  }
}

TEST(FaceLinks, ThreeMonochromaticSquaresCollapseOntoOctahedron) {
  const CubeModel c = corner_model(6, {0, 0, 1, 1, 2, 2}, Status::Out);
  const MonochromaticSplit split(c);
  const FaceLinks l = face_links_oracle(c);
  using Part = MonochromaticSplit::Part;
  for (Part extreme : {Part::MaxVertex, Part::MinVertex}) {
    const SimplicialComplex target = split.join_target(extreme);
    const auto& link = extreme == Part::MaxVertex ? l.ascending : l.descending;
    ASSERT_TRUE(target.is_subcomplex_of(link));
    const auto out = try_collapse(link, target);
    ASSERT_TRUE(out.success);
    const auto w = split.crosspolytope_witness(extreme);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(check_subdivided_crosspolytope(target, 3, *w).valid);
    EXPECT_EQ(betti_mod2(target, 2), (std::vector<std::size_t>{1, 0, 1}));
  }
}

TEST(CofaceLinks, WholePolytopeAscendingIsSubdividedOutComplex) {
  const State s = reference_state_p6();
  const CofaceLinks c = coface_links_fast(p6(), m6(), s, FaceHandle{});
  std::vector<Vertex> out;
  for (FacetId f = 0; f < 27; ++f) {
    if (s[f] == Status::Out) out.push_back(f);
  }
  const auto sigma_out = full_subcomplex(dual_complex(p6(), FaceHandle{}), out);
  EXPECT_EQ(c.ascending.f_vector(), barycentric_subdivision(sigma_out).complex.f_vector());
  EXPECT_TRUE(try_collapse(c.ascending, std::nullopt).success);
}

TEST(CofaceLinks, CodimFourBadFaceGivesCones) {
  const FaceHandle f = p6().face_of_labels({"1+i+j+k", "-1+i+j+k", "j", "-1-i+j+k"});
  for (const auto& s : balanced_states_p6()) {
    const CofaceLinks c = coface_links_fast(p6(), m6(), s, f);
    ASSERT_EQ(c.inherited.facets.size(), 3u);
    const Status edge = c.inherited[p6().id_of("k")];
    EXPECT_EQ(c.inherited[p6().id_of("1-i+j+k")], edge);
    EXPECT_NE(c.inherited[p6().id_of("-1+i+j-k")], edge);
    EXPECT_TRUE(try_collapse(c.ascending, std::nullopt).success);
    EXPECT_TRUE(try_collapse(c.descending, std::nullopt).success);
  }
}

TEST(CofaceLinks, VerticesHaveEmptyDual) {
  const auto v = enumerate_faces(p6(), 6).front();
  const CofaceLinks c = coface_links_fast(p6(), m6(), reference_state_p6(), v);
  EXPECT_TRUE(c.ascending.empty());
  EXPECT_TRUE(c.descending.empty());
}

TEST(CofaceLinks, CofacetRules) {
  const State s = reference_state_p6();
  const FaceHandle f = p6().face_of_labels({"1+i+j+k", "-1+i+j+k"});
  const FaceState inh = inherited_state(p6(), m6(), s, f);
  for (FacetId g : inh.facets) {
    const bool asc = coface_membership_oracle(p6(), m6(), s, f, {g});
    EXPECT_EQ(asc, s[g] == Status::Out || m6().block_of(g) == m6().block_of(f.facets[0])) << p6().label(g);
  }
  EXPECT_THROW(coface_membership_oracle(p6(), m6(), s, f, {}), InputError);
}

TEST(CofaceLinks, FastMatchesMembershipOracle) {
  std::mt19937 rng(67);
  const auto faces = enumerate_all_faces(p6());
  const auto& states = balanced_states_p6();
  for (int trial = 0; trial < 120; ++trial) {
    const auto& f = faces[rng() % faces.size()];
    if (f.codim() < 2) continue;
    const State& s = states[rng() % states.size()];
    const CofaceLinks c = coface_links_fast(p6(), m6(), s, f);
    for (std::size_t v = 0; v < c.simplices.size(); ++v) {
      ASSERT_EQ(c.ascending_vertex[v] != 0, coface_membership_oracle(p6(), m6(), s, f, c.simplices[v]))
          << to_string(f);
    }
  }
}

TEST(Classify, Examples) {
  const State s = reference_state_p6();
  const auto good = classify_link(p6(), m6(), s, p6().face_of_labels({"A", "1+i+j+k"}));
  EXPECT_EQ(good.verdict, Verdict::Regular);
  EXPECT_EQ(good.path, LinkPath::GoodFace);
  const auto whole = classify_link(p6(), m6(), s, FaceHandle{});
  EXPECT_EQ(whole.verdict, Verdict::Regular);
  EXPECT_EQ(whole.path, LinkPath::TotallyLegal);
  const auto bad = classify_bad_faces(p6(), m6());
  for (const auto& v : bad.at({2, 2, 2})) {
    const auto c = classify_link(p6(), m6(), s, v);
    EXPECT_EQ(c.label(), "Critical(3)");
    EXPECT_EQ(c.path, LinkPath::CriticalPattern);
  }
}

TEST(Classify, AgreesWithOracleOnBadFaces) {
  const State s = reference_state_p6();
  const auto bad = classify_bad_faces(p6(), m6());
  for (const auto& sig : {BadFaceSignature{2}, BadFaceSignature{3}, BadFaceSignature{2, 2}}) {
    const auto& faces = bad.at(sig);
    for (std::size_t i = 0; i < faces.size(); i += 5) {
      const auto fast = classify_link(p6(), m6(), s, faces[i]);
      const auto oracle = classify_link_oracle(p6(), m6(), s, faces[i]);
      EXPECT_EQ(fast.verdict, Verdict::Regular) << to_string(faces[i]);
      EXPECT_EQ(oracle.verdict, Verdict::Regular) << to_string(faces[i]);
    }
  }
}

TEST(Classify, InvariantUnderDefiningTranslates) {
  const auto faces = enumerate_all_faces(p6());
  std::mt19937 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& f = faces[rng() % faces.size()];
    if (f.facets.empty()) continue;
    const State s = balanced_states_p6()[rng() % 32];
    const State t = act(s, m6(), f.facets[rng() % f.facets.size()]);
    const auto a = classify_link(p6(), m6(), s, f);
    const auto b = classify_link(p6(), m6(), t, f);
    ASSERT_EQ(a.label(), b.label()) << to_string(f);
    ASSERT_EQ(a.inherited, b.inherited);
  }
}

int cusp_of(const std::string& label) { return p6().id_of(label); }

bool has_witness(const std::vector<CuspWitness>& ws, const std::set<std::string>& pair) {
  return std::any_of(ws.begin(), ws.end(), [&](const CuspWitness& w) {
    return std::set<std::string>{p6().label(w.first), p6().label(w.second)} == pair;
  });
}

TEST(Cusps, WitnessExamples) {
  for (const auto& s : balanced_states_p6()) {
    EXPECT_TRUE(has_witness(cusp_witnesses(p6(), s, cusp_of("1+i+j+k"), m6()), {"-1-i+j-k", "-j"}));
    EXPECT_TRUE(has_witness(cusp_witnesses(p6(), s, cusp_of("1"), m6()), {"-1+i+j+k", "-1-i-j-k"}));
    const auto at_a = cusp_witnesses(p6(), s, cusp_of("A"), m6());
    ASSERT_FALSE(at_a.empty());
    for (const auto& w : at_a) {
      EXPECT_EQ(p6_quaternion(w.first), -p6_quaternion(w.second));
    }
  }
  EXPECT_THROW(cusp_witnesses(p6(), reference_state_p6(), 27, m6()), InputError);
}

TEST(Cusps, NoWitnessWhenStatusesAgree) {
  EXPECT_FALSE(check_cusp_condition(p6(), State::all(27, Status::Out), 0, m6()).ok);
}

TEST(Cusps, RestrictionAndBoundaryCube) {
  const State s = reference_state_p6();
  const CuspRestriction r = restrict_to_cusp(p6(), m6(), s, cusp_of("1+i+j+k"));
  EXPECT_EQ(r.section.cube.num_facets(), 10u);
  for (const auto& f : enumerate_faces(r.section.cube, 2)) EXPECT_EQ(r.from_parent(r.to_parent(f)), f);
  const BoundaryCertificate cert = certify_boundary_cube(p6(), m6(), s, cusp_of("1+i+j+k"));
  EXPECT_TRUE(cert.pass) << cert.failure;
  EXPECT_EQ(cert.faces.size(), enumerate_all_faces(r.section.cube).size());
  const auto w = cert.witness;
  for (const auto& [face, c] : cert.faces) {
    EXPECT_EQ(c.verdict, Verdict::Regular);
    if (face.contains(w.first) && !face.contains(w.second)) {
      EXPECT_EQ(c.path, LinkPath::GoodFace) << to_string(face);
    }
  }
}

TEST(Cusps, BoundaryFailsWithoutWitness) {
  const auto cert = certify_boundary_cube(p6(), m6(), State::all(27, Status::Out), 0);
  EXPECT_FALSE(cert.pass);
  EXPECT_NE(cert.failure.find("cusp condition"), std::string::npos);
}

}  // namespace
}  // namespace pmorse
