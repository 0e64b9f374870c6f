#include <gtest/gtest.h>

#include "support.hpp"

namespace pmorse {
namespace {

using testing::cycle;
using testing::octahedron;
using testing::random_complex;
using testing::s0;

TEST(TryCollapse, SolidTriangleToPoint) {
  const auto k = SimplicialComplex::from_maximal_faces({{0, 1, 2}});
  const auto out = try_collapse(k, std::nullopt);
  ASSERT_TRUE(out.success);
  EXPECT_EQ(out.core.num_vertices(), 1u);
  EXPECT_EQ(out.core.dimension(), 0);
  EXPECT_TRUE(replay_collapse(k, out.sequence, std::nullopt).valid);
}

TEST(TryCollapse, OctahedronHasNoFreeFace) {
  const auto out = try_collapse(octahedron(), std::nullopt);
  EXPECT_FALSE(out.success);
  EXPECT_TRUE(out.sequence.empty());
  EXPECT_EQ(out.core, octahedron());
}

TEST(TryCollapse, CircleIsNotCertified) {
  EXPECT_FALSE(try_collapse(cycle(5), std::nullopt).success);
}

TEST(TryCollapse, EmptyComplexConventions) {
  EXPECT_FALSE(try_collapse(SimplicialComplex{}, std::nullopt).success);
  EXPECT_TRUE(try_collapse(SimplicialComplex{}, SimplicialComplex{}).success);
}

TEST(TryCollapse, TargetMustBeSubcomplex) {
  EXPECT_THROW(try_collapse(cycle(4), point(9)), InputError);
}

TEST(TryCollapse, RelativeCollapseOntoCircle) {
  // solid annulus collapses onto its inner circle
  std::vector<Simplex> faces;
  for (int i = 0; i < 4; ++i) {
    faces.push_back({i, (i + 1) % 4, 4 + i});
    faces.push_back({(i + 1) % 4, 4 + i, 4 + (i + 1) % 4});
  }
  const auto annulus = SimplicialComplex::from_maximal_faces(faces);
  const auto inner = cycle(4);
  const auto out = try_collapse(annulus, inner);
  ASSERT_TRUE(out.success);
  EXPECT_EQ(out.core, inner);
  EXPECT_TRUE(replay_collapse(annulus, out.sequence, inner).valid);
}

TEST(TryCollapse, ConesAreCollapsible) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto k = cone(random_complex(rng, 8, 6, 4), 100);
    const auto out = try_collapse(k, std::nullopt, {static_cast<std::uint64_t>(trial)});
    ASSERT_TRUE(out.success) << k;
    const auto replay = replay_collapse(k, out.sequence, std::nullopt);
    ASSERT_TRUE(replay.valid) << replay.error;
    ASSERT_EQ(replay.core, out.core);
  }
}

TEST(TryCollapse, SuccessfulOutcomesReplayAndPreserveBetti) {
  std::mt19937 rng(37);
  int successes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = random_complex(rng, 7, 6, 3);
    std::vector<Simplex> keep;
    for (const auto& m : k.maximal_faces()) {
      if (rng() % 3 == 0) keep.push_back(m);
    }
    const auto target = SimplicialComplex::from_maximal_faces(keep);
    const std::optional<SimplicialComplex> goal =
        target.empty() ? std::nullopt : std::optional<SimplicialComplex>(target);
    const auto out = try_collapse(k, goal, {static_cast<std::uint64_t>(trial)});
    if (!out.success) continue;
    ++successes;
    const auto replay = replay_collapse(k, out.sequence, goal);
    ASSERT_TRUE(replay.valid) << replay.error;
    ASSERT_EQ(replay.core, out.core);
    ASSERT_EQ(betti_mod2(k, 3), betti_mod2(out.core, 3));
  }
  EXPECT_GT(successes, 20);
}

TEST(TryCollapse, DeterministicForFixedSeed) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto k = cone(random_complex(rng, 8, 8, 4), 50);
    CollapseOptions opt{1234, 8};
    EXPECT_EQ(try_collapse(k, std::nullopt, opt).sequence, try_collapse(k, std::nullopt, opt).sequence);
  }
}

TEST(Replay, RejectsNonFreeFace) {
  const auto k = SimplicialComplex::from_maximal_faces({{0, 1, 2}});
  const CollapseSequence bad{{{0}, {0, 1}}};
  const auto r = replay_collapse(k, bad, std::nullopt);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.error.find("not free"), std::string::npos);
}

TEST(Replay, RejectsRemovingTargetFace) {
  const auto k = SimplicialComplex::from_maximal_faces({{0, 1, 2}});
  const auto target = SimplicialComplex::from_maximal_faces({{0, 1}});
  const CollapseSequence seq{{{0, 1}, {0, 1, 2}}};
  EXPECT_FALSE(replay_collapse(k, seq, target).valid);
}

TEST(Replay, RejectsIncompleteSequence) {
  const auto k = SimplicialComplex::from_maximal_faces({{0, 1, 2}});
  const CollapseSequence seq{{{1, 2}, {0, 1, 2}}};
  const auto r = replay_collapse(k, seq, std::nullopt);
  EXPECT_FALSE(r.valid);
}

TEST(ConstructiveSequences, ConeCollapse) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = cone(random_complex(rng, 7, 5, 3), 20);
    ASSERT_TRUE(replay_collapse(k, cone_collapse_sequence(k, 20), std::nullopt).valid);
  }
  EXPECT_THROW(cone_collapse_sequence(cycle(4), 0), InputError);
}

TEST(ConstructiveSequences, StarCollapseRemovesOpenStar) {
  // cone over a path with apex 9; the link of 9 is the path, itself a cone on 1
  const auto k = cone(SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}}), 9);
  const auto seq = star_collapse_sequence(k, 0, 1);
  const auto remaining = SimplicialComplex::from_maximal_faces({{1, 2, 9}});
  const auto r = replay_collapse(k, seq, remaining);
  EXPECT_TRUE(r.valid) << r.error;
}

TEST(ConstructiveSequences, JoinWithCollapsibleFactor) {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const auto k = cone(random_complex(rng, 5, 4, 3), 30);
    const auto l = relabel(random_complex(rng, 5, 4, 3), [](Vertex v) { return v + 100; });
    const auto seq = join_collapse_sequence(k, cone_collapse_sequence(k, 30), l);
    const auto r = replay_collapse(join(k, l), seq, std::nullopt);
    ASSERT_TRUE(r.valid) << r.error;
  }
}

TEST(CrossPolytope, Recognition) {
  EXPECT_TRUE(is_crosspolytope_boundary(cycle(4), 2).has_value());
  EXPECT_TRUE(is_crosspolytope_boundary(octahedron(), 3).has_value());
  EXPECT_FALSE(is_crosspolytope_boundary(cycle(6), 2).has_value());
  EXPECT_FALSE(is_crosspolytope_boundary(cycle(4), 3).has_value());
  EXPECT_THROW(is_crosspolytope_boundary(cycle(4), 0), InputError);
  const auto pairs = *is_crosspolytope_boundary(octahedron(), 3);
  EXPECT_EQ(crosspolytope_boundary(pairs), octahedron());
}

TEST(CrossPolytope, RecognisesJoinsOfS0) {
  for (int k = 1; k <= 5; ++k) {
    SimplicialComplex j;
    for (int i = 0; i < k; ++i) j = join(j, s0(2 * i, 2 * i + 1));
    EXPECT_TRUE(is_crosspolytope_boundary(j, k).has_value()) << k;
    if (k > 1) {
      EXPECT_EQ(betti_mod2(j, k - 1).back(), 1u);
    }
  }
}

TEST(CrossPolytope, SubdivisionWitness) {
  const AntipodalPairs pairs{{0, 1}, {2, 3}};
  const auto sd = barycentric_subdivision(crosspolytope_boundary(pairs));
  SubdividedCrossPolytopeWitness w{pairs, {}};
  for (std::size_t v = 0; v < sd.origin.size(); ++v) w.face_of[static_cast<Vertex>(v) + 40] = sd.origin[v];
  const auto shifted = relabel(sd.complex, [](Vertex v) { return v + 40; });
  EXPECT_TRUE(check_subdivided_crosspolytope(shifted, 2, w).valid);
  EXPECT_FALSE(check_subdivided_crosspolytope(shifted, 3, w).valid);
  auto broken = w;
  std::swap(broken.face_of[40], broken.face_of[41]);
  EXPECT_FALSE(check_subdivided_crosspolytope(shifted, 2, broken).valid);
}

}  // namespace
}  // namespace pmorse
