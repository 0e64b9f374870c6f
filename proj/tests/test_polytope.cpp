#include <gtest/gtest.h>

#include <array>

#include "support.hpp"

namespace pmorse {
namespace {

// Lorentzian normals of the 27 facets, transcribed row by row.
const std::vector<std::pair<std::string, LorentzVector>>& g6_rows() {
  static const std::vector<std::pair<std::string, LorentzVector>> rows = {
      {"A", {0, 0, 0, 0, 0, -1, 0}},          {"1+i+j+k", {0, 0, 0, 0, -1, 0, 0}},
      {"-1-i-j-k", {1, 1, 1, 1, 1, 0, 2}},    {"1+i-j-k", {1, 1, 0, 0, 0, 0, 1}},
      {"1-i+j-k", {1, 0, 1, 0, 0, 0, 1}},     {"1-i-j+k", {1, 0, 0, 1, 0, 0, 1}},
      {"1-i-j-k", {1, 0, 0, 0, 1, 0, 1}},     {"-1+i+j-k", {0, 1, 1, 0, 0, 0, 1}},
      {"-1+i-j+k", {0, 1, 0, 1, 0, 0, 1}},    {"-1+i-j-k", {0, 1, 0, 0, 1, 0, 1}},
      {"-1-i+j+k", {0, 0, 1, 1, 0, 0, 1}},    {"-1-i+j-k", {0, 0, 1, 0, 1, 0, 1}},
      {"-1-i-j+k", {0, 0, 0, 1, 1, 0, 1}},    {"-1+i+j+k", {-1, 0, 0, 0, 0, 0, 0}},
      {"1-i+j+k", {0, -1, 0, 0, 0, 0, 0}},    {"1+i-j+k", {0, 0, -1, 0, 0, 0, 0}},
      {"1+i+j-k", {0, 0, 0, -1, 0, 0, 0}},    {"1", {1, 0, 0, 0, 0, 1, 1}},
      {"-1", {0, 1, 1, 1, 1, 1, 2}},          {"i", {0, 1, 0, 0, 0, 1, 1}},
      {"-i", {1, 0, 1, 1, 1, 1, 2}},          {"j", {0, 0, 1, 0, 0, 1, 1}},
      {"-j", {1, 1, 0, 1, 1, 1, 2}},          {"k", {0, 0, 0, 1, 0, 1, 1}},
      {"-k", {1, 1, 1, 0, 1, 1, 2}},          {"C", {0, 0, 0, 0, 1, 1, 1}},
      {"B", {1, 1, 1, 1, 0, 1, 2}},
  };
  return rows;
}

std::int64_t lorentz(const LorentzVector& x, const LorentzVector& y) {
  std::int64_t s = -x[6] * y[6];
  for (int i = 0; i < 6; ++i) s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  return s;
}

// Label to coordinates (1, i, j, k), doubled so that Q8 and the 16 others
// live on the same lattice.
std::array<int, 4> coords(const std::string& label) {
  std::array<int, 4> c{};
  int sign = 1;
  int terms = 0;
  for (char ch : label) {
    if (ch == '+' || ch == '-') {
      sign = ch == '-' ? -1 : 1;
      continue;
    }
    const auto slot = std::string("1ijk").find(ch);
    c[slot] = sign;
    sign = 1;
    ++terms;
  }
  if (terms == 1) {
    for (auto& x : c) x *= 2;
  }
  return c;
}

int minus_count(const std::string& label) { return static_cast<int>(std::count(label.begin(), label.end(), '-')); }

bool is_abc(const std::string& l) { return l == "A" || l == "B" || l == "C"; }

// Adjacency from the four labelling rules only.
bool rule_adjacent(const std::string& a, const std::string& b) {
  if (a == b) return false;
  if (is_abc(a) && is_abc(b)) return false;
  if (is_abc(b)) return rule_adjacent(b, a);
  const auto cb = coords(b);
  const bool q8 = std::abs(cb[0]) + std::abs(cb[1]) + std::abs(cb[2]) + std::abs(cb[3]) == 2;
  if (a == "A") return !q8;
  if (a == "B") return q8 || minus_count(b) % 2 == 0;
  if (a == "C") return q8 || minus_count(b) % 2 == 1;
  const auto ca = coords(a);
  return ca[0] * cb[0] + ca[1] * cb[1] + ca[2] * cb[2] + ca[3] * cb[3] >= 0;
}

class P6 : public ::testing::Test {
 protected:
  static const Polytope& p() {
    static const Polytope poly = build_p6();
    return poly;
  }
};

TEST_F(P6, AdjacencyFromLorentzExamples) {
  const LorentzVector a{0, 0, 0, 0, 0, -1, 0};
  const LorentzVector t{0, 0, 0, 0, -1, 0, 0};
  const LorentzVector one{1, 0, 0, 0, 0, 1, 1};
  EXPECT_EQ(lorentz_product(a, t), 0);
  EXPECT_EQ(lorentz_product(a, one), -1);
  const auto adj = adjacency_from_lorentz({a, t, one});
  EXPECT_TRUE(adj[0][1]);
  EXPECT_FALSE(adj[0][2]);
  EXPECT_TRUE(p().adjacent(p().id_of("A"), p().id_of("1+i+j+k")));
  EXPECT_FALSE(p().adjacent(p().id_of("A"), p().id_of("1")));
}

TEST_F(P6, NonUnitVectorNamesRow) {
  try {
    adjacency_from_lorentz({{0, 0, 0, 0, 0, 1, 0}, {1, 1, 0, 0, 0, 0, 0}});
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
}

TEST_F(P6, TableVectorsAreUnitAndMatchBuild) {
  ASSERT_EQ(g6_rows().size(), 27u);
  for (const auto& [label, v] : g6_rows()) {
    EXPECT_EQ(lorentz(v, v), 1) << label;
    const FacetId f = p().id_of(label);
    ASSERT_TRUE(p().facet(f).vector.has_value());
    EXPECT_EQ(*p().facet(f).vector, v) << label;
  }
}

TEST_F(P6, AdjacencyAgreesWithTableAndLabelRules) {
  for (const auto& [la, va] : g6_rows()) {
    for (const auto& [lb, vb] : g6_rows()) {
      const bool built = p().adjacent(p().id_of(la), p().id_of(lb));
      EXPECT_EQ(built, la != lb && lorentz(va, vb) == 0) << la << " " << lb;
      EXPECT_EQ(built, rule_adjacent(la, lb)) << la << " " << lb;
    }
  }
}

TEST_F(P6, Counts) {
  EXPECT_EQ(p().num_facets(), 27u);
  EXPECT_EQ(p().dimension(), 6);
  EXPECT_EQ(p().ideal_vertices().size(), 27u);
  EXPECT_EQ(enumerate_faces(p(), 1).size(), 27u);
  EXPECT_EQ(enumerate_faces(p(), 2).size(), 27u * 16u / 2u);
  EXPECT_EQ(enumerate_faces(p(), 6).size(), 72u);
  EXPECT_THROW(enumerate_faces(p(), 7), InputError);
  EXPECT_EQ(f_vector_check(p()).clique_counts.at(7), 0u);
  EXPECT_EQ(enumerate_faces(p(), 0), (std::vector<FaceHandle>{FaceHandle{}}));
  for (FacetId f = 0; f < 27; ++f) EXPECT_EQ(p().neighbours(f).size(), 16u);
  EXPECT_FALSE(p().adjacent(p().id_of("1"), p().id_of("-1")));
}

TEST_F(P6, FVectorCheck) {
  const auto report = f_vector_check(p(), {{{6, 72}, {7, 0}}, 16, 27, 10});
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.clique_counts, (std::vector<std::size_t>{1, 27, 216, 720, 1080, 648, 72, 0}));
  EXPECT_THROW(f_vector_check(p(), {{{6, 71}}, std::nullopt, std::nullopt, std::nullopt}), StructuralError);
}

TEST_F(P6, FacesAreCliquesClosedUnderSubsets) {
  for (int k = 1; k <= 6; ++k) {
    const auto faces = enumerate_faces(p(), k);
    const auto lower = enumerate_faces(p(), k - 1);
    const std::set<FaceHandle> below(lower.begin(), lower.end());
    ASSERT_TRUE(std::is_sorted(faces.begin(), faces.end()));
    for (const auto& f : faces) {
      ASSERT_TRUE(p().is_clique(f.facets));
      for (std::size_t drop = 0; drop < f.facets.size(); ++drop) {
        FaceHandle g = f;
        g.facets.erase(g.facets.begin() + static_cast<long>(drop));
        ASSERT_TRUE(below.count(g)) << to_string(f);
      }
    }
  }
}

TEST_F(P6, IdealVerticesMissTheOpposedFacetAndItsNeighbours) {
  for (const auto& v : p().ideal_vertices()) {
    ASSERT_EQ(v.incident.size(), 10u);
    const FacetId opposed = v.id;
    for (FacetId g : v.incident) {
      EXPECT_NE(g, opposed);
      EXPECT_FALSE(p().adjacent(g, opposed));
    }
  }
}

TEST_F(P6, NeighboursOfAFormP5) {
  const Polytope p5 = build_p5();
  const auto around = p().neighbours(p().id_of("A"));
  ASSERT_EQ(around.size(), p5.num_facets());
  std::vector<Simplex> edges5, edges6;
  for (FacetId a = 0; a < 16; ++a) {
    for (FacetId b = a + 1; b < 16; ++b) {
      if (p5.adjacent(a, b)) edges5.push_back({a, b});
      if (p().adjacent(around[static_cast<std::size_t>(a)], around[static_cast<std::size_t>(b)])) edges6.push_back({a, b});
    }
  }
  const auto g5 = SimplicialComplex::from_maximal_faces(edges5);
  const auto g6 = SimplicialComplex::from_maximal_faces(edges6);
  EXPECT_TRUE(find_isomorphism(g5, g6).has_value());
}

TEST(P5, Counts) {
  const Polytope p5 = build_p5();
  EXPECT_EQ(p5.num_facets(), 16u);
  EXPECT_EQ(enumerate_faces(p5, 5).size(), 16u);
  EXPECT_EQ(f_vector_check(p5).clique_counts.at(6), 0u);
  EXPECT_EQ(p5.ideal_vertices().size(), 10u);
  EXPECT_TRUE(f_vector_check(p5, {{{5, 16}, {6, 0}}, std::nullopt, 10, std::nullopt}).pass);
}

TEST(P5, EachFacetOpposesExactlyOneVertex) {
  const Polytope p5 = build_p5();
  const auto vertices = enumerate_faces(p5, 5);
  for (FacetId f = 0; f < 16; ++f) {
    int opposed = 0;
    for (const auto& v : vertices) {
      const bool far = std::none_of(v.facets.begin(), v.facets.end(),
                                    [&](FacetId g) { return g == f || p5.adjacent(f, g); });
      opposed += far;
    }
    EXPECT_EQ(opposed, 1) << p5.label(f);
  }
}

TEST(P5, SignModelAdjacencyAndIncidence) {
  const Polytope p5 = build_p5();
  for (FacetId a = 0; a < 16; ++a) {
    const auto ca = coords(p5.label(a));
    const int sa = minus_count(p5.label(a)) % 2 ? -1 : 1;
    for (FacetId b = 0; b < 16; ++b) {
      if (a == b) continue;
      const auto cb = coords(p5.label(b));
      const int sb = minus_count(p5.label(b)) % 2 ? -1 : 1;
      const int dot = ca[0] * cb[0] + ca[1] * cb[1] + ca[2] * cb[2] + ca[3] * cb[3] + sa * sb;
      EXPECT_EQ(p5.adjacent(a, b), dot > 0);
    }
  }
  const auto& ideal = p5.ideal_vertices();
  const auto it = std::find_if(ideal.begin(), ideal.end(), [](const IdealVertex& v) { return v.label == "i"; });
  ASSERT_NE(it, ideal.end());
  EXPECT_TRUE(std::binary_search(it->incident.begin(), it->incident.end(), p5.id_of("1+i+j+k")));
}

TEST_F(P6, DualComplexOfPrismFace) {
  const FaceHandle f = p().face_of_labels({"i", "1+i+j+k", "-1+i+j+k"});
  const auto d = dual_complex(p(), f);
  std::vector<Vertex> expected;
  for (const char* l : {"k", "-1+i+j-k", "j", "1+i-j+k", "-1+i-j+k", "1+i+j-k"}) expected.push_back(p().id_of(l));
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(d.vertices(), expected);
  EXPECT_EQ(d.f_vector(), (std::vector<std::size_t>{6, 9, 2}));
}

TEST_F(P6, DualComplexOfCodimFourFace) {
  const FaceHandle f = p().face_of_labels({"1+i+j+k", "-1+i+j+k", "j", "-1-i+j+k"});
  const auto d = dual_complex(p(), f);
  const auto expected = SimplicialComplex::from_maximal_faces(
      {{p().id_of("k"), p().id_of("1-i+j+k")}, {p().id_of("-1+i+j-k")}});
  EXPECT_EQ(d, expected);
}

TEST_F(P6, DualComplexAtVerticesIsEmpty) {
  for (const auto& v : enumerate_faces(p(), 6)) EXPECT_TRUE(dual_complex(p(), v).empty());
}

TEST_F(P6, DualComplexOfPolytopeIsCliqueComplex) {
  const auto d = dual_complex(p(), FaceHandle{});
  EXPECT_EQ(d.num_vertices(), 27u);
  EXPECT_EQ(d.f_vector(), (std::vector<std::size_t>{27, 216, 720, 1080, 648, 72}));
}

TEST_F(P6, FaceRejectsNonClique) {
  EXPECT_THROW(p().face_of_labels({"1", "-1"}), InputError);
}

TEST_F(P6, CuspSections) {
  for (int c = 0; c < 27; ++c) {
    const CuspSection s = build_cusp_section(p(), c);
    EXPECT_EQ(s.cube.dimension(), 5);
    EXPECT_EQ(s.opposite_pairs.size(), 5u);
    EXPECT_EQ(enumerate_faces(s.cube, 5).size(), 32u);
    EXPECT_EQ(f_vector_check(s.cube).clique_counts.at(6), 0u);
    for (FacetId a = 0; a < 10; ++a) {
      for (FacetId b = 0; b < 10; ++b) {
        const bool paired = std::any_of(s.opposite_pairs.begin(), s.opposite_pairs.end(), [&](const auto& pr) {
          return (pr.first == a && pr.second == b) || (pr.first == b && pr.second == a);
        });
        EXPECT_EQ(s.cube.adjacent(a, b), a != b && !paired);
      }
    }
  }
}

TEST_F(P6, CuspOpposedToA) {
  const CuspSection s = build_cusp_section(p(), p().id_of("A"));
  std::set<std::string> labels;
  for (FacetId g : s.to_parent) labels.insert(p().label(g));
  EXPECT_EQ(labels, (std::set<std::string>{"1", "-1", "i", "-i", "j", "-j", "k", "-k", "B", "C"}));
  std::set<std::set<std::string>> pairs;
  for (const auto& [a, b] : s.opposite_pairs) pairs.insert({s.cube.label(a), s.cube.label(b)});
  EXPECT_EQ(pairs, (std::set<std::set<std::string>>{{"1", "-1"}, {"i", "-i"}, {"j", "-j"}, {"k", "-k"}, {"B", "C"}}));
}

TEST_F(P6, CuspOpposedToOne) {
  const CuspSection s = build_cusp_section(p(), p().id_of("1"));
  std::set<std::set<std::string>> pairs;
  for (const auto& [a, b] : s.opposite_pairs) pairs.insert({s.cube.label(a), s.cube.label(b)});
  EXPECT_TRUE(pairs.count({"-1+i+j+k", "-1-i-j-k"}));
}

TEST_F(P6, CuspCubeDualIsOctahedronForTwoPairFaces) {
  const CuspSection s = build_cusp_section(p(), p().id_of("A"));
  const FaceHandle f = s.cube.face({s.opposite_pairs[0].first, s.opposite_pairs[1].first});
  EXPECT_TRUE(is_crosspolytope_boundary(dual_complex(s.cube, f), 3).has_value());
}

TEST_F(P6, Symmetries) {
  const auto syms = symmetries_p6();
  ASSERT_EQ(syms.size(), 16u);
  std::set<std::vector<FacetId>> distinct;
  for (const auto& s : syms) {
    distinct.insert(s.permutation);
    for (FacetId a = 0; a < 27; ++a) {
      for (FacetId b = 0; b < 27; ++b) {
        ASSERT_EQ(p().adjacent(a, b), p().adjacent(s.permutation[static_cast<std::size_t>(a)],
                                                   s.permutation[static_cast<std::size_t>(b)]));
      }
    }
  }
  EXPECT_EQ(distinct.size(), 16u);
}

TEST_F(P6, IotaAndLeftMultiplication) {
  auto image = [&](const std::string& label, const char* q, bool with_iota) {
    return p().label(apply_symmetry(p().id_of(label), parse_quaternion(q), with_iota));
  };
  EXPECT_EQ(image("i", "1", true), "-i");
  EXPECT_EQ(image("j", "1", true), "-k");
  EXPECT_EQ(image("k", "1", true), "-j");
  EXPECT_EQ(image("B", "1", true), "C");
  EXPECT_EQ(image("A", "1", true), "A");
  EXPECT_EQ(image("1", "i", false), "i");
}

}  // namespace
}  // namespace pmorse
