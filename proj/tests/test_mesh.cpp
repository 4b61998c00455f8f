#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "heatctl/errors.hpp"
#include "heatctl/mesh.hpp"

using namespace heatctl;

namespace {

std::map<std::pair<Index, Index>, int> edge_use(const Mesh& mesh) {
  std::map<std::pair<Index, Index>, int> use;
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      Index a = t[k], b = t[(k + 1) % 3];
      use[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  return use;
}

}  // namespace

TEST(Mesh, SmallestMeshCounts) {
  const Mesh m = build_unit_square_mesh(1);
  EXPECT_EQ(m.num_vertices(), 4u);
  EXPECT_EQ(m.num_triangles(), 2u);
  EXPECT_EQ(m.boundary_edges().size(), 4u);
}

TEST(Mesh, CountingFormulas) {
  const Mesh m = build_unit_square_mesh(2);
  EXPECT_EQ(m.num_vertices(), 9u);
  EXPECT_EQ(m.num_triangles(), 8u);
  EXPECT_EQ(m.boundary_edges().size(), 8u);
  for (Index n : {3u, 7u, 16u}) {
    const Mesh k = build_unit_square_mesh(n);
    EXPECT_EQ(k.num_vertices(), (n + 1) * (n + 1));
    EXPECT_EQ(k.num_triangles(), 2 * n * n);
    EXPECT_EQ(k.boundary_edges().size(), 4 * n);
  }
}

TEST(Mesh, ZeroSubdivisionsRejected) {
  EXPECT_THROW(build_unit_square_mesh(0), ValidationError);
}

TEST(Mesh, AreasPositiveAndSumToOne) {
  for (Index n : {1u, 2u, 5u, 13u, 32u}) {
    const Mesh m = build_unit_square_mesh(n);
    double total = 0.0;
    for (Index t = 0; t < m.num_triangles(); ++t) {
      EXPECT_GT(m.signed_area(t), 0.0);
      total += m.signed_area(t);
    }
    EXPECT_NEAR(total, 1.0, 1e-14) << "n=" << n;
  }
}

TEST(Mesh, EdgeIncidenceAndEuler) {
  for (Index n : {1u, 3u, 8u}) {
    const Mesh m = build_unit_square_mesh(n);
    const auto use = edge_use(m);
    std::set<std::pair<Index, Index>> boundary;
    for (const auto& e : m.boundary_edges()) {
      boundary.insert({std::min(e.vertices[0], e.vertices[1]), std::max(e.vertices[0], e.vertices[1])});
    }
    EXPECT_EQ(boundary.size(), m.boundary_edges().size());
    for (const auto& [edge, count] : use) {
      EXPECT_EQ(count, boundary.count(edge) ? 1 : 2);
    }
    const long v = static_cast<long>(m.num_vertices());
    const long e = static_cast<long>(use.size());
    const long f = static_cast<long>(m.num_triangles());
    EXPECT_EQ(v - e + f, 1);
  }
}

TEST(Mesh, TaggedLengthsCoverPerimeter) {
  const Mesh m = build_unit_square_mesh(6);
  EXPECT_NEAR(m.tagged_length(BoundaryTag::Gamma1) + m.tagged_length(BoundaryTag::Gamma2), 4.0,
              1e-14);
}

TEST(Mesh, DefaultLeftSideClassification) {
  const Mesh m = build_unit_square_mesh(2);
  int g1 = 0, g2 = 0;
  for (const auto& e : m.boundary_edges()) (e.tag == BoundaryTag::Gamma1 ? g1 : g2)++;
  EXPECT_EQ(g1, 2);
  EXPECT_EQ(g2, 6);
  EXPECT_NEAR(m.tagged_length(BoundaryTag::Gamma1), 1.0, 1e-15);
  EXPECT_NEAR(m.tagged_length(BoundaryTag::Gamma2), 3.0, 1e-15);
}

TEST(Mesh, EmptyGamma1IsMeasureZero) {
  const Mesh m = build_unit_square_mesh(2);
  EXPECT_THROW(classify_boundary(m, {}), MeasureZeroViolation);
  const std::vector<Side> all{Side::Left, Side::Right, Side::Top, Side::Bottom};
  EXPECT_THROW(classify_boundary(m, all), MeasureZeroViolation);
}

TEST(Mesh, TwoSideClassification) {
  const std::vector<Side> sides{Side::Left, Side::Bottom};
  const Mesh m = classify_boundary(build_unit_square_mesh(1), sides);
  int g1 = 0, g2 = 0;
  for (const auto& e : m.boundary_edges()) (e.tag == BoundaryTag::Gamma1 ? g1 : g2)++;
  EXPECT_EQ(g1, 2);
  EXPECT_EQ(g2, 2);
  const auto listed = m.gamma1_sides();
  EXPECT_EQ(listed.size(), 2u);
}

TEST(Mesh, LeftSideVerticesAreGamma1) {
  const Mesh m = build_unit_square_mesh(9);
  const auto g1 = m.tagged_vertices(BoundaryTag::Gamma1);
  for (Index i = 0; i < m.num_vertices(); ++i) {
    if (m.vertex(i).x == 0.0) EXPECT_TRUE(std::binary_search(g1.begin(), g1.end(), i));
  }
  EXPECT_EQ(g1.size(), 10u);
}

TEST(Mesh, DeterministicConstruction) {
  const Mesh a = build_unit_square_mesh(11), b = build_unit_square_mesh(11);
  ASSERT_EQ(a.num_vertices(), b.num_vertices());
  for (Index i = 0; i < a.num_vertices(); ++i) {
    EXPECT_EQ(a.vertex(i).x, b.vertex(i).x);
    EXPECT_EQ(a.vertex(i).y, b.vertex(i).y);
  }
  EXPECT_TRUE(std::equal(a.triangles().begin(), a.triangles().end(), b.triangles().begin()));
}

TEST(Mesh, SideNamesRoundTrip) {
  for (Side s : {Side::Bottom, Side::Right, Side::Top, Side::Left}) {
    EXPECT_EQ(parse_side(to_string(s)), s);
  }
  EXPECT_FALSE(parse_side("diagonal").has_value());
}
