#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qhv/graph.hpp"

using namespace qhv;

namespace {

struct Built {
  FieldPtr f;
  ProjectiveSpace space;
  BMParams prm;
  PointSet m;
  LineSystem ls;
  CollinearityGraph g;

  Built(int p, int n, Fe alpha_code = Fe{})
      : f(GaloisField::make(p, n)),
        space(f),
        prm(validate_params(f, alpha_code.is_zero() ? f->primitive_element() : alpha_code, f->primitive_element())),
        m(build_point_set(space, prm, SetKind::M)),
        ls(contained_lines(space, m)),
        g(m, ls) {}
};

}  // namespace

TEST(Graph, SizesAtQ3AndQ5) {
  Built b3(3, 1);
  EXPECT_EQ(b3.g.vertex_count(), 280u);
  EXPECT_EQ(b3.g.edge_count(), 180u);
  Built b5(5, 1);
  EXPECT_EQ(b5.g.vertex_count(), 3276u);
  EXPECT_EQ(b5.g.edge_count(), 83200u);
}

TEST(Graph, EmptyLineListIsEdgeless) {
  Built b3(3, 1);
  const CollinearityGraph g(b3.m, LineSystem{});
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(component_count(g), 280u);
}

TEST(Graph, RejectsLinesOutsideTheVertexSet) {
  Built b3(3, 1);
  PointSet small(b3.space.point_count(), SetKind::other);
  small.insert(0);
  EXPECT_THROW(CollinearityGraph(small, b3.ls), UsageError);
}

TEST(Graph, AdjacencyIsJointLineContainment) {
  Built b5(5, 1);
  std::mt19937 rng(9);
  std::uniform_int_distribution<Vertex> d(0, static_cast<Vertex>(b5.g.vertex_count() - 1));
  int adjacent = 0;
  for (int i = 0; i < 10000; ++i) {
    Vertex u = d(rng), v = d(rng);
    if (i % 4 == 0 && b5.g.degree(u) > 0) v = b5.g.neighbors(u)[i % b5.g.degree(u)];
    if (u == v) continue;
    const auto l = b5.space.line_through(b5.space.coords_at(b5.g.point_of(u)), b5.space.coords_at(b5.g.point_of(v)));
    bool inside = true;
    for (auto p : b5.space.points_on_line(l)) inside = inside && b5.m.contains(p);
    ASSERT_EQ(b5.g.adjacent(u, v), inside);
    ASSERT_EQ(b5.g.adjacent(v, u), inside);
    adjacent += inside;
  }
  EXPECT_GT(adjacent, 1000);
}

TEST(Graph, DegreesFollowTheCensus) {
  Built b5(5, 1);
  const auto c = line_census(b5.space, b5.m, b5.ls, &b5.prm);
  const std::uint32_t s = b5.space.s();
  for (Vertex v = 0; v < b5.g.vertex_count(); ++v) {
    ASSERT_EQ(b5.g.point_of(v), c.points[v]);
    ASSERT_EQ(b5.g.degree(v), static_cast<std::size_t>(c.counts[v]) * s);
    for (auto w : b5.g.neighbors(v)) ASSERT_NE(w, v);
  }
}

TEST(Graph, LineBfsMatchesPlainBfs) {
  Built b5(5, 1);
  for (Vertex src : {Vertex{0}, Vertex{1}, Vertex{60}, Vertex{151}, Vertex{2000}, Vertex{3275}}) {
    const auto fast = b5.g.distances(src);
    const auto ref = oracle::bfs(b5.g, src);
    for (Vertex v = 0; v < b5.g.vertex_count(); ++v) ASSERT_EQ(fast[v], ref[v]);
  }
}

TEST(Graph, DiameterExactAtQ5) {
  Built b5(5, 1);
  const auto d = connectivity_and_diameter(b5.g);
  EXPECT_EQ(d.components, 1u);
  ASSERT_TRUE(d.diameter);
  EXPECT_EQ(*d.diameter, 3u);
  EXPECT_TRUE(d.exhaustive);
  EXPECT_EQ(d.sources, 3276u);
  // Independent sweep with the plain BFS.
  int ecc = 0;
  for (Vertex v = 0; v < b5.g.vertex_count(); ++v) {
    const auto dist = oracle::bfs(b5.g, v);
    ecc = std::max(ecc, *std::max_element(dist.begin(), dist.end()));
  }
  EXPECT_EQ(ecc, 3);
}

TEST(Graph, ReducedSourcesAgreeWithFullSweepAtQ5) {
  Built b5(5, 1);
  const auto om = omega_partition(b5.space, b5.prm);
  const auto src = reduced_diameter_sources(b5.g, om, 32, 1);
  EXPECT_EQ(src.size(), 1u + 50 + 100 + 32);
  const auto d = connectivity_and_diameter(b5.g, src, 2);
  EXPECT_FALSE(d.exhaustive);
  EXPECT_EQ(d.diameter, connectivity_and_diameter(b5.g).diameter);
  EXPECT_EQ(reduced_diameter_sources(b5.g, om, 32, 1), src);
}

TEST(Graph, DiameterIndependentOfParams) {
  const auto f = GaloisField::make(5, 1);
  int tested = 0;
  for (std::uint32_t a = 2; a < f->order() && tested < 3; a += 7) {
    if (validity_form(*f, Fe{a}, f->primitive_element()).is_zero()) continue;
    Built b(5, 1, Fe{a});
    const auto d = connectivity_and_diameter(b.g, {}, 2);
    EXPECT_EQ(d.components, 1u);
    EXPECT_EQ(d.diameter, std::optional<std::uint32_t>(3));
    ++tested;
  }
  EXPECT_EQ(tested, 3);
}

TEST(Graph, DisconnectedAtQ3) {
  Built b3(3, 1);
  const auto d = connectivity_and_diameter(b3.g);
  EXPECT_EQ(d.components, 244u);
  EXPECT_FALSE(d.diameter);
}

TEST(Graph, PInfEccentricityTwo) {
  Built b5(5, 1);
  const auto pinf = b5.g.vertex(b5.space.index_of(BMParams::p_inf()));
  const auto dist = b5.g.distances(pinf);
  EXPECT_EQ(*std::max_element(dist.begin(), dist.end()), 2);
  for (Vertex v = 0; v < b5.g.vertex_count(); ++v)
    if (b5.g.point_of(v) >= b5.space.affine_offset()) {
      ASSERT_EQ(dist[v], 2);
    }
}

TEST(Graph, DistanceWitness) {
  Built b5(5, 1);
  const auto om = omega_partition(b5.space, b5.prm);
  const auto w = distance_witness(b5.space, b5.g, b5.prm, om);
  ASSERT_EQ(w.path.size(), 4u);
  EXPECT_EQ(w.path.front(), w.from);
  EXPECT_EQ(w.path.back(), w.to);
  EXPECT_TRUE(om.omega[2].contains(w.from));
  EXPECT_TRUE(om.omega[3].contains(w.to));
  EXPECT_TRUE(om.omega[1].contains(w.path[1]));
  EXPECT_TRUE(om.omega[0].contains(w.path[2]));
  for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
    EXPECT_TRUE(b5.g.adjacent(b5.g.vertex(w.path[i]), b5.g.vertex(w.path[i + 1])));
  // Every affine point is at distance 3 from every Omega_3 point.
  const auto dist = oracle::bfs(b5.g, b5.g.vertex(w.from));
  om.omega[3].for_each([&](PointIndex i) { EXPECT_EQ(dist[b5.g.vertex(i)], 3); });

  Built b3(3, 1);
  EXPECT_THROW(distance_witness(b3.space, b3.g, b3.prm, omega_partition(b3.space, b3.prm)), DomainError);
}

TEST(Graph, Omega3Structure) {
  Built b5(5, 1);
  const auto r = omega3_structure(b5.space, b5.g, omega_partition(b5.space, b5.prm));
  EXPECT_EQ(r.components, 4u);
  EXPECT_EQ(r.sizes, (std::vector<std::size_t>(4, 25)));
  EXPECT_TRUE(r.all_cliques);
  EXPECT_TRUE(r.adjacent_to_p_inf);
  EXPECT_EQ(r.edges_to_omega12, 0u);
}

TEST(Graph, EdgeListExport) {
  Built b3(3, 1);
  std::ostringstream os;
  b3.g.write_edge_list(os);
  std::istringstream is(os.str());
  std::size_t lines = 0;
  PointIndex u = 0, v = 0, pu = 0, pv = 0;
  while (is >> u >> v) {
    EXPECT_LT(u, v);
    EXPECT_TRUE(b3.m.contains(u) && b3.m.contains(v));
    if (lines) {
      EXPECT_TRUE(std::pair(pu, pv) < std::pair(u, v));
    }
    pu = u;
    pv = v;
    ++lines;
  }
  EXPECT_EQ(lines, 180u);
}

TEST(Graph, ThreadCountDoesNotChangeDiameter) {
  Built b5(5, 1);
  EXPECT_EQ(connectivity_and_diameter(b5.g, {}, 1).diameter, connectivity_and_diameter(b5.g, {}, 3).diameter);
}
