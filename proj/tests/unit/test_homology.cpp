#include <gtest/gtest.h>

#include <random>

#include "nbdyn/errors.hpp"
#include "nbdyn/flag_complex.hpp"
#include "nbdyn/homology.hpp"
#include "oracles.hpp"

namespace nbdyn {
namespace {

using testing::cycle;
using testing::transitive_triangle;

BettiVector betti_of(const Digraph& g) { return betti_numbers(build_flag_complex(g)); }

TEST(Betti, CyclicTriangleIsACircle) {
  const auto b = betti_of(cycle(3));
  EXPECT_EQ(b[0], 1u);
  EXPECT_EQ(b[1], 1u);
  EXPECT_EQ(b[2], 0u);
}

TEST(Betti, TransitiveTriangleIsContractible) {
  const auto b = betti_of(transitive_triangle());
  EXPECT_EQ(b[0], 1u);
  EXPECT_EQ(b[1], 0u);
  EXPECT_EQ(b[2], 0u);
}

TEST(Betti, TwoDisjointEdges) {
  const auto b = betti_of(Digraph(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(b[0], 2u);
  EXPECT_EQ(b[1], 0u);
}

TEST(Betti, HollowOctahedronHasTwoSphere) {
  // Directed 3-cliques on the eight faces of an octahedron, oriented by the
  // order 0 < 1 < ... < 5 with antipodal pairs {0,5}, {1,3}, {2,4} unjoined.
  std::vector<Edge> e;
  for (Vertex u = 0; u < 6; ++u) {
    for (Vertex v = u + 1; v < 6; ++v) {
      const bool antipodal = (u == 0 && v == 5) || (u == 1 && v == 3) || (u == 2 && v == 4);
      if (!antipodal) e.push_back({u, v});
    }
  }
  const auto b = betti_of(Digraph(6, e));
  EXPECT_EQ(b[0], 1u);
  EXPECT_EQ(b[1], 0u);
  EXPECT_EQ(b[2], 1u);
}

TEST(Betti, NeedsDeepEnoughComplex) {
  const auto x = build_flag_complex(testing::complete_digraph(5), 2);
  EXPECT_THROW(betti_numbers(x, 2), ContractError);
  EXPECT_NO_THROW(betti_numbers(x, 1));
}

TEST(Betti, ShallowComplexIsFineWhenNothingIsCut) {
  const auto x = build_flag_complex(cycle(3), 2);
  EXPECT_EQ(betti_numbers(x, 2)[1], 1u);
}

TEST(Betti, MatchesDenseOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const Digraph g = testing::random_small_digraph(1, 7, rng);
    const auto x = build_flag_complex(g, g.n_vertices());
    const auto got = betti_numbers(x, g.n_vertices() - 1);
    const auto expect = testing::brute_betti(g, g.n_vertices() - 1);
    for (std::size_t d = 0; d < expect.size(); ++d) {
      EXPECT_EQ(static_cast<std::int64_t>(got[d]), expect[d]) << "dimension " << d;
    }
  }
}

TEST(Betti, SparseAndDenseRanksAgree) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Digraph g = testing::random_digraph(40, 0.25, rng);
    const auto x = build_flag_complex(g);
    for (std::size_t d = 1; d < x.counts().size(); ++d) {
      EXPECT_EQ(boundary_rank(x, d, RankMethod::sparse), boundary_rank(x, d, RankMethod::dense));
    }
  }
}

TEST(Betti, ZeroIsWeakComponentCount) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 25);
    const Digraph g = testing::random_digraph(size(rng), 0.06, rng);
    EXPECT_EQ(betti_of(g)[0], testing::weak_components(g));
  }
}

TEST(Betti, EulerPoincare) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const Digraph g = testing::random_small_digraph(1, 10, rng);
    const auto x = build_flag_complex(g, g.n_vertices());
    const auto b = betti_numbers(x, g.n_vertices() - 1);
    std::int64_t alt = 0;
    for (std::size_t d = 0; d < b.betti.size(); ++d) {
      alt += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(b.betti[d]);
    }
    EXPECT_EQ(alt, euler_characteristic(x));
  }
}

TEST(Betti, RemovingAFreeTopFaceKeepsLowerHomology) {
  // Solid 3-simplex on 0<1<2<3: deleting edge 0->3 removes the top simplex
  // and the two triangles containing that edge, leaving a contractible pair
  // of triangles glued along 1-2.
  std::vector<Edge> full;
  for (Vertex u = 0; u < 4; ++u) {
    for (Vertex v = u + 1; v < 4; ++v) full.push_back({u, v});
  }
  const auto before = betti_of(Digraph(4, full));
  std::erase(full, Edge{0, 3});
  const auto after = betti_of(Digraph(4, full));
  EXPECT_EQ(before[0], after[0]);
  EXPECT_EQ(before[1], after[1]);
}

TEST(Nbc, SingleVertex) {
  const auto x = build_flag_complex(Digraph(1, {}));
  EXPECT_DOUBLE_EQ(normalised_betti_coefficient(x, betti_numbers(x)), 1.0);
}

TEST(Nbc, CyclicTriangle) {
  const auto x = build_flag_complex(cycle(3));
  EXPECT_DOUBLE_EQ(normalised_betti_coefficient(x, betti_numbers(x)), 1.0);
}

TEST(Nbc, TransitiveTriangle) {
  const auto x = build_flag_complex(transitive_triangle());
  EXPECT_NEAR(normalised_betti_coefficient(x, betti_numbers(x)), 1.0 / 3.0, 1e-15);
}

TEST(Nbc, EmptyComplex) {
  const auto x = build_flag_complex(Digraph());
  EXPECT_EQ(normalised_betti_coefficient(x, betti_numbers(x)), 0.0);
}

}  // namespace
}  // namespace nbdyn
