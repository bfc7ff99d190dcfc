#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "nbdyn/errors.hpp"
#include "nbdyn/flag_complex.hpp"
#include "oracles.hpp"

namespace nbdyn {
namespace {

using testing::complete_digraph;
using testing::cycle;
using testing::path;
using testing::transitive_triangle;
using Counts = std::vector<std::uint64_t>;

TEST(FlagComplex, CompleteOnThree) {
  EXPECT_EQ(build_flag_complex(complete_digraph(3)).counts(), (Counts{3, 6, 6}));
}

TEST(FlagComplex, CyclicTriangleHasNoTwoSimplex) {
  EXPECT_EQ(build_flag_complex(cycle(3)).counts(), (Counts{3, 3}));
}

TEST(FlagComplex, SingleEdge) {
  EXPECT_EQ(build_flag_complex(Digraph(2, {{0, 1}})).counts(), (Counts{2, 1}));
}

TEST(FlagComplex, EmptyGraph) {
  const auto x = build_flag_complex(Digraph());
  EXPECT_TRUE(x.counts().empty());
  EXPECT_EQ(euler_characteristic(x), 0);
}

TEST(FlagComplex, CompleteDigraphClosedForm) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto counts = build_flag_complex(complete_digraph(n), n).counts();
    ASSERT_EQ(counts.size(), n);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_EQ(counts[k], testing::binomial(n, k + 1) * testing::factorial(k + 1)) << n << " " << k;
    }
  }
}

TEST(FlagComplex, SimplicesMatchBruteForceEnumeration) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const Digraph g = testing::random_small_digraph(1, 7, rng);
    const auto x = build_flag_complex(g, g.n_vertices());
    const auto brute = testing::brute_cliques(g, g.n_vertices());
    ASSERT_EQ(x.counts().size(), brute.size());
    for (std::size_t d = 0; d < brute.size(); ++d) {
      std::vector<std::vector<Vertex>> got;
      for (std::size_t i = 0; i < x.count(d); ++i) {
        const auto s = x.simplex(d, i);
        got.emplace_back(s.begin(), s.end());
      }
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end())) << "not lexicographic";
      EXPECT_EQ(got, std::vector<std::vector<Vertex>>(brute[d].begin(), brute[d].end()));
    }
  }
}

TEST(FlagComplex, FacesArePresent) {
  std::mt19937_64 rng(7);
  const Digraph g = testing::random_digraph(15, 0.5, rng);
  const auto x = build_flag_complex(g);
  for (std::size_t d = 1; d < x.counts().size(); ++d) {
    for (std::size_t i = 0; i < x.count(d); ++i) {
      const auto s = x.simplex(d, i);
      for (std::size_t drop = 0; drop <= d; ++drop) {
        std::vector<Vertex> face(s.begin(), s.end());
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_TRUE(x.index_of(face).has_value());
      }
    }
  }
}

TEST(FlagComplex, ParallelBuildIsIdentical) {
  std::mt19937_64 rng(9);
  const Digraph g = testing::random_digraph(120, 0.12, rng);
  const auto serial = build_flag_complex(g, 6, 1);
  const auto parallel = build_flag_complex(g, 6, 4);
  ASSERT_EQ(serial.counts(), parallel.counts());
  for (std::size_t d = 0; d < serial.counts().size(); ++d) {
    EXPECT_TRUE(std::ranges::equal(serial.flat(d), parallel.flat(d)));
  }
}

TEST(FlagComplex, CountOnlyPathAgrees) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const Digraph g = testing::random_small_digraph(2, 25, rng);
    EXPECT_EQ(count_simplices(g, 4), build_flag_complex(g, 4).counts());
  }
}

TEST(FlagComplex, DimensionCapTruncates) {
  const auto x = build_flag_complex(complete_digraph(5), 2);
  EXPECT_EQ(x.counts(), (Counts{5, 20, 60}));
  EXPECT_TRUE(x.truncated());
}

TEST(FlagComplex, WritesOneSimplexPerLine) {
  std::ostringstream out;
  write_simplices(out, build_flag_complex(transitive_triangle()));
  EXPECT_EQ(out.str(), "0\n1\n2\n0 1\n0 2\n1 2\n0 1 2\n");
}

TEST(Euler, CompleteOnThree) { EXPECT_EQ(euler_characteristic(build_flag_complex(complete_digraph(3))), 3); }

TEST(Euler, CyclicTriangle) { EXPECT_EQ(euler_characteristic(build_flag_complex(cycle(3))), 0); }

TEST(Euler, TransitiveTriangle) {
  EXPECT_EQ(euler_characteristic(build_flag_complex(transitive_triangle())), 1);
}

TEST(Euler, AdditiveOverDisjointUnion) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Digraph a = testing::random_small_digraph(1, 9, rng);
    const Digraph b = testing::random_small_digraph(1, 9, rng);
    std::vector<Edge> e = a.edges();
    const auto shift = static_cast<Vertex>(a.n_vertices());
    for (const Edge& x : b.edges()) e.push_back({x.src + shift, x.dst + shift});
    const Digraph u(a.n_vertices() + b.n_vertices(), e);
    EXPECT_EQ(euler_characteristic(count_simplices(u, u.n_vertices())),
              euler_characteristic(count_simplices(a, a.n_vertices())) +
                  euler_characteristic(count_simplices(b, b.n_vertices())));
  }
}

TEST(SimplexContaining, CompleteOnThree) { EXPECT_EQ(simplex_count_containing(complete_digraph(3), 0, 2), 6u); }

TEST(SimplexContaining, PathMiddle) { EXPECT_EQ(simplex_count_containing(path(3), 1, 2), 0u); }

TEST(SimplexContaining, TransitiveTriangleMiddle) {
  EXPECT_EQ(simplex_count_containing(transitive_triangle(), 1, 2), 1u);
}

TEST(SimplexContaining, OrderOneIsDegree) {
  std::mt19937_64 rng(14);
  const Digraph g = testing::random_digraph(20, 0.3, rng);
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    EXPECT_EQ(simplex_count_containing(g, v, 1), degrees(g, v).total);
  }
}

TEST(SimplexContaining, Errors) {
  EXPECT_THROW(simplex_count_containing(path(3), 5, 2), RangeError);
  EXPECT_THROW(simplex_count_containing(path(3), 0, 0), DomainError);
}

TEST(SimplexContaining, MatchesBruteForce) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const Digraph g = testing::random_small_digraph(1, 7, rng);
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      const auto counts = simplex_counts_containing(g, v, 4);
      for (std::size_t k = 1; k <= 4; ++k) {
        EXPECT_EQ(counts[k], testing::brute_cliques_containing(g, v, k));
      }
    }
  }
}

TEST(SimplexContaining, OrderTwoMatchesAdjacencyCount) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Digraph g = testing::random_small_digraph(1, 8, rng);
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      EXPECT_EQ(static_cast<std::int64_t>(simplex_count_containing(g, v, 2)),
                testing::matrix_triangle_count(g, v));
    }
  }
}

TEST(SimplexContaining, DoubledPairSumOvercounts) {
  // Summing the pair products over ordered (j, k) counts each transitive
  // triangle twice and each cyclic one once.
  EXPECT_EQ(simplex_count_containing(cycle(3), 0, 2), 0u);
  EXPECT_EQ(testing::matrix_formula_s2(cycle(3), 0), 1);
  EXPECT_EQ(simplex_count_containing(complete_digraph(3), 0, 2), 6u);
  EXPECT_EQ(testing::matrix_formula_s2(complete_digraph(3), 0), 14);
  EXPECT_EQ(testing::matrix_triangle_count(complete_digraph(3), 0), 6);
}

}  // namespace
}  // namespace nbdyn
