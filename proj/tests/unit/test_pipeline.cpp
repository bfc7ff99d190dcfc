#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nbdyn/errors.hpp"
#include "nbdyn/pipeline.hpp"
#include "oracles.hpp"

namespace nbdyn {
namespace {

using testing::complete_digraph;

const ParameterCode kSize{"size"};

BinaryDynamicsSet random_dynamics(std::size_t n_vertices, std::size_t trials, std::size_t spikes,
                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<Vertex> vertex(0, static_cast<Vertex>(n_vertices - 1));
  std::uniform_real_distribution<double> time(0.0, 70.0);
  BinaryDynamicsSet d;
  for (std::size_t t = 0; t < trials; ++t) {
    Trial trial{t, static_cast<Label>(t % 3), {}};
    for (std::size_t s = 0; s < spikes; ++s) trial.spikes.push_back({vertex(rng), time(rng)});
    d.trials.push_back(trial);
  }
  return d;
}

TEST(Select, AllTiedPicksLowestIds) {
  const Selection s = select_neighbourhoods(complete_digraph(5), kSize, 2, SelectionEnd::top);
  EXPECT_EQ(s.centres, (std::vector<Vertex>{0, 1}));
}

TEST(Select, StarCentreHasLargestNeighbourhood) {
  const Digraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const Selection s = select_neighbourhoods(star, kSize, 1, SelectionEnd::top);
  EXPECT_EQ(s.centres, (std::vector<Vertex>{0}));
  EXPECT_EQ(s.values, (std::vector<double>{4.0}));
  EXPECT_EQ(neighbourhood_values(star, kSize), (std::vector<double>{4, 2, 2, 2}));
}

TEST(Select, BottomEndAscending) {
  const Digraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const Selection s = select_neighbourhoods(star, kSize, 3, SelectionEnd::bottom);
  EXPECT_EQ(s.centres, (std::vector<Vertex>{1, 2, 3}));
}

TEST(Select, DefaultSizeIsFifty) { EXPECT_EQ(kDefaultSelectionSize, 50u); }

TEST(Select, Errors) {
  EXPECT_THROW(select_neighbourhoods(complete_digraph(3), kSize, 4, SelectionEnd::top), RangeError);
  EXPECT_THROW(select_neighbourhoods(complete_digraph(3), ParameterCode{"bogus"}, 1, SelectionEnd::top),
               RegistryError);
}

TEST(Select, TopAndBottomPartitionWhenValuesDistinct) {
  std::vector<double> values(30);
  std::iota(values.begin(), values.end(), 0.0);
  std::mt19937_64 rng(61);
  std::shuffle(values.begin(), values.end(), rng);
  for (std::size_t m = 0; m <= values.size(); ++m) {
    const auto top = rank_vertices(values, SelectionEnd::top);
    const auto bottom = rank_vertices(values, SelectionEnd::bottom);
    std::vector<Vertex> all(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(m));
    all.insert(all.end(), bottom.begin(), bottom.begin() + static_cast<std::ptrdiff_t>(values.size() - m));
    std::sort(all.begin(), all.end());
    std::vector<Vertex> expect(values.size());
    std::iota(expect.begin(), expect.end(), Vertex{0});
    EXPECT_EQ(all, expect);
  }
}

TEST(Select, ParallelScoringIsIdentical) {
  std::mt19937_64 rng(62);
  const Digraph g = testing::random_digraph(120, 0.05, rng);
  const auto code = parse_parameter_code("tcc");
  EXPECT_EQ(neighbourhood_values(g, code, 1), neighbourhood_values(g, code, 4));
}

TEST(Bins, FirstBin) {
  const BinSpec bins{10, 60, 2};
  const std::vector<Spike> spikes = {{7, 12.3}};
  const auto states = active_states(spikes, bins);
  EXPECT_EQ(states[0], VertexSet({7}));
  EXPECT_TRUE(states[1].empty());
}

TEST(Bins, BoundaryBelongsToLaterBin) {
  const std::vector<Spike> spikes = {{7, 35.0}};
  const auto states = active_states(spikes, BinSpec{10, 60, 2});
  EXPECT_TRUE(states[0].empty());
  EXPECT_EQ(states[1], VertexSet({7}));
}

TEST(Bins, Defaults) {
  EXPECT_EQ(BinSpec::microcircuit_default().width(), 25.0);
  EXPECT_EQ(BinSpec::microcircuit_default().start, 10.0);
  EXPECT_EQ(BinSpec::microcircuit_default().end, 60.0);
  EXPECT_EQ(BinSpec::simulator_default().start, 10.0);
  EXPECT_EQ(BinSpec::simulator_default().end, 200.0);
}

TEST(Bins, LastBinIsClosedAndOutsideIgnored) {
  const BinSpec bins{10, 60, 2};
  EXPECT_EQ(bins.bin_of(60.0), std::optional<std::size_t>(1));
  EXPECT_FALSE(bins.bin_of(9.999).has_value());
  EXPECT_FALSE(bins.bin_of(60.001).has_value());
  EXPECT_EQ(bins.bin_of(10.0), std::optional<std::size_t>(0));
}

TEST(Bins, Validation) {
  EXPECT_THROW((BinSpec{5, 5, 2}.validate()), ValidationError);
  EXPECT_THROW((BinSpec{0, 5, 0}.validate()), ValidationError);
}

TEST(Bins, EachTimeLandsInAtMostOneBin) {
  const BinSpec bins{10, 60, 7};
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> time(0.0, 70.0);
  for (int i = 0; i < 2000; ++i) {
    const double t = time(rng);
    const std::vector<Spike> spikes = {{0, t}};
    const auto states = active_states(spikes, bins);
    std::size_t hits = 0;
    for (const auto& s : states) hits += s.size();
    EXPECT_EQ(hits, (t >= 10.0 && t <= 60.0) ? 1u : 0u);
    if (auto k = bins.bin_of(t)) {
      EXPECT_GE(t, bins.start + static_cast<double>(*k) * bins.width());
      if (*k + 1 < bins.bins) EXPECT_LT(t, bins.start + static_cast<double>(*k + 1) * bins.width());
    }
  }
}

TEST(Featurise, SilentTrialIsZero) {
  const Digraph g = complete_digraph(5);
  const auto sel = select_neighbourhoods(g, kSize, 3, SelectionEnd::top);
  const FeatureMatrix f = featurise(Trial{0, 1, {}}, sel.neighbourhoods, BinSpec{}, kSize);
  EXPECT_EQ(f.rows, 3u);
  EXPECT_EQ(f.cols, 2u);
  EXPECT_TRUE(std::ranges::all_of(f.values, [](double x) { return x == 0.0; }));
  EXPECT_EQ(f.label, 1);
}

TEST(Featurise, FullyActiveNeighbourhood) {
  const Digraph g(6, {{0, 1}, {0, 2}, {3, 0}, {4, 5}});
  const auto nbs = neighbourhoods_of(g, std::vector<Vertex>{0, 4});
  Trial t{0, 0, {}};
  for (Vertex v : nbs[0].members) t.spikes.push_back({v, 15.0});
  const FeatureMatrix f = featurise(t, nbs, BinSpec{}, kSize);
  EXPECT_EQ(f.at(0, 0), 4.0);
  EXPECT_EQ(f.at(0, 1), 0.0);
  EXPECT_EQ(f.at(1, 0), 0.0);
}

TEST(Featurise, FlattenedLengthAndColumnOrder) {
  FeatureMatrix f;
  f.rows = 50;
  f.cols = 2;
  f.values.resize(100);
  for (std::size_t m = 0; m < 50; ++m) {
    f.at(m, 0) = static_cast<double>(m);
    f.at(m, 1) = 100.0 + static_cast<double>(m);
  }
  const auto flat = f.flattened();
  ASSERT_EQ(flat.size(), 100u);
  EXPECT_EQ(flat[0], 0.0);
  EXPECT_EQ(flat[49], 49.0);
  EXPECT_EQ(flat[50], 100.0);
}

TEST(Featurise, CentreCodesUseLocalCentreOrZero) {
  // Centre 0 with neighbours 1, 2 and a transitive triangle 0->1->2, 0->2.
  const Digraph g(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto nbs = neighbourhoods_of(g, std::vector<Vertex>{1});
  const BinSpec bins{0, 20, 2};
  const Trial t{0, 0, {{0, 1.0}, {1, 1.0}, {2, 1.0}, {0, 15.0}, {2, 15.0}}};
  const FeatureMatrix f = featurise(t, nbs, bins, parse_parameter_code("deg"));
  EXPECT_EQ(f.at(0, 0), 2.0);  // centre 1 active with both neighbours
  EXPECT_EQ(f.at(0, 1), 0.0);  // centre silent in bin 2
}

TEST(Featurise, ActiveSubgraphIgnoresCentreActivity) {
  const Digraph g(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto nb = closed_neighbourhood(g, 1);
  const ActiveSubgraph h = active_subgraph(nb, VertexSet({0, 2}));
  EXPECT_EQ(h.graph.n_vertices(), 2u);
  EXPECT_EQ(h.graph.n_edges(), 1u);
  EXPECT_FALSE(h.centre.has_value());
}

TEST(Featurise, InvariantUnderSpikeOrder) {
  std::mt19937_64 rng(64);
  const Digraph g = testing::random_digraph(60, 0.08, rng);
  const auto sel = select_neighbourhoods(g, kSize, 8, SelectionEnd::top);
  auto dyn = random_dynamics(60, 5, 80, rng);
  for (const auto& code : {"size", "tcc", "ec", "asr"}) {
    for (Trial& t : dyn.trials) {
      const auto a = featurise(t, sel.neighbourhoods, BinSpec{}, parse_parameter_code(code));
      std::shuffle(t.spikes.begin(), t.spikes.end(), rng);
      const auto b = featurise(t, sel.neighbourhoods, BinSpec{}, parse_parameter_code(code));
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Featurise, MonotoneAndBoundedForSize) {
  std::mt19937_64 rng(65);
  const Digraph g = testing::random_digraph(60, 0.08, rng);
  const auto sel = select_neighbourhoods(g, kSize, 10, SelectionEnd::top);
  auto dyn = random_dynamics(60, 10, 40, rng);
  const auto more = random_dynamics(60, 10, 40, rng);
  for (std::size_t i = 0; i < dyn.trials.size(); ++i) {
    const auto before = featurise(dyn.trials[i], sel.neighbourhoods, BinSpec{}, kSize);
    Trial extended = dyn.trials[i];
    extended.spikes.insert(extended.spikes.end(), more.trials[i].spikes.begin(), more.trials[i].spikes.end());
    const auto after = featurise(extended, sel.neighbourhoods, BinSpec{}, kSize);
    for (std::size_t m = 0; m < before.rows; ++m) {
      for (std::size_t k = 0; k < before.cols; ++k) {
        EXPECT_LE(before.at(m, k), after.at(m, k));
        EXPECT_LE(after.at(m, k), static_cast<double>(sel.neighbourhoods[m].members.size()));
      }
    }
  }
}

TEST(Featurise, ParallelMatchesSerial) {
  std::mt19937_64 rng(66);
  const Digraph g = testing::random_digraph(80, 0.06, rng);
  const auto sel = select_neighbourhoods(g, kSize, 12, SelectionEnd::top);
  const auto dyn = random_dynamics(80, 30, 60, rng);
  const auto code = parse_parameter_code("ec");
  EXPECT_EQ(featurise_all(dyn, sel.neighbourhoods, BinSpec{}, code, 1),
            featurise_all(dyn, sel.neighbourhoods, BinSpec{}, code, 4));
}

TEST(Filtration, LastLayerIsWholeGraph) {
  std::mt19937_64 rng(67);
  const Digraph g = testing::random_digraph(15, 0.1, rng);
  std::vector<Vertex> order(15);
  std::iota(order.begin(), order.end(), Vertex{0});
  EXPECT_EQ(build_filtration_layer(g, order, 14).graph, g);
}

TEST(Filtration, HubFirstCoversStar) {
  const Digraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(build_filtration_layer(star, std::vector<Vertex>{0, 1, 2, 3}, 0).graph, star);
}

TEST(Filtration, EdgelessFirstLayerIsOneVertex) {
  const auto layer = build_filtration_layer(Digraph(5, {}), std::vector<Vertex>{3, 0, 1, 2, 4}, 0);
  EXPECT_EQ(layer.graph.n_vertices(), 1u);
  EXPECT_EQ(layer.members, VertexSet({3}));
}

TEST(Filtration, Errors) {
  EXPECT_THROW(build_filtration_layer(Digraph(3, {}), std::vector<Vertex>{0, 1, 2}, 3), RangeError);
  EXPECT_THROW(build_filtration_layer(Digraph(3, {}), std::vector<Vertex>{0, 1, 1}, 0), ValidationError);
}

TEST(Filtration, LayersAreNested) {
  std::mt19937_64 rng(68);
  const Digraph g = testing::random_digraph(30, 0.05, rng);
  std::vector<Vertex> order(30);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t n = 0; n + 1 < 30; ++n) {
    const auto a = build_filtration_layer(g, order, n);
    const auto b = build_filtration_layer(g, order, n + 1);
    for (Vertex v : a.members) EXPECT_TRUE(b.members.contains(v));
    for (const Edge& e : a.graph.edges()) {
      const Vertex u = a.members[e.src], w = a.members[e.dst];
      EXPECT_TRUE(b.graph.has_edge(static_cast<Vertex>(*b.members.index_of(u)),
                                   static_cast<Vertex>(*b.members.index_of(w))));
    }
  }
}

TEST(Validation, RandomCentresAreDistinctAndSeeded) {
  const auto a = random_centres(100, 50, 3);
  EXPECT_EQ(a, random_centres(100, 50, 3));
  EXPECT_NE(a, random_centres(100, 50, 4));
  EXPECT_EQ(VertexSet::from_unsorted(a).size(), 50u);
  EXPECT_THROW(random_centres(10, 11, 0), RangeError);
}

TEST(Validation, CentresOnlyIsBinary) {
  std::mt19937_64 rng(69);
  const auto dyn = random_dynamics(40, 10, 30, rng);
  const std::vector<Vertex> centres = {1, 5, 9, 13};
  for (const Trial& t : dyn.trials) {
    const auto f = centres_only_matrix(t, centres, BinSpec{});
    for (std::size_t m = 0; m < f.rows; ++m) {
      for (std::size_t k = 0; k < f.cols; ++k) {
        const bool fired = std::ranges::any_of(t.spikes, [&](const Spike& s) {
          return s.vertex == centres[m] && BinSpec{}.bin_of(s.time_ms) == k;
        });
        EXPECT_EQ(f.at(m, k), fired ? 1.0 : 0.0);
      }
    }
  }
}

TEST(Validation, DegreeMatchedSubgraphsKeepVertexCount) {
  std::mt19937_64 rng(70);
  const Digraph g = testing::random_digraph(50, 0.1, rng);
  const std::vector<Vertex> centres = {0, 7, 19};
  const auto subs = degree_matched_subgraphs(g, centres, 5);
  for (std::size_t i = 0; i < centres.size(); ++i) {
    EXPECT_EQ(subs[i].members.size(), closed_neighbourhood(g, centres[i]).members.size());
    EXPECT_EQ(subs[i].centre, centres[i]);
    EXPECT_EQ(subs[i].members[subs[i].local_centre], centres[i]);
    EXPECT_EQ(subs[i].graph, induced_subgraph(g, subs[i].members));
  }
}

TEST(Validation, PermutationInverse) {
  const auto sigma = random_permutation(100, 9);
  const auto inv = inverse_permutation(sigma);
  for (Vertex v = 0; v < 100; ++v) EXPECT_EQ(inv[sigma[v]], v);
  EXPECT_THROW(inverse_permutation(std::vector<Vertex>{0, 0}), ValidationError);
}

TEST(Validation, ShuffleThenInverseRestoresActivity) {
  std::mt19937_64 rng(71);
  const auto dyn = random_dynamics(40, 6, 30, rng);
  const auto sigma = random_permutation(40, 2);
  EXPECT_EQ(shuffle_activity(shuffle_activity(dyn, sigma), inverse_permutation(sigma)), dyn);
}

SummaryRequest base_request() {
  SummaryRequest r;
  r.selection = kSize;
  r.feature = kSize;
  r.m = 6;
  r.seed = 17;
  return r;
}

TEST(Summaries, IdentityShuffleMatchesBaseline) {
  std::mt19937_64 rng(72);
  const Digraph g = testing::random_digraph(40, 0.1, rng);
  const auto dyn = random_dynamics(40, 8, 40, rng);
  const auto baseline = vector_summaries(g, dyn, base_request());
  SummaryRequest r = base_request();
  r.mode = ValidationMode::shuffled_activity;
  r.permutation = std::vector<Vertex>(40);
  std::iota(r.permutation->begin(), r.permutation->end(), Vertex{0});
  const auto shuffled = vector_summaries(g, dyn, r);
  for (std::size_t i = 0; i < dyn.trials.size(); ++i) {
    EXPECT_EQ(shuffled.matrices[i].values, baseline.matrices[i].values);
  }
}

TEST(Summaries, ShuffledDrawsAndExportsPermutation) {
  std::mt19937_64 rng(73);
  const Digraph g = testing::random_digraph(40, 0.1, rng);
  const auto dyn = random_dynamics(40, 4, 40, rng);
  SummaryRequest r = base_request();
  r.mode = ValidationMode::shuffled_activity;
  const auto out = vector_summaries(g, dyn, r);
  EXPECT_EQ(out.permutation, random_permutation(40, r.seed));
  EXPECT_EQ(out.inverse, inverse_permutation(out.permutation));
}

TEST(Summaries, EveryModeProducesOneMatrixPerTrial) {
  std::mt19937_64 rng(74);
  const Digraph g = testing::random_digraph(50, 0.1, rng);
  const auto dyn = random_dynamics(50, 7, 40, rng);
  for (auto mode : {ValidationMode::none, ValidationMode::random_selection, ValidationMode::centres_only,
                    ValidationMode::degree_matched_subgraphs, ValidationMode::fake_neighbourhoods,
                    ValidationMode::shuffled_activity}) {
    SummaryRequest r = base_request();
    r.mode = mode;
    const auto a = vector_summaries(g, dyn, r);
    ASSERT_EQ(a.matrices.size(), dyn.trials.size());
    EXPECT_EQ(a.centres.size(), r.m);
    for (const auto& f : a.matrices) EXPECT_EQ(f.values.size(), r.m * 2);
    EXPECT_EQ(vector_summaries(g, dyn, r).matrices, a.matrices);
  }
}

TEST(Summaries, RandomSelectionIterationsDiffer) {
  std::mt19937_64 rng(75);
  const Digraph g = testing::random_digraph(200, 0.03, rng);
  const auto dyn = random_dynamics(200, 2, 10, rng);
  SummaryRequest r = base_request();
  r.mode = ValidationMode::random_selection;
  const auto first = vector_summaries(g, dyn, r).centres;
  r.iteration = 1;
  EXPECT_NE(vector_summaries(g, dyn, r).centres, first);
}

TEST(Summaries, RejectsEmptyTrialSetAndBadVertices) {
  const Digraph g = complete_digraph(5);
  EXPECT_THROW(vector_summaries(g, BinaryDynamicsSet{}, base_request()), ValidationError);
  BinaryDynamicsSet bad;
  bad.trials.push_back(Trial{0, 0, {{9, 12.0}}});
  SummaryRequest r = base_request();
  r.m = 2;
  EXPECT_THROW(vector_summaries(g, bad, r), RangeError);
}

}  // namespace
}  // namespace nbdyn
