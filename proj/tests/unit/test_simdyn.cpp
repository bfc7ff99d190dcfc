#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "nbdyn/errors.hpp"
#include "nbdyn/simdyn.hpp"

namespace nbdyn {
namespace {

StimulusProtocol small_protocol(std::size_t n_vertices, std::size_t repeats, std::uint64_t seed) {
  StimulusProtocol p;
  p.repeats = repeats;
  p.receptors = random_receptors(n_vertices, p.n_classes, std::min<std::size_t>(10, n_vertices), seed);
  return p;
}

std::size_t spike_count(const BinaryDynamicsSet& d) {
  std::size_t total = 0;
  for (const Trial& t : d.trials) total += t.spikes.size();
  return total;
}

TEST(ErdosRenyi, ZeroProbabilityIsEdgeless) { EXPECT_EQ(erdos_renyi(50, 0.0, 1).n_edges(), 0u); }

TEST(ErdosRenyi, OneIsComplete) { EXPECT_EQ(erdos_renyi(30, 1.0, 1).n_edges(), 30u * 29u); }

TEST(ErdosRenyi, EdgeCountWithinFourSigma) {
  const double pairs = 1000.0 * 999.0;
  const double mean = pairs * 0.01;
  const double sigma = std::sqrt(pairs * 0.01 * 0.99);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const double m = static_cast<double>(erdos_renyi(1000, 0.01, seed).n_edges());
    EXPECT_LE(std::abs(m - mean), 4.0 * sigma) << "seed " << seed;
  }
}

TEST(ErdosRenyi, SeededAndUniformOverPairs) {
  EXPECT_EQ(erdos_renyi(200, 0.05, 3), erdos_renyi(200, 0.05, 3));
  EXPECT_NE(erdos_renyi(200, 0.05, 3), erdos_renyi(200, 0.05, 4));
  // Out-degree of the last vertex should look like every other vertex.
  double last = 0.0, first = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Digraph g = erdos_renyi(100, 0.1, seed);
    last += static_cast<double>(g.out_degree(99) + g.in_degree(99));
    first += static_cast<double>(g.out_degree(0) + g.in_degree(0));
  }
  EXPECT_NEAR(last / 50.0, 19.8, 2.0);
  EXPECT_NEAR(first / 50.0, 19.8, 2.0);
}

TEST(ErdosRenyi, RejectsBadProbability) {
  EXPECT_THROW(erdos_renyi(10, 1.5, 0), DomainError);
  EXPECT_THROW(erdos_renyi(10, -0.1, 0), DomainError);
}

TEST(Lif, ConstantInputFiresPeriodically) {
  const Digraph single(1, {});
  LifConfig cfg;
  const double d = cfg.decay();
  const double x = 0.013;  // per-step input, steady state x/(1-d) ~ 1.3
  // Closed form of V_k = x (1 - d^k) / (1 - d) >= threshold.
  const auto period = static_cast<std::size_t>(
      std::ceil(std::log(1.0 - cfg.threshold * (1.0 - d) / x) / std::log(d)));
  LifNetwork net(single, cfg);
  const std::vector<double> input = {x};
  std::vector<std::size_t> fired_at;
  for (std::size_t s = 0; s < 10 * period + 3; ++s) {
    if (!net.step(input).empty()) fired_at.push_back(s);
  }
  ASSERT_EQ(fired_at.size(), 10u);
  for (std::size_t i = 0; i < fired_at.size(); ++i) EXPECT_EQ(fired_at[i] + 1, (i + 1) * period);
}

TEST(Lif, SpikesArriveOneStepLater) {
  const Digraph g(2, {{0, 1}});
  LifConfig cfg;
  cfg.weight = 2.0;
  LifNetwork net(g, cfg);
  EXPECT_EQ(net.step(std::vector<double>{5.0, 0.0}).size(), 1u);
  EXPECT_EQ(net.potentials()[1], 0.0);
  const auto fired = net.step(std::vector<double>{0.0, 0.0});
  ASSERT_EQ(fired.size(), 1u);
  EXPECT_EQ(fired[0], 1u);
}

TEST(Lif, ConfigValidation) {
  LifConfig c;
  c.step_ms = 2.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = LifConfig{};
  c.tau_ms = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_NEAR(LifConfig::for_graph(erdos_renyi(1000, 0.01, 2)).weight, 0.05, 0.002);
}

TEST(Simulate, NoInputNoActivity) {
  const Digraph g = erdos_renyi(30, 0.1, 1);
  StimulusProtocol p;
  p.repeats = 3;
  p.noise_strength = 0.0;
  p.receptors.assign(p.n_classes, VertexSet());
  const auto d = simulate(g, p, LifConfig::for_graph(g), 5);
  EXPECT_EQ(d.trials.size(), 24u);
  EXPECT_EQ(spike_count(d), 0u);
}

TEST(Simulate, EightClassesByFiveHundredRepeats) {
  const Digraph g = erdos_renyi(10, 0.2, 1);
  StimulusProtocol p = small_protocol(10, 500, 2);
  p.noise_strength = 0.0;
  const auto d = simulate(g, p, LifConfig::for_graph(g), 3);
  ASSERT_EQ(d.trials.size(), 4000u);
  std::map<Label, std::size_t> per_class;
  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    EXPECT_EQ(d.trials[i].id, i);
    ++per_class[d.trials[i].label];
  }
  ASSERT_EQ(per_class.size(), 8u);
  for (const auto& [label, count] : per_class) EXPECT_EQ(count, 500u) << label;
}

TEST(Simulate, DeterministicAndRespectsExclusion) {
  const Digraph g = erdos_renyi(100, 0.05, 4);
  const StimulusProtocol p = small_protocol(100, 3, 5);
  const LifConfig lif = LifConfig::for_graph(g);
  const auto a = simulate(g, p, lif, 6);
  EXPECT_EQ(a, simulate(g, p, lif, 6));
  EXPECT_NE(a, simulate(g, p, lif, 7));
  EXPECT_GT(spike_count(a), 0u);
  a.validate(g.n_vertices());
  for (const Trial& t : a.trials) {
    for (const Spike& s : t.spikes) {
      EXPECT_GE(s.time_ms, p.exclusion_ms);
      EXPECT_LT(s.time_ms, p.window_ms);
    }
  }
}

TEST(Simulate, StrongerStimulusNeverFiresLess) {
  const Digraph g = erdos_renyi(200, 0.05, 8);
  StimulusProtocol p = small_protocol(200, 10, 9);
  p.receptors = random_receptors(200, p.n_classes, 40, 9);
  p.exclusion_ms = 0.0;
  const LifConfig lif = LifConfig::for_graph(g);
  std::size_t previous = 0;
  for (double s : {1.0, 1.5, 2.0}) {
    p.strength_min = p.strength_max = s;
    const std::size_t count = spike_count(simulate(g, p, lif, 10));
    EXPECT_GE(count, previous) << "strength " << s;
    previous = count;
  }
}

TEST(Simulate, ProtocolValidation) {
  const Digraph g = erdos_renyi(20, 0.1, 1);
  StimulusProtocol p = small_protocol(20, 2, 1);
  const LifConfig lif = LifConfig::for_graph(g);
  p.onset_jitter_ms = 250.0;
  EXPECT_THROW(simulate(g, p, lif, 0), ValidationError);
  p = small_protocol(20, 2, 1);
  p.stim_duration_ms = 195.0;
  EXPECT_THROW(simulate(g, p, lif, 0), ValidationError);
  p = small_protocol(20, 2, 1);
  p.receptors.pop_back();
  EXPECT_THROW(simulate(g, p, lif, 0), ValidationError);
  p = small_protocol(20, 2, 1);
  p.receptors[0] = VertexSet({25});
  EXPECT_THROW(simulate(g, p, lif, 0), RangeError);
}

TEST(Simulate, ReceptorsAreDistinctPerClass) {
  const auto r = random_receptors(1000, 8, 100, 3);
  ASSERT_EQ(r.size(), 8u);
  for (const auto& s : r) EXPECT_EQ(s.size(), 100u);
  EXPECT_NE(r[0], r[1]);
  EXPECT_THROW(random_receptors(10, 2, 11, 0), RangeError);
}

}  // namespace
}  // namespace nbdyn
