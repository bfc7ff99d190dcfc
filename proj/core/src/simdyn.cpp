#include "nbdyn/simdyn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "nbdyn/errors.hpp"

namespace nbdyn {

Digraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return Digraph(n, std::move(edges));

  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1);
  auto push = [&](std::uint64_t idx) {
    const auto u = static_cast<Vertex>(idx / (n - 1));
    auto v = static_cast<Vertex>(idx % (n - 1));
    if (v >= u) ++v;
    edges.push_back({u, v});
  };
  if (p == 1.0) {
    edges.reserve(pairs);
    for (std::uint64_t idx = 0; idx < pairs; ++idx) push(idx);
    return Digraph(n, std::move(edges));
  }

  // Geometric skipping over the n(n-1) ordered pairs.
  edges.reserve(static_cast<std::size_t>(static_cast<double>(pairs) * p * 1.1) + 16);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::uint64_t idx = 0;
  for (;;) {
    const double skip = std::floor(std::log(1.0 - unit(rng)) / log_q);
    if (skip >= static_cast<double>(pairs - idx)) break;
    idx += static_cast<std::uint64_t>(skip);
    push(idx);
    if (++idx >= pairs) break;
  }
  return Digraph(n, std::move(edges));
}

void StimulusProtocol::validate(std::size_t n_vertices) const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  auto non_negative = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (n_classes == 0) throw ValidationError("protocol needs at least one class");
  if (receptors.size() != n_classes) {
    throw ValidationError("protocol has " + std::to_string(receptors.size()) +
                          " receptor sets for " + std::to_string(n_classes) + " classes");
  }
  for (const VertexSet& r : receptors) {
    if (!r.empty() && r.ids().back() >= n_vertices) throw RangeError("receptor outside graph");
  }
  if (!positive(window_ms)) throw ValidationError("window must be positive");
  if (!non_negative(stim_duration_ms) || !non_negative(onset_jitter_ms) ||
      !non_negative(exclusion_ms) || !non_negative(noise_strength)) {
    throw ValidationError("protocol durations and noise must be non-negative");
  }
  if (onset_jitter_ms >= window_ms) throw ValidationError("onset jitter must be below the window");
  if (stim_duration_ms + onset_jitter_ms > window_ms) {
    throw ValidationError("stimulus duration plus jitter exceeds the window");
  }
  if (exclusion_ms >= window_ms) throw ValidationError("exclusion covers the whole window");
  if (!non_negative(strength_min) || !(strength_min <= strength_max) ||
      !std::isfinite(strength_max)) {
    throw ValidationError("strength range must satisfy 0 <= min <= max");
  }
}

std::vector<VertexSet> random_receptors(std::size_t n_vertices, std::size_t n_classes,
                                        std::size_t count, std::uint64_t seed) {
  if (count > n_vertices) {
    throw RangeError("cannot pick " + std::to_string(count) + " receptors from " +
                     std::to_string(n_vertices) + " vertices");
  }
  std::mt19937_64 rng(seed);
  std::vector<Vertex> pool(n_vertices);
  std::vector<VertexSet> out;
  out.reserve(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::iota(pool.begin(), pool.end(), Vertex{0});
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n_vertices - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    out.push_back(VertexSet::from_unsorted({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count)}));
  }
  return out;
}

double LifConfig::decay() const { return std::exp(-step_ms / tau_ms); }

LifConfig LifConfig::for_graph(const Digraph& g) {
  LifConfig c;
  const double n = static_cast<double>(g.n_vertices());
  const double pairs = n * (n - 1.0);
  const double p = pairs > 0.0 ? static_cast<double>(g.n_edges()) / pairs : 0.0;
  if (n * p > 0.0) c.weight = 0.5 / (n * p);
  return c;
}

void LifConfig::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(tau_ms) || !positive(threshold) || !positive(weight) || !positive(step_ms)) {
    throw ValidationError("LIF time constant, threshold, weight and step must be positive");
  }
  if (!std::isfinite(reset) || reset < 0.0 || reset >= threshold) {
    throw ValidationError("LIF reset must lie in [0, threshold)");
  }
  if (!std::isfinite(stimulus_weight) || stimulus_weight < 0.0) {
    throw ValidationError("stimulus weight must be non-negative");
  }
  if (step_ms > 1.0) throw ValidationError("LIF step must be at most 1 ms");
}

LifNetwork::LifNetwork(const Digraph& g, const LifConfig& config)
    : graph_(&g),
      config_(config),
      decay_(config.decay()),
      potential_(g.n_vertices(), config.reset),
      pending_(g.n_vertices(), 0.0) {
  config_.validate();
}

std::span<const Vertex> LifNetwork::step(std::span<const double> external) {
  const std::size_t n = potential_.size();
  if (external.size() != n) throw ContractError("external input has the wrong length");
  fired_.clear();
  for (std::size_t v = 0; v < n; ++v) {
    double& x = potential_[v];
    x = x * decay_ + pending_[v] + external[v];
    pending_[v] = 0.0;
    if (x >= config_.threshold) {
      x = config_.reset;
      fired_.push_back(static_cast<Vertex>(v));
    }
  }
  for (Vertex u : fired_) {
    for (Vertex v : graph_->out(u)) pending_[v] += config_.weight;
  }
  return fired_;
}

BinaryDynamicsSet simulate(const Digraph& g, const StimulusProtocol& protocol,
                           const LifConfig& lif, std::uint64_t seed) {
  const std::size_t n = g.n_vertices();
  protocol.validate(n);
  lif.validate();

  const double per_ms = 1.0 / lif.step_ms;
  const double per_ms_rounded = std::round(per_ms);
  const bool integral_rate = std::abs(per_ms - per_ms_rounded) < 1e-9;
  auto local_time = [&](std::size_t j) {
    return integral_rate ? static_cast<double>(j) / per_ms_rounded
                         : static_cast<double>(j) * lif.step_ms;
  };
  const auto steps_per_window = static_cast<std::size_t>(std::llround(protocol.window_ms / lif.step_ms));

  std::mt19937_64 rng(seed);

  std::vector<Label> labels;
  labels.reserve(protocol.n_trials());
  for (std::size_t c = 0; c < protocol.n_classes; ++c) {
    labels.insert(labels.end(), protocol.repeats, static_cast<Label>(c));
  }
  std::shuffle(labels.begin(), labels.end(), rng);

  std::uniform_real_distribution<double> onset_dist(0.0, protocol.onset_jitter_ms);
  std::uniform_real_distribution<double> strength_dist(protocol.strength_min, protocol.strength_max);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double gain = 1.0 - lif.decay();
  const double noise_scale = gain * protocol.noise_strength;

  LifNetwork net(g, lif);
  std::vector<double> external(n, 0.0);
  BinaryDynamicsSet out;
  out.trials.reserve(labels.size());

  for (std::size_t w = 0; w < labels.size(); ++w) {
    Trial trial;
    trial.id = w;
    trial.label = labels[w];
    const double onset = onset_dist(rng);
    const double strength = strength_dist(rng);
    const double stim = gain * strength * lif.stimulus_weight;
    const VertexSet& targets = protocol.receptors[static_cast<std::size_t>(labels[w])];

    for (std::size_t j = 0; j < steps_per_window; ++j) {
      const double t = local_time(j);
      if (noise_scale > 0.0) {
        for (std::size_t v = 0; v < n; ++v) external[v] = noise_scale * noise(rng);
      } else {
        std::fill(external.begin(), external.end(), 0.0);
      }
      if (t >= onset && t < onset + protocol.stim_duration_ms) {
        for (Vertex v : targets) external[v] += stim;
      }
      const auto fired = net.step(external);
      if (t < protocol.exclusion_ms) continue;
      for (Vertex v : fired) trial.spikes.push_back({v, t});
    }
    out.trials.push_back(std::move(trial));
  }
  return out;
}

}  // namespace nbdyn
