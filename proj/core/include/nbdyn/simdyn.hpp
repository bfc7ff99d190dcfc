#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbdyn/digraph.hpp"
#include "nbdyn/pipeline.hpp"

namespace nbdyn {

// Every ordered pair (u, v), u != v, is an edge independently with
// probability p. Throws DomainError unless 0 <= p <= 1.
Digraph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

struct StimulusProtocol {
  std::size_t n_classes = 8;
  std::vector<VertexSet> receptors;  // one set per class
  std::size_t repeats = 500;
  double window_ms = 200.0;
  double stim_duration_ms = 5.0;
  double onset_jitter_ms = 10.0;
  double strength_min = 1.0;
  double strength_max = 2.0;
  double noise_strength = 3.0;  // std of the per-step Gaussian noise current
  double exclusion_ms = 10.0;

  std::size_t n_trials() const { return n_classes * repeats; }

  // Throws ValidationError or RangeError when the protocol is inconsistent
  // with itself or with a graph on n_vertices vertices.
  void validate(std::size_t n_vertices) const;
};

inline constexpr std::size_t kDefaultReceptorCount = 100;

// n_classes independent draws of `count` distinct vertices each.
std::vector<VertexSet> random_receptors(std::size_t n_vertices, std::size_t n_classes,
                                        std::size_t count, std::uint64_t seed);

struct LifConfig {
  double tau_ms = 10.0;
  double threshold = 1.0;
  double reset = 0.0;
  double weight = 0.05;           // synaptic weight per presynaptic spike
  double stimulus_weight = 4.0;   // receptor current per unit stimulus strength
  double step_ms = 0.1;

  double decay() const;

  // Defaults with weight = 0.5 / (n p), p the edge density of g.
  static LifConfig for_graph(const Digraph& g);

  void validate() const;
};

// Discretised current-based leaky integrate-and-fire network. Per step:
// V <- V * exp(-step/tau) + synaptic input + external input; a vertex whose
// potential reaches the threshold fires and is reset. Spikes reach
// out-neighbours one step later.
class LifNetwork {
 public:
  LifNetwork(const Digraph& g, const LifConfig& config);

  // external[v] is added to V_v as is. Returns the vertices that fired.
  std::span<const Vertex> step(std::span<const double> external);

  std::span<const double> potentials() const { return potential_; }
  const LifConfig& config() const { return config_; }

 private:
  const Digraph* graph_;
  LifConfig config_;
  double decay_;
  std::vector<double> potential_;
  std::vector<double> pending_;  // synaptic input for the next step
  std::vector<Vertex> fired_;
};

// Runs repeats * n_classes stimulus windows back to back in a random class
// order. Trial i is window i; spike times are window-local and spikes in the
// first exclusion_ms of each window are dropped.
BinaryDynamicsSet simulate(const Digraph& g, const StimulusProtocol& protocol,
                           const LifConfig& lif, std::uint64_t seed);

}  // namespace nbdyn
