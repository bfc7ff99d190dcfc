#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbdyn/digraph.hpp"
#include "nbdyn/params.hpp"

namespace nbdyn {

using Label = int;

struct Spike {
  Vertex vertex = 0;
  double time_ms = 0.0;

  friend bool operator==(const Spike&, const Spike&) = default;
};

// One labelled instance of binary dynamics: a list of spike events on a
// local clock that starts at stimulus-window onset.
struct Trial {
  std::size_t id = 0;
  Label label = 0;
  std::vector<Spike> spikes;

  friend bool operator==(const Trial&, const Trial&) = default;
};

struct BinaryDynamicsSet {
  std::vector<Trial> trials;

  // Sorted distinct labels.
  std::vector<Label> label_set() const;

  // Throws RangeError for a vertex >= n_vertices and ValidationError for a
  // negative or non-finite spike time.
  void validate(std::size_t n_vertices) const;

  friend bool operator==(const BinaryDynamicsSet&, const BinaryDynamicsSet&) = default;
};

// Uniform partition of [start, end] into `bins` intervals. Bins are
// half-open [a + (k-1)w, a + kw) except the last, which includes `end`.
struct BinSpec {
  double start = 10.0;
  double end = 60.0;
  std::size_t bins = 2;

  double width() const { return (end - start) / static_cast<double>(bins); }

  // Zero-based bin of time t, or nothing when t lies outside [start, end].
  std::optional<std::size_t> bin_of(double t) const;

  // Throws ValidationError unless start < end and bins >= 1.
  void validate() const;

  static BinSpec microcircuit_default() { return {10.0, 60.0, 2}; }
  static BinSpec simulator_default() { return {10.0, 200.0, 2}; }
};

inline constexpr std::size_t kDefaultSelectionSize = 50;

enum class SelectionEnd { top, bottom };

struct Selection {
  std::vector<Vertex> centres;   // in rank order
  std::vector<double> values;    // selection value of each centre
  std::vector<Neighbourhood> neighbourhoods;
};

// Selection value of the closed neighbourhood of every vertex.
std::vector<double> neighbourhood_values(const Digraph& g, const ParameterCode& code,
                                         unsigned threads = 1);

// All vertices ordered by value (descending for top, ascending for bottom),
// ties broken by ascending vertex id.
std::vector<Vertex> rank_vertices(std::span<const double> values, SelectionEnd end);

// The m vertices whose neighbourhoods score highest (or lowest) on `code`.
Selection select_neighbourhoods(const Digraph& g, const ParameterCode& code, std::size_t m,
                                SelectionEnd end, unsigned threads = 1);

std::vector<Neighbourhood> neighbourhoods_of(const Digraph& g, std::span<const Vertex> centres);

// Per bin, the vertices with at least one spike in that bin.
std::vector<VertexSet> active_states(std::span<const Spike> spikes, const BinSpec& bins);

// M x K matrix of feature values, one row per neighbourhood and one column
// per time bin.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  Label label = 0;
  std::string selection_code;
  std::string feature_code;

  double at(std::size_t m, std::size_t k) const { return values[m * cols + k]; }
  double& at(std::size_t m, std::size_t k) { return values[m * cols + k]; }

  // Column concatenation: all of column 0, then column 1, and so on.
  std::vector<double> flattened() const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

// Active subgraph of nb in the given active set, with the centre's local id
// when the centre itself is active.
struct ActiveSubgraph {
  Digraph graph;
  std::optional<Vertex> centre;
};
ActiveSubgraph active_subgraph(const Neighbourhood& nb, const VertexSet& active);

FeatureMatrix featurise(const Trial& trial, std::span<const Neighbourhood> neighbourhoods,
                        const BinSpec& bins, const ParameterCode& feature);

std::vector<FeatureMatrix> featurise_all(const BinaryDynamicsSet& dynamics,
                                         std::span<const Neighbourhood> neighbourhoods,
                                         const BinSpec& bins, const ParameterCode& feature,
                                         unsigned threads = 1);

// Union of the closed neighbourhoods of the n+1 highest-ranked vertices
// (order[0] is the highest), as an induced subgraph. Layers are nested.
InducedSubgraph build_filtration_layer(const Digraph& g, std::span<const Vertex> order,
                                       std::size_t n);

// ---- validation experiments ----

enum class ValidationMode {
  none,
  random_selection,
  centres_only,
  degree_matched_subgraphs,
  fake_neighbourhoods,
  shuffled_activity,
};

inline constexpr std::size_t kRandomSelectionIterations = 20;

// m distinct centres drawn uniformly from 0..n_vertices-1, in draw order.
std::vector<Vertex> random_centres(std::size_t n_vertices, std::size_t m, std::uint64_t seed);

// Binary M x K matrix: entry (m, k) is 1 when centre m fired in bin k.
FeatureMatrix centres_only_matrix(const Trial& trial, std::span<const Vertex> centres,
                                  const BinSpec& bins);

// For each centre with d neighbours, the subgraph induced by the centre and d
// vertices drawn uniformly from the rest of the graph.
std::vector<Neighbourhood> degree_matched_subgraphs(const Digraph& g,
                                                    std::span<const Vertex> centres,
                                                    std::uint64_t seed);

std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed);
std::vector<Vertex> inverse_permutation(std::span<const Vertex> sigma);

// Spikes of vertex i are moved to vertex sigma[i].
BinaryDynamicsSet shuffle_activity(const BinaryDynamicsSet& dynamics,
                                   std::span<const Vertex> sigma);

struct SummaryRequest {
  ParameterCode selection{"size"};
  ParameterCode feature{"size"};
  std::size_t m = kDefaultSelectionSize;
  SelectionEnd end = SelectionEnd::top;
  BinSpec bins = BinSpec::microcircuit_default();
  ValidationMode mode = ValidationMode::none;
  std::uint64_t seed = 0;
  std::size_t iteration = 0;  // random_selection repeat index
  // shuffled_activity: use this permutation instead of drawing one.
  std::optional<std::vector<Vertex>> permutation;
  unsigned threads = 1;
};

struct VectorSummaries {
  std::vector<Vertex> centres;
  std::vector<FeatureMatrix> matrices;
  std::vector<Vertex> permutation;  // shuffled_activity only
  std::vector<Vertex> inverse;      // shuffled_activity only
};

// Selection, optional validation transform, and featurisation of every trial.
VectorSummaries vector_summaries(const Digraph& g, const BinaryDynamicsSet& dynamics,
                                 const SummaryRequest& request);

}  // namespace nbdyn
