#include "nbdyn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "nbdyn/errors.hpp"
#include "nbdyn/parallel.hpp"
#include "nbdyn/rng.hpp"

namespace nbdyn {

std::vector<Label> BinaryDynamicsSet::label_set() const {
  std::vector<Label> labels;
  labels.reserve(trials.size());
  for (const Trial& t : trials) labels.push_back(t.label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

void BinaryDynamicsSet::validate(std::size_t n_vertices) const {
  for (const Trial& t : trials) {
    for (const Spike& s : t.spikes) {
      if (s.vertex >= n_vertices) {
        throw RangeError("trial " + std::to_string(t.id) + ": spike on vertex " +
                         std::to_string(s.vertex) + " but the graph has " +
                         std::to_string(n_vertices) + " vertices");
      }
      if (!std::isfinite(s.time_ms) || s.time_ms < 0.0) {
        throw ValidationError("trial " + std::to_string(t.id) + ": invalid spike time " +
                              std::to_string(s.time_ms));
      }
    }
  }
}

std::optional<std::size_t> BinSpec::bin_of(double t) const {
  if (!(t >= start && t <= end)) return std::nullopt;
  const double w = width();
  const std::size_t last = bins - 1;
  auto k = static_cast<std::size_t>(std::floor((t - start) / w));
  // Keep the result consistent with the boundaries start + k*w.
  if (k > last) k = last;
  while (k > 0 && t < start + static_cast<double>(k) * w) --k;
  while (k < last && t >= start + static_cast<double>(k + 1) * w) ++k;
  return k;
}

void BinSpec::validate() const {
  if (bins == 0) throw ValidationError("bin count must be at least 1");
  if (!(start < end) || !std::isfinite(start) || !std::isfinite(end)) {
    throw ValidationError("bin interval needs start < end");
  }
}

std::vector<double> neighbourhood_values(const Digraph& g, const ParameterCode& code,
                                         unsigned threads) {
  std::vector<double> values(g.n_vertices(), 0.0);
  parallel_for(g.n_vertices(), threads, [&](std::size_t v) {
    values[v] = evaluate(code, closed_neighbourhood(g, static_cast<Vertex>(v)));
  });
  return values;
}

std::vector<Vertex> rank_vertices(std::span<const double> values, SelectionEnd end) {
  std::vector<Vertex> order(values.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  if (end == SelectionEnd::top) {
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return values[a] > values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return values[a] < values[b]; });
  }
  return order;
}

std::vector<Neighbourhood> neighbourhoods_of(const Digraph& g, std::span<const Vertex> centres) {
  std::vector<Neighbourhood> out;
  out.reserve(centres.size());
  for (Vertex c : centres) {
    if (c >= g.n_vertices()) throw RangeError("centre " + std::to_string(c) + " outside graph");
    out.push_back(closed_neighbourhood(g, c));
  }
  return out;
}

Selection select_neighbourhoods(const Digraph& g, const ParameterCode& code, std::size_t m,
                                SelectionEnd end, unsigned threads) {
  if (m > g.n_vertices()) {
    throw RangeError("cannot select " + std::to_string(m) + " neighbourhoods from " +
                     std::to_string(g.n_vertices()) + " vertices");
  }
  parse_parameter_code(code.to_string());  // registry check before any work
  const auto values = neighbourhood_values(g, code, threads);
  const auto order = rank_vertices(values, end);

  Selection s;
  s.centres.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  for (Vertex c : s.centres) s.values.push_back(values[c]);
  s.neighbourhoods = neighbourhoods_of(g, s.centres);
  return s;
}

std::vector<VertexSet> active_states(std::span<const Spike> spikes, const BinSpec& bins) {
  bins.validate();
  std::vector<std::vector<Vertex>> per_bin(bins.bins);
  for (const Spike& s : spikes) {
    if (auto k = bins.bin_of(s.time_ms)) per_bin[*k].push_back(s.vertex);
  }
  std::vector<VertexSet> out;
  out.reserve(bins.bins);
  for (auto& ids : per_bin) out.push_back(VertexSet::from_unsorted(std::move(ids)));
  return out;
}

std::vector<double> FeatureMatrix::flattened() const {
  std::vector<double> flat;
  flat.reserve(values.size());
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t m = 0; m < rows; ++m) flat.push_back(at(m, k));
  }
  return flat;
}

ActiveSubgraph active_subgraph(const Neighbourhood& nb, const VertexSet& active) {
  std::vector<Vertex> local;
  std::size_t i = 0;
  for (Vertex v : active) {
    while (i < nb.members.size() && nb.members[i] < v) ++i;
    if (i == nb.members.size()) break;
    if (nb.members[i] == v) local.push_back(static_cast<Vertex>(i));
  }
  const VertexSet local_set(std::move(local));
  ActiveSubgraph out{induced_subgraph(nb.graph, local_set), std::nullopt};
  if (auto pos = local_set.index_of(nb.local_centre)) out.centre = static_cast<Vertex>(*pos);
  return out;
}

namespace {

std::size_t active_member_count(const Neighbourhood& nb, const VertexSet& active) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (Vertex v : active) {
    while (i < nb.members.size() && nb.members[i] < v) ++i;
    if (i == nb.members.size()) break;
    if (nb.members[i] == v) ++count;
  }
  return count;
}

}  // namespace

FeatureMatrix featurise(const Trial& trial, std::span<const Neighbourhood> neighbourhoods,
                        const BinSpec& bins, const ParameterCode& feature) {
  if (neighbourhoods.empty()) throw ContractError("featurise needs at least one neighbourhood");
  const auto states = active_states(trial.spikes, bins);

  FeatureMatrix f;
  f.rows = neighbourhoods.size();
  f.cols = bins.bins;
  f.values.assign(f.rows * f.cols, 0.0);
  f.label = trial.label;
  f.feature_code = feature.to_string();
  const bool size_only = feature.code == "size";
  for (std::size_t m = 0; m < f.rows; ++m) {
    for (std::size_t k = 0; k < f.cols; ++k) {
      if (size_only) {
        f.at(m, k) = static_cast<double>(active_member_count(neighbourhoods[m], states[k]));
        continue;
      }
      const ActiveSubgraph h = active_subgraph(neighbourhoods[m], states[k]);
      f.at(m, k) = evaluate(feature, h.graph, h.centre, EvalContext::as_feature);
    }
  }
  return f;
}

std::vector<FeatureMatrix> featurise_all(const BinaryDynamicsSet& dynamics,
                                         std::span<const Neighbourhood> neighbourhoods,
                                         const BinSpec& bins, const ParameterCode& feature,
                                         unsigned threads) {
  bins.validate();
  std::vector<FeatureMatrix> out(dynamics.trials.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = featurise(dynamics.trials[i], neighbourhoods, bins, feature);
  });
  return out;
}

InducedSubgraph build_filtration_layer(const Digraph& g, std::span<const Vertex> order,
                                       std::size_t n) {
  require_permutation(order, g.n_vertices());
  if (n >= g.n_vertices()) {
    throw RangeError("filtration layer " + std::to_string(n) + " needs n < " +
                     std::to_string(g.n_vertices()));
  }
  VertexSet members = closed_neighbourhood_union(g, order.first(n + 1));
  Digraph sub = induced_subgraph(g, members);
  return {std::move(members), std::move(sub)};
}

std::vector<Vertex> random_centres(std::size_t n_vertices, std::size_t m, std::uint64_t seed) {
  if (m > n_vertices) {
    throw RangeError("cannot draw " + std::to_string(m) + " centres from " +
                     std::to_string(n_vertices) + " vertices");
  }
  std::vector<Vertex> pool(n_vertices);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n_vertices - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(m);
  return pool;
}

FeatureMatrix centres_only_matrix(const Trial& trial, std::span<const Vertex> centres,
                                  const BinSpec& bins) {
  const auto states = active_states(trial.spikes, bins);
  FeatureMatrix f;
  f.rows = centres.size();
  f.cols = bins.bins;
  f.values.assign(f.rows * f.cols, 0.0);
  f.label = trial.label;
  for (std::size_t m = 0; m < f.rows; ++m) {
    for (std::size_t k = 0; k < f.cols; ++k) f.at(m, k) = states[k].contains(centres[m]) ? 1.0 : 0.0;
  }
  return f;
}

std::vector<Neighbourhood> degree_matched_subgraphs(const Digraph& g,
                                                    std::span<const Vertex> centres,
                                                    std::uint64_t seed) {
  const std::size_t n = g.n_vertices();
  std::mt19937_64 rng(seed);
  std::vector<Neighbourhood> out;
  out.reserve(centres.size());
  std::vector<Vertex> pool;
  for (Vertex c : centres) {
    if (c >= n) throw RangeError("centre " + std::to_string(c) + " outside graph");
    const std::size_t d = closed_neighbourhood_members(g, c).size() - 1;
    pool.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (v != c) pool.push_back(v);
    }
    for (std::size_t i = 0; i < d; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<Vertex> ids(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(d));
    ids.push_back(c);
    Neighbourhood nb;
    nb.centre = c;
    nb.members = VertexSet::from_unsorted(std::move(ids));
    nb.local_centre = static_cast<Vertex>(*nb.members.index_of(c));
    nb.graph = induced_subgraph(g, nb.members);
    out.push_back(std::move(nb));
  }
  return out;
}

std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<Vertex> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(sigma[i - 1], sigma[pick(rng)]);
  }
  return sigma;
}

std::vector<Vertex> inverse_permutation(std::span<const Vertex> sigma) {
  require_permutation(sigma, sigma.size());
  std::vector<Vertex> inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = static_cast<Vertex>(i);
  return inv;
}

BinaryDynamicsSet shuffle_activity(const BinaryDynamicsSet& dynamics,
                                   std::span<const Vertex> sigma) {
  require_permutation(sigma, sigma.size());
  BinaryDynamicsSet out = dynamics;
  for (Trial& t : out.trials) {
    for (Spike& s : t.spikes) {
      if (s.vertex >= sigma.size()) throw RangeError("spike vertex outside permutation");
      s.vertex = sigma[s.vertex];
    }
  }
  return out;
}

VectorSummaries vector_summaries(const Digraph& g, const BinaryDynamicsSet& dynamics,
                                 const SummaryRequest& request) {
  request.bins.validate();
  dynamics.validate(g.n_vertices());
  if (dynamics.trials.empty()) throw ValidationError("no trials to featurise");

  VectorSummaries out;
  std::vector<Neighbourhood> neighbourhoods;
  const BinaryDynamicsSet* source = &dynamics;
  BinaryDynamicsSet shuffled;

  if (request.mode == ValidationMode::random_selection) {
    out.centres = random_centres(g.n_vertices(), request.m,
                                 derive_seed(request.seed, request.iteration));
    neighbourhoods = neighbourhoods_of(g, out.centres);
  } else {
    Selection s = select_neighbourhoods(g, request.selection, request.m, request.end,
                                        request.threads);
    out.centres = std::move(s.centres);
    neighbourhoods = std::move(s.neighbourhoods);
  }

  switch (request.mode) {
    case ValidationMode::none:
    case ValidationMode::random_selection:
      break;
    case ValidationMode::centres_only: {
      out.matrices.resize(dynamics.trials.size());
      parallel_for(out.matrices.size(), request.threads, [&](std::size_t i) {
        out.matrices[i] = centres_only_matrix(dynamics.trials[i], out.centres, request.bins);
        out.matrices[i].selection_code = request.selection.to_string();
        out.matrices[i].feature_code = "centre";
      });
      return out;
    }
    case ValidationMode::degree_matched_subgraphs:
      neighbourhoods = degree_matched_subgraphs(g, out.centres, request.seed);
      break;
    case ValidationMode::fake_neighbourhoods: {
      const Digraph fake =
          fake_neighbourhood_rewire(g, VertexSet::from_unsorted(out.centres), request.seed);
      neighbourhoods = neighbourhoods_of(fake, out.centres);
      break;
    }
    case ValidationMode::shuffled_activity:
      out.permutation = request.permutation ? *request.permutation
                                            : random_permutation(g.n_vertices(), request.seed);
      if (out.permutation.size() != g.n_vertices()) {
        throw ValidationError("permutation length does not match the graph");
      }
      out.inverse = inverse_permutation(out.permutation);
      shuffled = shuffle_activity(dynamics, out.permutation);
      source = &shuffled;
      break;
  }

  out.matrices = featurise_all(*source, neighbourhoods, request.bins, request.feature,
                               request.threads);
  const std::string selection = request.mode == ValidationMode::random_selection
                                    ? std::string("random")
                                    : request.selection.to_string();
  for (FeatureMatrix& f : out.matrices) f.selection_code = selection;
  return out;
}

}  // namespace nbdyn
