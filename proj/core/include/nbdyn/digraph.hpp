#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace nbdyn {

using Vertex = std::uint32_t;

struct Edge {
  Vertex src = 0;
  Vertex dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted list of distinct vertex ids.
class VertexSet {
 public:
  VertexSet() = default;

  // Throws ValidationError unless ids are strictly increasing.
  explicit VertexSet(std::vector<Vertex> ids);

  // Sorts and removes duplicates.
  static VertexSet from_unsorted(std::vector<Vertex> ids);

  std::span<const Vertex> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  bool contains(Vertex v) const;
  // Position of v in the set, if present.
  std::optional<std::size_t> index_of(Vertex v) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

// Immutable directed simple graph on vertices 0..n-1, stored as two CSR
// adjacency structures (out-neighbours and in-neighbours), each row sorted.
class Digraph {
 public:
  Digraph() = default;

  // Duplicate edges are merged. Throws ValidationError on a self-loop and
  // RangeError on an endpoint >= n_vertices.
  Digraph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const noexcept { return n_; }
  std::size_t n_edges() const noexcept { return out_targets_.size(); }

  std::span<const Vertex> out(Vertex v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const Vertex> in(Vertex v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(Vertex v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(Vertex v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const;

  // All edges sorted by (src, dst).
  std::vector<Edge> edges() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Vertex> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Vertex> in_sources_;
};

// A subgraph induced on `members`; local vertex i of `graph` is members[i].
struct InducedSubgraph {
  VertexSet members;
  Digraph graph;
};

// Closed neighbourhood of `centre`, or more generally any induced subgraph
// with a distinguished centre vertex (the validation experiments use
// centred subgraphs that are not neighbourhoods).
struct Neighbourhood {
  Vertex centre = 0;
  Vertex local_centre = 0;
  VertexSet members;
  Digraph graph;
};

struct DegreeInfo {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t total = 0;       // in + out; reciprocal neighbours count twice
  std::size_t reciprocal = 0;  // neighbours that are both in- and out-neighbours

  friend bool operator==(const DegreeInfo&, const DegreeInfo&) = default;
};

// Edge-list text: one "src dst" pair per line, separated by whitespace or a
// comma. Blank lines and '#' comments are skipped.
Digraph parse_edge_list(std::istream& in, std::optional<std::size_t> n_vertices = std::nullopt);
Digraph load_edge_list(const std::filesystem::path& path,
                       std::optional<std::size_t> n_vertices = std::nullopt);
void write_edge_list(std::ostream& out, const Digraph& g);
void save_edge_list(const std::filesystem::path& path, const Digraph& g);

Digraph reversed(const Digraph& g);

// Induced subgraph with vertices relabelled 0..|s|-1 in the order of s.
Digraph induced_subgraph(const Digraph& g, const VertexSet& s);

// Centre plus every in- or out-neighbour.
VertexSet closed_neighbourhood_members(const Digraph& g, Vertex v);
Neighbourhood closed_neighbourhood(const Digraph& g, Vertex v);

// Union of the closed neighbourhoods of `centres`.
VertexSet closed_neighbourhood_union(const Digraph& g, std::span<const Vertex> centres);

DegreeInfo degrees(const Digraph& g, Vertex v);

// Vertex set of a largest strongly connected component; ties go to the
// component containing the smallest vertex id. Empty graph gives {}.
VertexSet largest_scc(const Digraph& g);

// Component id per vertex (Tarjan). Ids are dense but otherwise arbitrary.
std::vector<std::size_t> strongly_connected_components(const Digraph& g);

// For each centre in ascending id order, one random permutation of the
// non-centre vertices is applied to that centre's row and column of the
// adjacency matrix. Degrees of every centre are unchanged.
Digraph fake_neighbourhood_rewire(const Digraph& g, const VertexSet& centres,
                                  std::uint64_t seed);

// Smallest prefix of `order` whose closed neighbourhoods cover at least
// fraction * n_vertices vertices. Returns n_vertices + 1 if never reached.
std::size_t greedy_cover_count(const Digraph& g, std::span<const Vertex> order, double fraction);

// Throws ValidationError unless `order` is a permutation of 0..n-1.
void require_permutation(std::span<const Vertex> order, std::size_t n);

}  // namespace nbdyn
