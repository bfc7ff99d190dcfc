#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "nbdyn/digraph.hpp"

namespace nbdyn {

inline constexpr std::size_t kDefaultFlagDimension = 6;

// Directed flag complex: the d-simplices are the directed (d+1)-cliques
// (v_0, ..., v_d) with an edge v_i -> v_j for every i < j. Simplices of each
// dimension are stored flat, in lexicographic order of their vertex tuples.
class DirectedFlagComplex {
 public:
  DirectedFlagComplex() = default;
  DirectedFlagComplex(std::size_t dimension_cap, std::vector<std::vector<Vertex>> flat);

  // Highest dimension that was enumerated.
  std::size_t dimension_cap() const noexcept { return cap_; }

  // Number of d-simplices; 0 for d above the cap.
  std::uint64_t count(std::size_t d) const;

  // Simplex counts s_0, s_1, ... up to the top non-empty dimension.
  std::vector<std::uint64_t> counts() const;

  // True when the cap may have cut off higher simplices.
  bool truncated() const { return count(cap_) > 0; }

  std::span<const Vertex> simplex(std::size_t d, std::size_t i) const {
    return {flat_[d].data() + i * (d + 1), d + 1};
  }
  std::span<const Vertex> flat(std::size_t d) const { return flat_[d]; }

  // Position of `tuple` among the simplices of dimension tuple.size()-1.
  std::optional<std::size_t> index_of(std::span<const Vertex> tuple) const;

 private:
  std::size_t cap_ = 0;
  std::vector<std::vector<Vertex>> flat_;
};

// Enumerates every directed clique with at most max_dim + 1 vertices by
// extending each clique over the common out-neighbours of its vertices.
// Roots are processed in parallel when threads != 1; output is identical.
DirectedFlagComplex build_flag_complex(const Digraph& g,
                                       std::size_t max_dim = kDefaultFlagDimension,
                                       unsigned threads = 1);

// Same enumeration, counting only. Trailing zero dimensions are dropped.
std::vector<std::uint64_t> count_simplices(const Digraph& g,
                                           std::size_t max_dim = kDefaultFlagDimension);

std::int64_t euler_characteristic(std::span<const std::uint64_t> counts);
std::int64_t euler_characteristic(const DirectedFlagComplex& x);

// result[k] = number of directed (k+1)-cliques containing v, for k = 0..max_k.
// result[0] = 1 and result[1] = in_degree + out_degree.
std::vector<std::uint64_t> simplex_counts_containing(const Digraph& g, Vertex v, std::size_t max_k);

// Number of directed (k+1)-cliques of g that contain v (k >= 1).
std::uint64_t simplex_count_containing(const Digraph& g, Vertex v, std::size_t k);

// One line "v0 v1 ... vd" per simplex, dimension by dimension.
void write_simplices(std::ostream& out, const DirectedFlagComplex& x);

}  // namespace nbdyn
