#include "nbdyn/flag_complex.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "nbdyn/errors.hpp"
#include "nbdyn/parallel.hpp"

namespace nbdyn {

DirectedFlagComplex::DirectedFlagComplex(std::size_t dimension_cap,
                                         std::vector<std::vector<Vertex>> flat)
    : cap_(dimension_cap), flat_(std::move(flat)) {
  flat_.resize(cap_ + 1);
}

std::uint64_t DirectedFlagComplex::count(std::size_t d) const {
  if (d >= flat_.size()) return 0;
  return flat_[d].size() / (d + 1);
}

std::vector<std::uint64_t> DirectedFlagComplex::counts() const {
  std::vector<std::uint64_t> result;
  for (std::size_t d = 0; d < flat_.size(); ++d) result.push_back(count(d));
  while (!result.empty() && result.back() == 0) result.pop_back();
  return result;
}

std::optional<std::size_t> DirectedFlagComplex::index_of(std::span<const Vertex> tuple) const {
  if (tuple.empty()) return std::nullopt;
  const std::size_t d = tuple.size() - 1;
  if (d >= flat_.size()) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = count(d);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto s = simplex(d, mid);
    if (std::lexicographical_compare(s.begin(), s.end(), tuple.begin(), tuple.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count(d) && std::ranges::equal(simplex(d, lo), tuple)) return lo;
  return std::nullopt;
}

namespace {

void intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b,
                      std::vector<Vertex>& out) {
  out.clear();
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

// Depth-first clique extension from a single root. `emit(depth, prefix)` is
// called for every clique found; prefix.size() == depth + 1.
template <typename Emit>
class CliqueWalker {
 public:
  CliqueWalker(const Digraph& g, std::size_t max_dim, Emit emit)
      : g_(g), max_dim_(max_dim), emit_(std::move(emit)), scratch_(max_dim + 1) {}

  void walk(Vertex root) {
    prefix_.assign(1, root);
    emit_(0, prefix_);
    if (max_dim_ == 0) return;
    auto row = g_.out(root);
    scratch_[0].assign(row.begin(), row.end());
    extend(1);
  }

 private:
  void extend(std::size_t depth) {
    // Candidates for position `depth` live in scratch_[depth - 1].
    const std::vector<Vertex>& candidates = scratch_[depth - 1];
    for (Vertex w : candidates) {
      prefix_.push_back(w);
      emit_(depth, prefix_);
      if (depth < max_dim_) {
        intersect_sorted(candidates, g_.out(w), scratch_[depth]);
        if (!scratch_[depth].empty()) extend(depth + 1);
      }
      prefix_.pop_back();
    }
  }

  const Digraph& g_;
  std::size_t max_dim_;
  Emit emit_;
  std::vector<Vertex> prefix_;
  std::vector<std::vector<Vertex>> scratch_;
};

template <typename Emit>
CliqueWalker<Emit> make_walker(const Digraph& g, std::size_t max_dim, Emit emit) {
  return CliqueWalker<Emit>(g, max_dim, std::move(emit));
}

}  // namespace

DirectedFlagComplex build_flag_complex(const Digraph& g, std::size_t max_dim, unsigned threads) {
  const std::size_t n = g.n_vertices();
  if (threads == 1 || n < 64) {
    std::vector<std::vector<Vertex>> flat(max_dim + 1);
    auto walker = make_walker(g, max_dim, [&](std::size_t d, const std::vector<Vertex>& s) {
      flat[d].insert(flat[d].end(), s.begin(), s.end());
    });
    for (Vertex v = 0; v < n; ++v) walker.walk(v);
    return DirectedFlagComplex(max_dim, std::move(flat));
  }

  std::vector<std::vector<std::vector<Vertex>>> per_root(n);
  parallel_for(n, threads, [&](std::size_t v) {
    auto& flat = per_root[v];
    flat.resize(max_dim + 1);
    auto walker = make_walker(g, max_dim, [&](std::size_t d, const std::vector<Vertex>& s) {
      flat[d].insert(flat[d].end(), s.begin(), s.end());
    });
    walker.walk(static_cast<Vertex>(v));
  });
  std::vector<std::vector<Vertex>> flat(max_dim + 1);
  for (std::size_t d = 0; d <= max_dim; ++d) {
    std::size_t total = 0;
    for (const auto& r : per_root) total += r[d].size();
    flat[d].reserve(total);
    for (auto& r : per_root) {
      flat[d].insert(flat[d].end(), r[d].begin(), r[d].end());
      std::vector<Vertex>().swap(r[d]);
    }
  }
  return DirectedFlagComplex(max_dim, std::move(flat));
}

std::vector<std::uint64_t> count_simplices(const Digraph& g, std::size_t max_dim) {
  std::vector<std::uint64_t> counts(max_dim + 1, 0);
  auto walker = make_walker(g, max_dim,
                            [&](std::size_t d, const std::vector<Vertex>&) { ++counts[d]; });
  for (Vertex v = 0; v < g.n_vertices(); ++v) walker.walk(v);
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

std::int64_t euler_characteristic(std::span<const std::uint64_t> counts) {
  std::int64_t chi = 0;
  for (std::size_t d = 0; d < counts.size(); ++d) {
    const auto c = static_cast<std::int64_t>(counts[d]);
    chi += (d % 2 == 0) ? c : -c;
  }
  return chi;
}

std::int64_t euler_characteristic(const DirectedFlagComplex& x) {
  const auto c = x.counts();
  return euler_characteristic(c);
}

std::vector<std::uint64_t> simplex_counts_containing(const Digraph& g, Vertex v, std::size_t max_k) {
  if (v >= g.n_vertices()) throw RangeError("vertex " + std::to_string(v) + " out of range");
  std::vector<std::uint64_t> result(max_k + 1, 0);
  result[0] = 1;
  if (max_k == 0) return result;

  // Every clique through v lives inside the closed neighbourhood of v.
  const VertexSet members = closed_neighbourhood_members(g, v);
  std::vector<std::vector<Vertex>> scratch(max_k + 1);

  auto contains = [](const std::vector<Vertex>& s, Vertex x) {
    return std::binary_search(s.begin(), s.end(), x);
  };

  // depth = number of vertices already in the clique minus one.
  auto extend = [&](auto&& self, std::size_t depth, bool has_v) -> void {
    const std::vector<Vertex>& candidates = scratch[depth];
    for (Vertex w : candidates) {
      const bool has = has_v || w == v;
      if (has) ++result[depth + 1];
      if (depth + 1 < max_k) {
        auto& next = scratch[depth + 1];
        intersect_sorted(candidates, g.out(w), next);
        if (!next.empty() && (has || contains(next, v))) self(self, depth + 1, has);
      }
    }
  };

  for (Vertex root : members) {
    const bool has = root == v;
    intersect_sorted(members.ids(), g.out(root), scratch[0]);
    if (scratch[0].empty()) continue;
    if (!has && !contains(scratch[0], v)) continue;
    extend(extend, 0, has);
  }
  return result;
}

std::uint64_t simplex_count_containing(const Digraph& g, Vertex v, std::size_t k) {
  if (k == 0) throw DomainError("clique order k must be at least 1");
  return simplex_counts_containing(g, v, k)[k];
}

void write_simplices(std::ostream& out, const DirectedFlagComplex& x) {
  for (std::size_t d = 0; d <= x.dimension_cap(); ++d) {
    for (std::size_t i = 0; i < x.count(d); ++i) {
      auto s = x.simplex(d, i);
      for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
      out << '\n';
    }
  }
}

}  // namespace nbdyn
