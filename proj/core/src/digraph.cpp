#include "nbdyn/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "nbdyn/errors.hpp"

namespace nbdyn {

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
  for (std::size_t i = 1; i < ids_.size(); ++i) {
    if (ids_[i - 1] >= ids_[i]) throw ValidationError("vertex set is not strictly increasing");
  }
}

VertexSet VertexSet::from_unsorted(std::vector<Vertex> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

std::optional<std::size_t> VertexSet::index_of(Vertex v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& sorted_edges, bool by_src,
               std::vector<std::size_t>& offsets, std::vector<Vertex>& targets) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : sorted_edges) ++offsets[(by_src ? e.src : e.dst) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(sorted_edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : sorted_edges) {
    const Vertex row = by_src ? e.src : e.dst;
    targets[cursor[row]++] = by_src ? e.dst : e.src;
  }
}

}  // namespace

Digraph::Digraph(std::size_t n_vertices, std::vector<Edge> edges) : n_(n_vertices) {
  if (n_vertices > std::numeric_limits<Vertex>::max()) {
    throw RangeError("vertex count exceeds 32-bit id space");
  }
  for (const Edge& e : edges) {
    if (e.src >= n_ || e.dst >= n_) {
      throw RangeError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                       ") outside vertex range " + std::to_string(n_));
    }
    if (e.src == e.dst) throw ValidationError("self-loop at vertex " + std::to_string(e.src));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  build_csr(n_, edges, true, out_offsets_, out_targets_);
  // Sorting by (src, dst) and scattering by dst keeps each in-row sorted.
  build_csr(n_, edges, false, in_offsets_, in_sources_);
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  auto row = out(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> result;
  result.reserve(n_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : out(u)) result.push_back({u, v});
  }
  return result;
}

Digraph parse_edge_list(std::istream& in, std::optional<std::size_t> n_vertices) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  Vertex max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::uint64_t ids[2];
    int found = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      if (found == 2) throw ParseError("expected exactly two vertex ids", line_no);
      auto [next, ec] = std::from_chars(p, end, ids[found]);
      if (ec != std::errc() || (next < end && *next != ' ')) {
        throw ParseError("malformed vertex id", line_no);
      }
      ++found;
      p = next;
    }
    if (found == 0) continue;
    if (found != 2) throw ParseError("expected exactly two vertex ids", line_no);
    if (ids[0] > std::numeric_limits<Vertex>::max() || ids[1] > std::numeric_limits<Vertex>::max()) {
      throw RangeError("vertex id exceeds 32-bit id space (line " + std::to_string(line_no) + ")");
    }
    const Edge e{static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1])};
    if (e.src == e.dst) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.src) + " (line " +
                            std::to_string(line_no) + ")");
    }
    if (n_vertices && (e.src >= *n_vertices || e.dst >= *n_vertices)) {
      throw RangeError("vertex id >= " + std::to_string(*n_vertices) + " (line " +
                       std::to_string(line_no) + ")");
    }
    max_id = std::max({max_id, e.src, e.dst});
    any = true;
    edges.push_back(e);
  }
  const std::size_t n = n_vertices ? *n_vertices : (any ? std::size_t{max_id} + 1 : 0);
  return Digraph(n, std::move(edges));
}

Digraph load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n_vertices) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list " + path.string());
  return parse_edge_list(in, n_vertices);
}

void write_edge_list(std::ostream& out, const Digraph& g) {
  for (Vertex u = 0; u < g.n_vertices(); ++u) {
    for (Vertex v : g.out(u)) out << u << ' ' << v << '\n';
  }
}

void save_edge_list(const std::filesystem::path& path, const Digraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list " + path.string());
  write_edge_list(out, g);
}

Digraph reversed(const Digraph& g) {
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) std::swap(e.src, e.dst);
  return Digraph(g.n_vertices(), std::move(edges));
}

Digraph induced_subgraph(const Digraph& g, const VertexSet& s) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.n_vertices()) throw RangeError("subgraph member outside vertex range");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    // Both lists are sorted; merge out-row of s[i] against s.
    auto row = g.out(s[i]);
    auto a = row.begin();
    std::size_t j = 0;
    while (a != row.end() && j < s.size()) {
      if (*a < s[j]) {
        ++a;
      } else if (s[j] < *a) {
        ++j;
      } else {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
        ++a;
        ++j;
      }
    }
  }
  return Digraph(s.size(), std::move(edges));
}

VertexSet closed_neighbourhood_members(const Digraph& g, Vertex v) {
  if (v >= g.n_vertices()) throw RangeError("vertex " + std::to_string(v) + " out of range");
  std::vector<Vertex> ids;
  auto out = g.out(v);
  auto in = g.in(v);
  ids.reserve(out.size() + in.size() + 1);
  std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(ids));
  ids.insert(std::upper_bound(ids.begin(), ids.end(), v), v);
  return VertexSet(std::move(ids));
}

Neighbourhood closed_neighbourhood(const Digraph& g, Vertex v) {
  Neighbourhood nb;
  nb.centre = v;
  nb.members = closed_neighbourhood_members(g, v);
  nb.local_centre = static_cast<Vertex>(*nb.members.index_of(v));
  nb.graph = induced_subgraph(g, nb.members);
  return nb;
}

VertexSet closed_neighbourhood_union(const Digraph& g, std::span<const Vertex> centres) {
  std::vector<char> mark(g.n_vertices(), 0);
  for (Vertex c : centres) {
    if (c >= g.n_vertices()) throw RangeError("centre out of range");
    mark[c] = 1;
    for (Vertex u : g.out(c)) mark[u] = 1;
    for (Vertex u : g.in(c)) mark[u] = 1;
  }
  std::vector<Vertex> ids;
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    if (mark[v]) ids.push_back(v);
  }
  return VertexSet(std::move(ids));
}

DegreeInfo degrees(const Digraph& g, Vertex v) {
  if (v >= g.n_vertices()) throw RangeError("vertex " + std::to_string(v) + " out of range");
  DegreeInfo d;
  d.in = g.in_degree(v);
  d.out = g.out_degree(v);
  d.total = d.in + d.out;
  auto out = g.out(v);
  auto in = g.in(v);
  auto a = out.begin();
  auto b = in.begin();
  while (a != out.end() && b != in.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++d.reciprocal;
      ++a;
      ++b;
    }
  }
  return d;
}

std::vector<std::size_t> strongly_connected_components(const Digraph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.n_vertices();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  struct Frame {
    Vertex v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;
  std::size_t counter = 0;
  std::size_t n_comp = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      auto row = g.out(f.v);
      if (f.next_edge < row.size()) {
        const Vertex w = row[f.next_edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = n_comp;
        } while (w != v);
        ++n_comp;
      }
    }
  }
  return comp;
}

VertexSet largest_scc(const Digraph& g) {
  const std::size_t n = g.n_vertices();
  if (n == 0) return {};
  const auto comp = strongly_connected_components(g);
  const std::size_t n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> size(n_comp, 0);
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> min_vertex(n_comp, none);
  for (Vertex v = 0; v < n; ++v) {
    ++size[comp[v]];
    min_vertex[comp[v]] = std::min<std::size_t>(min_vertex[comp[v]], v);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < n_comp; ++c) {
    if (size[c] > size[best] || (size[c] == size[best] && min_vertex[c] < min_vertex[best])) {
      best = c;
    }
  }
  std::vector<Vertex> ids;
  ids.reserve(size[best]);
  for (Vertex v = 0; v < n; ++v) {
    if (comp[v] == best) ids.push_back(v);
  }
  return VertexSet(std::move(ids));
}

Digraph fake_neighbourhood_rewire(const Digraph& g, const VertexSet& centres, std::uint64_t seed) {
  const std::size_t n = g.n_vertices();
  for (Vertex c : centres) {
    if (c >= n) throw RangeError("centre out of range");
  }
  if (centres.empty()) return g;

  std::vector<char> is_centre(n, 0);
  for (Vertex c : centres) is_centre[c] = 1;
  std::vector<Vertex> free_vertices;
  free_vertices.reserve(n - centres.size());
  for (Vertex v = 0; v < n; ++v) {
    if (!is_centre[v]) free_vertices.push_back(v);
  }
  // position of each free vertex in free_vertices
  std::vector<std::size_t> slot(n, 0);
  for (std::size_t i = 0; i < free_vertices.size(); ++i) slot[free_vertices[i]] = i;

  std::vector<Edge> edges = g.edges();
  // An edge between a centre and a free vertex is owned by that centre alone;
  // edges between two centres or two free vertices are never touched.
  std::vector<std::vector<std::size_t>> owned(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (is_centre[e.src] && !is_centre[e.dst]) owned[e.src].push_back(i);
    if (is_centre[e.dst] && !is_centre[e.src]) owned[e.dst].push_back(i);
  }

  std::mt19937_64 rng(seed);
  std::vector<Vertex> image(free_vertices.size());
  for (Vertex c : centres) {
    image = free_vertices;
    std::shuffle(image.begin(), image.end(), rng);
    for (std::size_t i : owned[c]) {
      Edge& e = edges[i];
      if (e.src == c) {
        e.dst = image[slot[e.dst]];
      } else {
        e.src = image[slot[e.src]];
      }
    }
  }
  return Digraph(n, std::move(edges));
}

void require_permutation(std::span<const Vertex> order, std::size_t n) {
  if (order.size() != n) throw ValidationError("ranking is not a permutation of the vertices");
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v >= n || seen[v]) throw ValidationError("ranking is not a permutation of the vertices");
    seen[v] = 1;
  }
}

std::size_t greedy_cover_count(const Digraph& g, std::span<const Vertex> order, double fraction) {
  const std::size_t n = g.n_vertices();
  require_permutation(order, n);
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("cover fraction must lie in (0, 1]");
  if (n == 0) return 0;
  const double target = fraction * static_cast<double>(n);
  std::vector<char> covered(n, 0);
  std::size_t count = 0;
  auto cover = [&](Vertex u) {
    if (!covered[u]) {
      covered[u] = 1;
      ++count;
    }
  };
  for (std::size_t p = 0; p < n; ++p) {
    const Vertex c = order[p];
    cover(c);
    for (Vertex u : g.out(c)) cover(u);
    for (Vertex u : g.in(c)) cover(u);
    if (static_cast<double>(count) >= target) return p + 1;
  }
  return n + 1;
}

}  // namespace nbdyn
