#include "nbdyn/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nbdyn/errors.hpp"
#include "nbdyn/flag_complex.hpp"
#include "nbdyn/homology.hpp"
#include "nbdyn/spectral.hpp"

namespace nbdyn {
namespace {

using enum GapVariant;

constexpr std::array kRegistry = {
    ParameterInfo{"fcc", "Clustering coefficient (Fagiolo)", true, none},
    ParameterInfo{"tcc", "Transitive clustering coefficient", true, none},
    ParameterInfo{"ec", "Euler characteristic", false, none},
    ParameterInfo{"nbc", "Normalised Betti coefficient", false, none},
    ParameterInfo{"size", "Number of vertices in the graph", false, none},
    ParameterInfo{"asg", "Adjacency spectral gap", false, high},
    ParameterInfo{"asr", "Adjacency spectral radius", false, none},
    ParameterInfo{"blsg", "Bauer Laplacian spectral gap", false, high},
    ParameterInfo{"blsr", "Bauer Laplacian spectral radius", false, none},
    ParameterInfo{"clsg", "Chung Laplacian spectral gap", false, low},
    ParameterInfo{"clsr", "Chung Laplacian spectral radius", false, none},
    ParameterInfo{"tpsg", "Transition probability spectral gap", false, high},
    ParameterInfo{"tpsr", "Transition probability spectral radius", false, none},
    ParameterInfo{"rtpsg", "Reversed transition probability spectral gap", false, high},
    ParameterInfo{"rtpsr", "Reversed transition probability spectral radius", false, none},
    ParameterInfo{"rblsg", "Reversed Bauer Laplacian spectral gap", false, high},
    ParameterInfo{"rblsr", "Reversed Bauer Laplacian spectral radius", false, none},
    ParameterInfo{"deg", "Total degree of the centre (in + out)", true, none},
    ParameterInfo{"ind", "In-degree of the centre", true, none},
    ParameterInfo{"oud", "Out-degree of the centre", true, none},
    ParameterInfo{"rc", "Sum of reciprocal degrees over the graph", false, none},
    ParameterInfo{"rc_centre", "Reciprocal degree of the centre", true, none},
    ParameterInfo{"dc2", "2nd density coefficient at the centre", true, none},
    ParameterInfo{"dc3", "3rd density coefficient at the centre", true, none},
    ParameterInfo{"dc4", "4th density coefficient at the centre", true, none},
    ParameterInfo{"dc5", "5th density coefficient at the centre", true, none},
};

constexpr std::array<std::string_view, 13> kPrimary = {
    "fcc", "tcc", "ec", "nbc", "size", "asg", "asr", "blsg", "blsr", "clsg", "clsr", "tpsg", "tpsr",
};

const ParameterInfo* find_info(std::string_view code) {
  for (const auto& info : kRegistry) {
    if (info.code == code) return &info;
  }
  return nullptr;
}

const ParameterInfo& require_info(std::string_view code) {
  const ParameterInfo* info = find_info(code);
  if (!info) throw RegistryError("unknown parameter code '" + std::string(code) + "'");
  return *info;
}

double finite_or_zero(double x) { return std::isfinite(x) ? x : 0.0; }

double pick(const SpectralSummary& s, GapVariant variant) {
  return variant == low ? s.gap_low : s.gap_high;
}

}  // namespace

std::string ParameterCode::to_string() const {
  switch (variant) {
    case high:
      return code + "_high";
    case low:
      return code + "_low";
    case none:
      break;
  }
  return code;
}

std::span<const ParameterInfo> parameter_registry() { return kRegistry; }

std::span<const std::string_view> primary_parameter_codes() { return kPrimary; }

ParameterCode parse_parameter_code(std::string_view text) {
  if (const ParameterInfo* info = find_info(text)) {
    return {std::string(info->code), info->default_variant};
  }
  for (auto [suffix, variant] : {std::pair{std::string_view("_high"), high},
                                 std::pair{std::string_view("_low"), low}}) {
    if (text.size() > suffix.size() && text.ends_with(suffix)) {
      const auto base = text.substr(0, text.size() - suffix.size());
      const ParameterInfo* info = find_info(base);
      if (info && info->default_variant != none) return {std::string(base), variant};
    }
  }
  throw RegistryError("unknown parameter code '" + std::string(text) + "'");
}

std::vector<ParameterCode> parse_parameter_codes(std::string_view comma_separated) {
  std::vector<ParameterCode> codes;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const auto comma = comma_separated.find(',', start);
    const auto end = comma == std::string_view::npos ? comma_separated.size() : comma;
    auto item = comma_separated.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) codes.push_back(parse_parameter_code(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (codes.empty()) throw RegistryError("empty parameter code list");
  return codes;
}

double fagiolo_cc(const Digraph& g, Vertex centre) {
  const DegreeInfo d = degrees(g, centre);
  const double denom = static_cast<double>(d.total) * (static_cast<double>(d.total) - 1.0) -
                       2.0 * static_cast<double>(d.reciprocal);
  if (denom <= 0.0) return 0.0;

  // t = 1/2 sum_{j,k} s_ij s_ik s_jk with s = A + A^T, restricted to the
  // neighbours of the centre (other terms vanish).
  const VertexSet members = closed_neighbourhood_members(g, centre);
  std::vector<int> weight(members.size(), 0);  // s_{centre, member}
  for (std::size_t j = 0; j < members.size(); ++j) {
    const Vertex u = members[j];
    if (u == centre) continue;
    weight[j] = (g.has_edge(centre, u) ? 1 : 0) + (g.has_edge(u, centre) ? 1 : 0);
  }
  std::uint64_t twice_t = 0;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (weight[j] == 0) continue;
    const Vertex u = members[j];
    for (auto row : {g.out(u), g.in(u)}) {
      for (Vertex w : row) {
        if (w == centre) continue;
        auto k = members.index_of(w);
        if (!k || weight[*k] == 0) continue;
        twice_t += static_cast<std::uint64_t>(weight[j]) * static_cast<std::uint64_t>(weight[*k]);
      }
    }
  }
  return static_cast<double>(twice_t) / 2.0 / denom;
}

std::uint64_t possible_directed_triangles(const DegreeInfo& d) {
  const std::uint64_t deg = d.total;
  if (deg < 2) return 0;
  return deg * (deg - 1) - (d.in * d.out + d.reciprocal);
}

double transitive_cc(const Digraph& g, Vertex centre) {
  const DegreeInfo d = degrees(g, centre);
  const std::uint64_t possible = possible_directed_triangles(d);
  if (possible == 0) return 0.0;
  const std::uint64_t actual = simplex_count_containing(g, centre, 2);
  return static_cast<double>(actual) / static_cast<double>(possible);
}

double density_coefficient(const Digraph& g, Vertex centre, std::size_t k) {
  const std::size_t n = g.n_vertices();
  if (k < 2 || k >= n) {
    throw DomainError("density coefficient needs 2 <= k < n (k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
  const auto s = simplex_counts_containing(g, centre, k);
  if (s[k - 1] == 0) return 0.0;
  // One division of exactly represented integers, so D = 1 comes out exact.
  const long double num = static_cast<long double>(k) * static_cast<long double>(s[k]);
  const long double den = static_cast<long double>(k + 1) * static_cast<long double>(n - k) *
                          static_cast<long double>(s[k - 1]);
  return static_cast<double>(num / den);
}

std::uint64_t reciprocal_degree_sum(const Digraph& g) {
  std::uint64_t total = 0;
  for (Vertex u = 0; u < g.n_vertices(); ++u) {
    for (Vertex v : g.out(u)) {
      if (g.has_edge(v, u)) ++total;
    }
  }
  return total;
}

double evaluate(const ParameterCode& code, const Digraph& g, std::optional<Vertex> centre,
                EvalContext context) {
  const ParameterInfo& info = require_info(code.code);
  const std::string_view c = info.code;
  const GapVariant variant = code.variant == none ? info.default_variant : code.variant;

  if (info.centre_dependent) {
    if (!centre) {
      if (context == EvalContext::as_selection) {
        throw ContractError("parameter '" + code.to_string() + "' needs a centre vertex");
      }
      return 0.0;
    }
    if (*centre >= g.n_vertices()) throw RangeError("centre outside graph");
    if (c == "fcc") return fagiolo_cc(g, *centre);
    if (c == "tcc") return transitive_cc(g, *centre);
    const DegreeInfo d = degrees(g, *centre);
    if (c == "deg") return static_cast<double>(d.total);
    if (c == "ind") return static_cast<double>(d.in);
    if (c == "oud") return static_cast<double>(d.out);
    if (c == "rc_centre") return static_cast<double>(d.reciprocal);
    if (c.starts_with("dc")) {
      const std::size_t k = static_cast<std::size_t>(c[2] - '0');
      if (k >= g.n_vertices()) return 0.0;
      return density_coefficient(g, *centre, k);
    }
  }

  if (c == "size") return static_cast<double>(g.n_vertices());
  if (c == "rc") return static_cast<double>(reciprocal_degree_sum(g));
  if (c == "ec") {
    if (g.n_vertices() == 0) return 0.0;
    const auto counts = count_simplices(g, g.n_vertices() - 1);
    return static_cast<double>(euler_characteristic(counts));
  }
  if (c == "nbc") {
    if (g.n_vertices() == 0) return 0.0;
    const auto complex = build_flag_complex(g, kDefaultBettiDimension + 1);
    return finite_or_zero(normalised_betti_coefficient(complex, betti_numbers(complex)));
  }
  if (c == "asg") return finite_or_zero(pick(adjacency_spectrum(g), variant));
  if (c == "asr") return finite_or_zero(adjacency_spectrum(g).radius);
  if (c == "tpsg") return finite_or_zero(pick(transition_probability_spectrum(g), variant));
  if (c == "tpsr") return finite_or_zero(transition_probability_spectrum(g).radius);
  if (c == "rtpsg") return finite_or_zero(pick(transition_probability_spectrum(g, true), variant));
  if (c == "rtpsr") return finite_or_zero(transition_probability_spectrum(g, true).radius);
  if (c == "blsg") return finite_or_zero(pick(bauer_laplacian_spectrum(g), variant));
  if (c == "blsr") return finite_or_zero(bauer_laplacian_spectrum(g).radius);
  if (c == "rblsg") return finite_or_zero(pick(bauer_laplacian_spectrum(g, true), variant));
  if (c == "rblsr") return finite_or_zero(bauer_laplacian_spectrum(g, true).radius);
  if (c == "clsg") return finite_or_zero(pick(chung_laplacian_summary(g), variant));
  if (c == "clsr") return finite_or_zero(chung_laplacian_summary(g).radius);

  throw RegistryError("parameter code '" + std::string(c) + "' has no evaluator");
}

double evaluate(const ParameterCode& code, const Neighbourhood& nb) {
  return evaluate(code, nb.graph, nb.local_centre, EvalContext::as_selection);
}

}  // namespace nbdyn
