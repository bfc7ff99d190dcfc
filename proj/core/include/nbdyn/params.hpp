#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbdyn/digraph.hpp"

namespace nbdyn {

// Which spectral gap a gap code reports.
enum class GapVariant {
  none,  // code is not a spectral gap
  high,  // largest modulus minus the second largest
  low,   // smallest non-zero modulus
};

struct ParameterCode {
  std::string code;
  GapVariant variant = GapVariant::none;

  // Canonical text form, e.g. "size", "blsg_low".
  std::string to_string() const;
  friend bool operator==(const ParameterCode&, const ParameterCode&) = default;
};

struct ParameterInfo {
  std::string_view code;
  std::string_view description;
  bool centre_dependent = false;
  GapVariant default_variant = GapVariant::none;
};

// The closed set of supported codes, in display order.
std::span<const ParameterInfo> parameter_registry();

// The thirteen codes of the main parameter table (fcc .. tpsr).
std::span<const std::string_view> primary_parameter_codes();

// Accepts "code" or, for gap codes, "code_high" / "code_low".
// Throws RegistryError for anything else.
ParameterCode parse_parameter_code(std::string_view text);
std::vector<ParameterCode> parse_parameter_codes(std::string_view comma_separated);

enum class EvalContext {
  as_selection,  // graph is a neighbourhood and centre is always present
  as_feature,    // graph is an active subgraph; the centre may be missing
};

// Fagiolo's directed clustering coefficient at `centre`; 0 when the
// denominator vanishes.
double fagiolo_cc(const Digraph& g, Vertex centre);

// Directed 3-cliques through `centre` divided by the number of possible ones,
// deg(deg-1) - (ind*oud + R); 0 when the denominator vanishes.
double transitive_cc(const Digraph& g, Vertex centre);

// Number of possible directed 3-cliques at a vertex with the given degrees.
std::uint64_t possible_directed_triangles(const DegreeInfo& d);

// k/((k+1)(n-k)) * S_k / S_{k-1}, where S_j counts directed (j+1)-cliques
// through `centre` and n = |V(g)|. 0 when S_{k-1} = 0. Throws DomainError
// unless 2 <= k < n.
double density_coefficient(const Digraph& g, Vertex centre, std::size_t k);

// Sum of the reciprocal degrees of all vertices.
std::uint64_t reciprocal_degree_sum(const Digraph& g);

// Value of `code` on g. Centre-dependent codes read the centre's local id;
// in feature context a missing centre yields 0, in selection context it is
// a ContractError. Never returns NaN or infinity.
double evaluate(const ParameterCode& code, const Digraph& g, std::optional<Vertex> centre,
                EvalContext context);

// Selection-context evaluation on a neighbourhood.
double evaluate(const ParameterCode& code, const Neighbourhood& nb);

}  // namespace nbdyn
