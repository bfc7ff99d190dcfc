#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbdyn/flag_complex.hpp"

namespace nbdyn {

inline constexpr std::size_t kDefaultBettiDimension = 5;

// Betti numbers over the two-element field, betti[d] for d = 0..max_dim.
struct BettiVector {
  std::vector<std::uint64_t> betti;

  std::uint64_t operator[](std::size_t d) const { return d < betti.size() ? betti[d] : 0; }
  friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

// Which elimination routine computes boundary ranks.
enum class RankMethod {
  automatic,  // dense below 512 columns, sparse otherwise
  sparse,
  dense,
};

// Rank over GF(2) of the boundary map from d-simplices to (d-1)-simplices.
std::size_t boundary_rank(const DirectedFlagComplex& x, std::size_t d,
                          RankMethod method = RankMethod::automatic);

// Mod-2 Betti numbers in dimensions 0..max_dim. Needs the complex built to
// dimension max_dim + 1, unless it has no simplices at its cap anyway;
// otherwise throws ContractError.
BettiVector betti_numbers(const DirectedFlagComplex& x,
                          std::size_t max_dim = kDefaultBettiDimension,
                          RankMethod method = RankMethod::automatic);

// Sum over i of (i+1) * betti_i / s_i, skipping dimensions with s_i = 0.
// The sum stops at the last dimension of `b`.
double normalised_betti_coefficient(const DirectedFlagComplex& x, const BettiVector& b);

}  // namespace nbdyn
