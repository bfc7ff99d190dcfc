#include "nbdyn/homology.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "nbdyn/errors.hpp"

namespace nbdyn {
namespace {

constexpr std::size_t kDenseColumnLimit = 512;
constexpr std::size_t kNoOwner = static_cast<std::size_t>(-1);

// Sorted row indices of the boundary of simplex i in dimension d.
void boundary_column(const DirectedFlagComplex& x, std::size_t d, std::size_t i,
                     std::vector<Vertex>& facet, std::vector<std::size_t>& column) {
  auto s = x.simplex(d, i);
  column.clear();
  for (std::size_t drop = 0; drop <= d; ++drop) {
    facet.clear();
    for (std::size_t j = 0; j <= d; ++j) {
      if (j != drop) facet.push_back(s[j]);
    }
    auto row = x.index_of(facet);
    if (!row) throw ContractError("flag complex is not closed under faces");
    column.push_back(*row);
  }
  std::sort(column.begin(), column.end());
}

// Column reduction with the lowest non-zero row as pivot. Columns flagged in
// `cleared` are known to reduce to zero and are skipped. Pivot rows of the
// surviving columns are flagged in `pivots` when it is non-null.
std::size_t reduce_sparse(const DirectedFlagComplex& x, std::size_t d,
                          const std::vector<char>* cleared, std::vector<char>* pivots) {
  const std::size_t n_cols = x.count(d);
  const std::size_t n_rows = x.count(d - 1);
  std::vector<std::size_t> owner(n_rows, kNoOwner);
  std::vector<std::vector<std::size_t>> reduced;
  std::vector<Vertex> facet;
  std::vector<std::size_t> column, merged;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (cleared && (*cleared)[c]) continue;
    boundary_column(x, d, c, facet, column);
    while (!column.empty() && owner[column.back()] != kNoOwner) {
      const auto& other = reduced[owner[column.back()]];
      merged.clear();
      std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                    std::back_inserter(merged));
      column.swap(merged);
    }
    if (column.empty()) continue;
    owner[column.back()] = reduced.size();
    if (pivots) (*pivots)[column.back()] = 1;
    reduced.push_back(column);
    ++rank;
  }
  return rank;
}

std::size_t reduce_dense(const DirectedFlagComplex& x, std::size_t d,
                         const std::vector<char>* cleared, std::vector<char>* pivots) {
  const std::size_t n_cols = x.count(d);
  const std::size_t n_rows = x.count(d - 1);
  const std::size_t words = (n_rows + 63) / 64;
  std::vector<std::size_t> owner(n_rows, kNoOwner);
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<Vertex> facet;
  std::vector<std::size_t> column;
  std::vector<std::uint64_t> bits(words);

  auto lowest = [&](const std::vector<std::uint64_t>& b) -> std::size_t {
    for (std::size_t w = words; w-- > 0;) {
      if (b[w]) return w * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(b[w])));
    }
    return kNoOwner;
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (cleared && (*cleared)[c]) continue;
    boundary_column(x, d, c, facet, column);
    std::fill(bits.begin(), bits.end(), 0);
    for (std::size_t r : column) bits[r / 64] |= std::uint64_t{1} << (r % 64);
    std::size_t low = lowest(bits);
    while (low != kNoOwner && owner[low] != kNoOwner) {
      const auto& other = basis[owner[low]];
      for (std::size_t w = 0; w < words; ++w) bits[w] ^= other[w];
      low = lowest(bits);
    }
    if (low == kNoOwner) continue;
    owner[low] = basis.size();
    if (pivots) (*pivots)[low] = 1;
    basis.push_back(bits);
    ++rank;
  }
  return rank;
}

std::size_t reduce(const DirectedFlagComplex& x, std::size_t d, RankMethod method,
                   const std::vector<char>* cleared, std::vector<char>* pivots) {
  if (d == 0 || x.count(d) == 0) return 0;
  const bool dense = method == RankMethod::dense ||
                     (method == RankMethod::automatic && x.count(d) < kDenseColumnLimit);
  return dense ? reduce_dense(x, d, cleared, pivots) : reduce_sparse(x, d, cleared, pivots);
}

}  // namespace

std::size_t boundary_rank(const DirectedFlagComplex& x, std::size_t d, RankMethod method) {
  return reduce(x, d, method, nullptr, nullptr);
}

BettiVector betti_numbers(const DirectedFlagComplex& x, std::size_t max_dim, RankMethod method) {
  if (x.dimension_cap() < max_dim + 1 && x.truncated()) {
    throw ContractError("flag complex built to dimension " + std::to_string(x.dimension_cap()) +
                        " but Betti numbers up to " + std::to_string(max_dim) +
                        " need dimension " + std::to_string(max_dim + 1));
  }
  // rank[d] = rank of the boundary d-simplices -> (d-1)-simplices.
  std::vector<std::size_t> rank(max_dim + 3, 0);
  // Top-down with clearing: a d-simplex that is the pivot of a reduced
  // (d+1)-column is a boundary, so its own column reduces to zero.
  std::vector<char> cleared;
  for (std::size_t d = max_dim + 1; d >= 1; --d) {
    std::vector<char> pivots(x.count(d - 1), 0);
    const std::vector<char>* skip = cleared.empty() ? nullptr : &cleared;
    rank[d] = reduce(x, d, method, skip, &pivots);
    cleared = std::move(pivots);
  }
  BettiVector b;
  b.betti.resize(max_dim + 1);
  for (std::size_t d = 0; d <= max_dim; ++d) {
    b.betti[d] = x.count(d) - rank[d] - rank[d + 1];
  }
  return b;
}

double normalised_betti_coefficient(const DirectedFlagComplex& x, const BettiVector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < b.betti.size(); ++i) {
    const auto s = x.count(i);
    if (s == 0) continue;
    sum += static_cast<double>((i + 1) * b.betti[i]) / static_cast<double>(s);
  }
  return sum;
}

}  // namespace nbdyn
