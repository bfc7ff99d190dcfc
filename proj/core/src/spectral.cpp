#include "nbdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nbdyn/errors.hpp"

namespace nbdyn {
namespace {

constexpr double kPerronTolerance = 1e-12;
constexpr int kPerronIterationCap = 10000;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kClusterTolerance = 1e-4;

// A defective eigenvalue of multiplicity k comes back from the solver spread
// over a disc of radius about eps^(1/k), while the mean of the spread copies
// stays accurate. Eigenvalues closer than kClusterTolerance * max(1, radius)
// are linked and each linked group is replaced by its mean.
void merge_clusters(std::vector<std::complex<double>>& values) {
  const std::size_t n = values.size();
  if (n < 2) return;
  double radius = 0.0;
  for (const auto& v : values) radius = std::max(radius, std::abs(v));
  const double tol = kClusterTolerance * std::max(1.0, radius);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::complex<double>> sum(n, 0.0);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += values[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (count[r] > 1) values[i] = sum[r] / static_cast<double>(count[r]);
  }
}

Spectrum from_eigenvalues(std::vector<std::complex<double>> values) {
  Spectrum s;
  s.moduli.reserve(values.size());
  for (const auto& v : values) s.moduli.push_back(std::abs(v));
  std::sort(s.moduli.begin(), s.moduli.end(), std::greater<>());
  s.eigenvalues = std::move(values);
  return s;
}

// Solves phi^T P = phi^T, sum(phi) = 1 directly.
Eigen::VectorXd stationary_by_solve(const Matrix& p) {
  const Eigen::Index n = p.rows();
  Matrix a = p.transpose() - Matrix::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  return a.fullPivLu().solve(b);
}

// The matrix is block triangular in strongly connected component order, so
// its eigenvalues are those of the diagonal blocks. Solving per block keeps
// singleton eigenvalues exact and avoids the perturbation blow-up of
// defective eigenvalues spread across components.
Spectrum blockwise_spectrum(const Digraph& g, const Matrix& m) {
  const auto comp = strongly_connected_components(g);
  std::size_t n_comp = 0;
  for (std::size_t c : comp) n_comp = std::max(n_comp, c + 1);
  std::vector<std::vector<Eigen::Index>> members(n_comp);
  for (Vertex v = 0; v < g.n_vertices(); ++v) members[comp[v]].push_back(static_cast<Eigen::Index>(v));
  std::vector<std::complex<double>> values;
  values.reserve(g.n_vertices());
  for (const auto& block : members) {
    if (block.size() == 1) {
      values.emplace_back(m(block[0], block[0]), 0.0);
      continue;
    }
    const auto k = static_cast<Eigen::Index>(block.size());
    Matrix sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(block[i], block[j]);
    }
    auto part = spectrum(sub).eigenvalues;
    merge_clusters(part);
    values.insert(values.end(), part.begin(), part.end());
  }
  return from_eigenvalues(std::move(values));
}

}  // namespace

double zero_modulus_threshold(double radius) { return 1e-9 * std::max(1.0, radius); }

Matrix adjacency_matrix(const Digraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  Matrix a = Matrix::Zero(n, n);
  for (Vertex u = 0; u < g.n_vertices(); ++u) {
    for (Vertex v : g.out(u)) a(u, v) = 1.0;
  }
  return a;
}

Matrix transition_probability_matrix(const Digraph& g, bool reversed) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  Matrix p = Matrix::Zero(n, n);
  for (Vertex u = 0; u < g.n_vertices(); ++u) {
    auto row = reversed ? g.in(u) : g.out(u);
    if (row.empty()) continue;
    const double w = 1.0 / static_cast<double>(row.size());
    for (Vertex v : row) p(u, v) = w;
  }
  return p;
}

Matrix bauer_laplacian(const Digraph& g, bool reversed) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  Matrix l = Matrix::Zero(n, n);
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    auto row = reversed ? g.out(v) : g.in(v);
    if (row.empty()) continue;
    l(v, v) = 1.0;
    const double w = 1.0 / static_cast<double>(row.size());
    for (Vertex u : row) l(v, u) -= w;
  }
  return l;
}

Spectrum spectrum(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver did not converge for a " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + " matrix");
  }
  const auto& ev = solver.eigenvalues();
  return from_eigenvalues({ev.data(), ev.data() + ev.size()});
}

Spectrum symmetric_spectrum(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver did not converge for a " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  std::vector<std::complex<double>> values;
  values.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) values.emplace_back(solver.eigenvalues()(i), 0.0);
  return from_eigenvalues(std::move(values));
}

SpectralSummary summarize(const Spectrum& s) {
  SpectralSummary out;
  if (s.moduli.empty()) return out;
  out.radius = s.moduli.front();
  if (s.moduli.size() >= 2) out.gap_high = s.moduli[0] - s.moduli[1];
  const double zero = zero_modulus_threshold(out.radius);
  for (auto it = s.moduli.rbegin(); it != s.moduli.rend(); ++it) {
    if (*it > zero) {
      out.gap_low = *it;
      break;
    }
  }
  return out;
}

SpectralSummary adjacency_spectrum(const Digraph& g) {
  if (g.n_vertices() < 2) return {};
  return summarize(blockwise_spectrum(g, adjacency_matrix(g)));
}

SpectralSummary transition_probability_spectrum(const Digraph& g, bool reversed) {
  if (g.n_vertices() < 2) return {};
  return summarize(blockwise_spectrum(g, transition_probability_matrix(g, reversed)));
}

SpectralSummary bauer_laplacian_spectrum(const Digraph& g, bool reversed) {
  if (g.n_vertices() < 2) return {};
  return summarize(blockwise_spectrum(g, bauer_laplacian(g, reversed)));
}

std::vector<double> perron_vector(const Matrix& p) {
  const Eigen::Index n = p.rows();
  if (n == 0) return {};
  const Matrix pt = p.transpose();
  Eigen::VectorXd phi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd next(n);
  bool converged = false;
  for (int it = 0; it < kPerronIterationCap; ++it) {
    next.noalias() = pt * phi;
    next = 0.5 * (next + phi);
    next /= next.sum();
    const double change = (next - phi).lpNorm<1>();
    phi.swap(next);
    if (change <= kPerronTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    phi = stationary_by_solve(p);
    const double total = phi.sum();
    if (!std::isfinite(total) || total <= 0.0) {
      throw NumericError("Perron vector did not converge for a " + std::to_string(n) + "x" +
                         std::to_string(n) + " transition matrix");
    }
    phi /= total;
  }
  if ((phi.array() <= 0.0).any() || !phi.allFinite()) {
    throw NumericError("Perron vector is not strictly positive; is the graph strongly connected?");
  }
  return {phi.data(), phi.data() + n};
}

Matrix chung_laplacian(const Digraph& strongly_connected) {
  const auto n = static_cast<Eigen::Index>(strongly_connected.n_vertices());
  const Matrix p = transition_probability_matrix(strongly_connected);
  const auto phi = perron_vector(p);
  Eigen::VectorXd root(n), inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    root(i) = std::sqrt(phi[static_cast<std::size_t>(i)]);
    inv_root(i) = 1.0 / root(i);
  }
  // M = Phi^1/2 P Phi^-1/2; the second term of the average is M^T.
  const Matrix m = root.asDiagonal() * p * inv_root.asDiagonal();
  Matrix l = Matrix::Identity(n, n) - 0.5 * (m + m.transpose());
  return l;
}

SpectralSummary chung_laplacian_summary(const Digraph& g) {
  const VertexSet scc = largest_scc(g);
  if (scc.size() < 2) return {};
  const Matrix l = chung_laplacian(induced_subgraph(g, scc));
  const double defect = (l - l.transpose()).cwiseAbs().maxCoeff();
  if (defect > kSymmetryTolerance) {
    throw NumericError("Chung Laplacian symmetry defect " + std::to_string(defect));
  }
  return summarize(symmetric_spectrum(l));
}

}  // namespace nbdyn
