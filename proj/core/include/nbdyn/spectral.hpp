#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nbdyn/digraph.hpp"

namespace nbdyn {

using Matrix = Eigen::MatrixXd;

// Eigenvalues of a square matrix, with their moduli sorted descending.
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> moduli;
};

struct SpectralSummary {
  double radius = 0.0;    // largest modulus
  double gap_high = 0.0;  // largest modulus minus second largest
  double gap_low = 0.0;   // smallest non-zero modulus

  friend bool operator==(const SpectralSummary&, const SpectralSummary&) = default;
};

// A modulus counts as non-zero above 1e-9 * max(1, radius).
double zero_modulus_threshold(double radius);

Matrix adjacency_matrix(const Digraph& g);

// Row u is row u of the adjacency matrix divided by oud(u); a zero row when
// oud(u) = 0. The reversed variant walks edges backwards and normalises by
// in-degree: row v holds 1/ind(v) at every in-neighbour of v.
Matrix transition_probability_matrix(const Digraph& g, bool reversed = false);

// Row v is e_v - (1/ind(v)) * (indicator of in-neighbours of v), or the zero
// row when ind(v) = 0. The reversed variant uses out-neighbours and oud(v).
Matrix bauer_laplacian(const Digraph& g, bool reversed = false);

// General real matrix. Throws NumericError if the eigensolver fails.
Spectrum spectrum(const Matrix& m);
// Real symmetric matrix.
Spectrum symmetric_spectrum(const Matrix& m);

SpectralSummary summarize(const Spectrum& s);

SpectralSummary adjacency_spectrum(const Digraph& g);
SpectralSummary transition_probability_spectrum(const Digraph& g, bool reversed = false);
SpectralSummary bauer_laplacian_spectrum(const Digraph& g, bool reversed = false);

// Stationary distribution of an irreducible row-stochastic matrix, summing to
// one. Power iteration runs on the lazy chain (I + P) / 2, which has the same
// stationary vector and converges for periodic chains as well.
std::vector<double> perron_vector(const Matrix& p);

// Chung's symmetrised Laplacian for a strongly connected digraph:
// I - (Phi^1/2 P Phi^-1/2 + Phi^-1/2 P^T Phi^1/2) / 2.
Matrix chung_laplacian(const Digraph& strongly_connected);

// Summary of the Chung Laplacian of the largest strongly connected
// component; all zeros when that component has fewer than two vertices.
// gap_low is the Chung spectral gap.
SpectralSummary chung_laplacian_summary(const Digraph& g);

}  // namespace nbdyn
