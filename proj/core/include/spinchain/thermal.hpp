#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinchain/spectra.hpp"

namespace spinchain {

// Gibbs-ensemble scalars at one temperature, units k = hbar = 1. All sums use
// ground-shifted Boltzmann weights w_i = exp(-(E_i - E_0)/T), so no quantity
// overflows at any T > 0; log_z_shifted stores log(sum w_i).
struct ThermalObservables {
  double temperature;
  double energy_mean;     // <H>
  double energy_sq_mean;  // <H^2>
  double variance;        // V(H) = <H^2> - <H>^2, clamped to 0 within -1e-9
  double log_z_shifted;
};

ThermalObservables observables(const std::vector<double>& eigenvalues, double temperature);
ThermalObservables observables(const SpectralData& sd, double temperature);

// Hermitian unit-trace state over an ordered tensor factorization; dims lists
// the subsystem dimensions whose product is the matrix dimension.
struct DensityMatrix {
  Eigen::MatrixXcd entries;
  std::vector<long> dims;

  long dimension() const noexcept { return entries.rows(); }

  // Enforces trace 1 (1e-10), Hermiticity residual (1e-12), eigenvalues
  // above -1e-9, and the dims product. Throws InvalidSpec on violation.
  void validate() const;
};

// Full-chain thermal state rho = sum_i (w_i / Z) v_i v_i^T, assembled from
// sector eigenvectors. Requires vectors; gated on the dense-state budget.
// Weights below 1e-16 of the largest are skipped.
DensityMatrix thermal_state(const SpectralData& sd, double temperature,
                            const Budget& budget = {});

// Reduced state of the bond (site, site+1), sites 0-based with periodic wrap.
// Accumulates per-eigenvector outer products in the two-site subspace, never
// materializing the full chain state. dims = [2s+1, 2s+1].
DensityMatrix nn_reduced_density(const SpectralData& sd, double temperature, int site,
                                 const Budget& budget = {});

// <S_a . S_b> on a two-site density matrix (dims = [d, d], equal spins).
double bond_correlation(const DensityMatrix& rho);

// <(S_a . S_b)^2> on a two-site density matrix.
double bond_correlation_squared(const DensityMatrix& rho);

}  // namespace spinchain
