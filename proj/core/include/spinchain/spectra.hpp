#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/chain.hpp"

namespace spinchain {

// Eigenvectors of one total-Sz sector, columns orthonormal, values ascending.
// basis maps sector-local row p to the product-basis index basis[p].
struct SectorVectors {
  int twice_sz;
  std::vector<long> basis;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

struct SpectralData {
  ChainSpec spec;
  std::vector<double> eigenvalues;    // ascending, full multiset across sectors
  std::vector<SectorVectors> sectors; // empty unless vectors were requested

  bool has_vectors() const noexcept { return !sectors.empty(); }
};

// Full eigendecomposition, sector by sector. Eigenvalues are always returned;
// eigenvectors only when requested, which additionally gates on the vector
// budget. Workers fan out one per sector; results are merged in a fixed sector
// order so output does not depend on scheduling.
SpectralData diagonalize(const ChainSpec& spec, bool need_vectors,
                         const Budget& budget = {});

double ground_energy(const SpectralData& sd);

struct DegeneracyLevel {
  double energy;        // representative (first member of the group)
  int multiplicity;
};

// Groups the ascending eigenvalue list with threshold 1e-9 * max(1, |E|).
// Reporting only; no downstream quantity depends on the grouping.
std::vector<DegeneracyLevel> degeneracies(const SpectralData& sd);

}  // namespace spinchain
