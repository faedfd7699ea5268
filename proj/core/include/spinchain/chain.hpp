#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/sparse_matrix.hpp"
#include "spinchain/spin_value.hpp"

namespace spinchain {

// Resource limits for instance construction; overridable via environment
// (SPINCHAIN_MAX_DIM, SPINCHAIN_MAX_VEC_DIM, SPINCHAIN_MAX_STATE_DIM,
// SPINCHAIN_MAX_TWICE_SPIN), see env_budget().
struct Budget {
  long max_dimension = 20000;        // full Hilbert-space dimension
  long max_vector_dimension = 8192;  // eigenvector computation
  long max_state_dimension = 4096;   // dense full-chain thermal state
  int max_twice_spin = 5;            // s capped at 5/2 unless raised
};

Budget env_budget();

// One Hamiltonian instance: H = J * sum_i S_i . S_{i+1}, units k = hbar = 1.
//
// Periodic chains identify site L+1 with site 1, so the literal bond sum for
// L=2 contains the (1,2) pair twice: H = 2J S_1.S_2. That doubled-bond
// convention is kept deliberately; it is what makes the L=2 closed forms
// E_0 = -2J(s^2+s) and E_min = -2Js^2 come out right, and it changes every
// L=2 number by a factor of 2 versus a single-bond reading.
struct ChainSpec {
  SpinValue spin{SpinValue::from_twice(1)};
  int sites = 2;
  double coupling = 1.0;  // J > 0 is the antiferromagnetic case
  bool periodic = true;

  void validate(const Budget& budget = {}) const;
  long dimension(const Budget& budget = {}) const;  // (2s+1)^sites, budget-checked

  // Site pairs of the literal bond sum; L=2 periodic lists (0,1) and (1,0).
  std::vector<std::pair<int, int>> bonds() const;

  bool antiferromagnetic() const noexcept { return coupling > 0.0; }

  // Canonical short description, also the cache fingerprint base.
  std::string key() const;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

// Partition of the product basis by total S^z (stored as twice the value),
// listed in descending Sz order. Sectors partition 0 .. (2s+1)^L - 1.
class SectorIndex {
 public:
  struct Sector {
    int twice_sz;
    std::vector<long> basis;  // ascending product-basis indices
  };

  static SectorIndex build(const ChainSpec& spec, const Budget& budget = {});

  const std::vector<Sector>& sectors() const noexcept { return sectors_; }
  long total_dimension() const;

 private:
  std::vector<Sector> sectors_;
};

// Sparse H assembled bond by bond through Kronecker embedding with identity
// padding; duplicates merged afterwards. Real symmetric, traceless.
SparseMatrix build_hamiltonian(const ChainSpec& spec, const Budget& budget = {});

struct SectorBlock {
  int twice_sz;
  std::vector<long> basis;
  Eigen::MatrixXd matrix;  // dense restriction of H to the sector
};

// Permutes H into its block-diagonal total-Sz form. H must conserve Sz;
// any cross-sector entry is an assembly bug and throws.
std::vector<SectorBlock> sector_split(const ChainSpec& spec, const SparseMatrix& h,
                                      const Budget& budget = {});

}  // namespace spinchain
