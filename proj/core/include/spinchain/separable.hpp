#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/chain.hpp"

namespace spinchain {

// Fully separable pure state: one unit vector per chain site.
struct ProductState {
  std::vector<Eigen::VectorXcd> factors;

  int sites() const noexcept { return static_cast<int>(factors.size()); }
};

// <psi|H|psi> for a product state. Each bond contributes the dot product of
// the two sites' mean spin vectors <S_a>.<S_b>, which is exact for product
// states, so the cost is linear in L.
double product_energy(const ChainSpec& spec, const ProductState& state);

// Mean spin vector (<Sx>, <Sy>, <Sz>) of one normalized site factor.
Eigen::Vector3d mean_spin(const SpinValue& s, const Eigen::VectorXcd& factor);

enum class SeparableMethod { kClosedForm, kEq3Construction, kNumericMinimizer };

std::string to_string(SeparableMethod m);

struct SeparableBound {
  double e_min;
  ProductState achieving_state;
  SeparableMethod method;
  bool converged = true;  // numeric path only; false means best-so-far
  int sweeps = 0;
  std::vector<double> sweep_energies;  // best restart, one value per sweep
};

// -J*L*s^2, the even periodic ring minimum. Refuses open chains and odd rings
// (the alternating construction needs a two-colorable ring); the numeric
// minimizer is authoritative there.
double e_min_closed_form(const ChainSpec& spec);

// One antiparallel pair of single-site states in the Sz basis (m descending)
// achieving bond correlation <S_a.S_b> = -s^2.
struct PairState {
  Eigen::VectorXcd site_a;
  Eigen::VectorXcd site_b;
  bool literal_ok = true;  // recursion output passed the -s^2 validation
  std::string note;        // filled when the fallback replaced the literal output
};

// Coefficient-recursion construction (C_0 = 1, C_{m+1} = (2s-m)/(m+1) C_m,
// integer spin ends with C_s = (s+1)/(4s) C_{s-1}), normalized, validated
// against the coherent-state pair; on validation failure the coherent result
// is returned with the discrepancy recorded in `note`.
PairState eq3_pair_state(const SpinValue& s);

// Independent construction: |m=s> rotated to point along +x and -x.
PairState coherent_pair_state(const SpinValue& s);

// Alternating A,B,A,B,... pattern over an even ring; energy -J*L*s^2.
ProductState neel_product_state(const ChainSpec& spec);

// Coordinate descent over site factors: each update replaces one factor by
// the ground eigenvector of its mean-field operator sum_j J <S_j>.S, the
// exact single-site optimum, so the energy never increases. Restarts draw
// random initial states from the seed.
SeparableBound numeric_min_product_energy(const ChainSpec& spec, int restarts = 16,
                                          double tol = 1e-10,
                                          std::uint64_t seed = 12345,
                                          const Budget& budget = {});

// Dispatch: closed form plus the alternating state on even periodic rings,
// numeric minimizer everywhere else.
SeparableBound minimum_separable_energy(const ChainSpec& spec, int restarts = 16,
                                        double tol = 1e-10,
                                        std::uint64_t seed = 12345,
                                        const Budget& budget = {});

}  // namespace spinchain
