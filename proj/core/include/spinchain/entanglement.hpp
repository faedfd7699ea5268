#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinchain/thermal.hpp"

namespace spinchain {

// Energy witness W = <H> - E_min; W < 0 certifies entanglement because every
// separable state has energy at least E_min.
struct WitnessReport {
  double temperature;  // NaN when the report is purely algebraic
  double energy_mean;
  double e_min;
  double witness;
  bool entangled_by_witness;
};

WitnessReport witness(double energy_mean, double e_min);
WitnessReport witness(double temperature, double energy_mean, double e_min);

enum class Subsystem { kA, kB };

// Partial transpose over one factor of a bipartite state,
// (a,b; a',b') -> (a',b; a,b') for subsystem A. Involution; both choices
// give the same spectrum.
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, Subsystem which);

struct NegativityReport {
  double negativity;  // |sum of listed eigenvalues|
  std::vector<double> negative_eigenvalues;  // all strictly below -tolerance
  double tolerance_used;
};

// Negativity from the partial-transpose spectrum; eigenvalues in
// (-tol, 0) count as zero (eigensolver noise floor).
NegativityReport negativity(const DensityMatrix& rho, double tol = 1e-10);

// SU(2)-invariant two-site criteria on precomputed correlators.
bool su2_criterion_spin_half(double correlation);          // <S1.S2> < -1/4
bool su2_criterion_spin_one(double squared_correlation);   // <(S1.S2)^2> > 2

// Witness-negativity formula for the two-site spin-1 thermal family,
// rhs = [(W-2J)^2 + V(H)]/(8J^2) - 1 with W built from E_min = -2J. Formula
// evaluator only; it may go negative above the entanglement threshold, and
// the partial-transpose negativity stays authoritative.
double negativity_from_witness_spin1(double w, double variance, double j);

}  // namespace spinchain
