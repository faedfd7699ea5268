#pragma once

#include <Eigen/Dense>

#include "spinchain/sparse_matrix.hpp"
#include "spinchain/spin_value.hpp"

namespace spinchain {

// Single-site spin-s operators in the |m> basis, ordered m = s, s-1, ..., -s
// (index k holds |m = s - k>). This ordering is fixed artifact-wide.
//
// The whole Hamiltonian pipeline stays real by working with S^z and the
// ladder operators; S^y is the only intrinsically complex matrix here.

// diag(s, s-1, ..., -s)
SparseMatrix sz_matrix(SpinValue s);

// <m+1|S+|m> = sqrt((s-m)(s+m+1)); annihilates |s>.
SparseMatrix splus_matrix(SpinValue s);

// S- = (S+)^T
SparseMatrix sminus_matrix(SpinValue s);

// S^x = (S+ + S-)/2, real symmetric
SparseMatrix sx_matrix(SpinValue s);

// S^y = (S+ - S-)/(2i), Hermitian
Eigen::MatrixXcd sy_matrix(SpinValue s);

// S_a.S_b on the (2s+1)^2 pair space:
//   S^z kron S^z + (1/2)(S+ kron S- + S- kron S+)
// Real symmetric, traceless.
SparseMatrix heisenberg_bond(SpinValue s);

}  // namespace spinchain
