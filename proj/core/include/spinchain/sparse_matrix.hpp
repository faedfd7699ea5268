#pragma once

#include <vector>

#include <Eigen/Dense>

namespace spinchain {

struct Triplet {
  long row = 0;
  long col = 0;
  double value = 0.0;
};

// Real matrix in coordinate-list form, the assembly carrier for Hamiltonians.
// Entries may repeat during accumulation; compact() merges them. A dense view
// is materialized on demand for the eigensolver paths.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix identity(long n);
  static SparseMatrix from_dense(const Eigen::MatrixXd& m, double drop_tol = 0.0);

  long rows() const noexcept { return rows_; }
  long cols() const noexcept { return cols_; }
  const std::vector<Triplet>& entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  void insert(long row, long col, double value);
  void reserve(std::size_t n) { entries_.reserve(n); }

  // Sort by (row, col), sum duplicates, drop exact zeros.
  void compact();

  SparseMatrix& operator+=(const SparseMatrix& other);
  SparseMatrix& operator*=(double factor);

  Eigen::MatrixXd dense() const;
  SparseMatrix transposed() const;

  double trace() const;
  double max_abs() const;

  // Entrywise |M - M^T| <= tol. Requires no particular entry order.
  bool is_symmetric(double tol = 0.0) const;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<Triplet> entries_;
};

// Tensor (Kronecker) product: (A kron B)(ra*rB+rb, ca*cB+cb) = A(ra,ca)*B(rb,cb).
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace spinchain
