#include "spinchain/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "spinchain/errors.hpp"

namespace spinchain {

SparseMatrix SparseMatrix::identity(long n) {
  SparseMatrix m(n, n);
  m.entries_.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) m.entries_.push_back({i, i, 1.0});
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXd& d, double drop_tol) {
  SparseMatrix m(d.rows(), d.cols());
  for (long c = 0; c < d.cols(); ++c) {
    for (long r = 0; r < d.rows(); ++r) {
      if (std::abs(d(r, c)) > drop_tol) m.entries_.push_back({r, c, d(r, c)});
    }
  }
  return m;
}

void SparseMatrix::insert(long row, long col, double value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
    throw InvalidSpec("sparse insert out of range: (" + std::to_string(row) + "," +
                      std::to_string(col) + ") in " + std::to_string(rows_) + "x" +
                      std::to_string(cols_));
  }
  entries_.push_back({row, col, value});
}

void SparseMatrix::compact() {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries_.size();) {
    Triplet acc = entries_[i];
    std::size_t j = i + 1;
    while (j < entries_.size() && entries_[j].row == acc.row && entries_[j].col == acc.col) {
      acc.value += entries_[j].value;
      ++j;
    }
    if (acc.value != 0.0) entries_[out++] = acc;
    i = j;
  }
  entries_.resize(out);
}

SparseMatrix& SparseMatrix::operator+=(const SparseMatrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    rows_ = other.rows_;
    cols_ = other.cols_;
  }
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw InvalidSpec("sparse add: shape mismatch");
  }
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  return *this;
}

SparseMatrix& SparseMatrix::operator*=(double factor) {
  for (auto& t : entries_) t.value *= factor;
  return *this;
}

Eigen::MatrixXd SparseMatrix::dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const auto& t : entries_) d(t.row, t.col) += t.value;
  return d;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t(cols_, rows_);
  t.entries_.reserve(entries_.size());
  for (const auto& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
  return t;
}

double SparseMatrix::trace() const {
  double tr = 0.0;
  for (const auto& t : entries_) {
    if (t.row == t.col) tr += t.value;
  }
  return tr;
}

double SparseMatrix::max_abs() const {
  // meaningful after compact(); duplicates would understate cancellation
  double mx = 0.0;
  for (const auto& t : entries_) mx = std::max(mx, std::abs(t.value));
  return mx;
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  std::map<std::pair<long, long>, double> sum;
  for (const auto& t : entries_) sum[{t.row, t.col}] += t.value;
  for (const auto& [rc, v] : sum) {
    const auto it = sum.find({rc.second, rc.first});
    const double vt = it == sum.end() ? 0.0 : it->second;
    if (std::abs(v - vt) > tol) return false;
  }
  return true;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.reserve(a.nnz() * b.nnz());
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      out.insert(ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col, ea.value * eb.value);
    }
  }
  return out;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long r = 0; r < a.rows(); ++r) {
    for (long c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long r = 0; r < a.rows(); ++r) {
    for (long c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace spinchain
