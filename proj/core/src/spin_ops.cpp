#include "spinchain/spin_ops.hpp"

#include <cmath>
#include <complex>

namespace spinchain {

SparseMatrix sz_matrix(SpinValue s) {
  const int d = s.dimension();
  SparseMatrix m(d, d);
  for (int k = 0; k < d; ++k) {
    const double mk = 0.5 * (s.twice() - 2 * k);  // m = s - k, exact half-integer
    if (mk != 0.0) m.insert(k, k, mk);
  }
  return m;
}

SparseMatrix splus_matrix(SpinValue s) {
  const int d = s.dimension();
  const double sv = s.value();
  SparseMatrix m(d, d);
  for (int k = 1; k < d; ++k) {
    const double mk = sv - k;  // S+ maps index k to k-1
    m.insert(k - 1, k, std::sqrt((sv - mk) * (sv + mk + 1.0)));
  }
  return m;
}

SparseMatrix sminus_matrix(SpinValue s) { return splus_matrix(s).transposed(); }

SparseMatrix sx_matrix(SpinValue s) {
  SparseMatrix m = splus_matrix(s);
  m += sminus_matrix(s);
  m *= 0.5;
  m.compact();
  return m;
}

Eigen::MatrixXcd sy_matrix(SpinValue s) {
  const std::complex<double> inv_2i(0.0, -0.5);  // 1/(2i)
  const Eigen::MatrixXd plus = splus_matrix(s).dense();
  return inv_2i * (plus - plus.transpose());
}

SparseMatrix heisenberg_bond(SpinValue s) {
  const SparseMatrix sz = sz_matrix(s);
  SparseMatrix sp = splus_matrix(s);
  sp *= 0.5;
  const SparseMatrix sm = sminus_matrix(s);

  SparseMatrix bond = kron(sz, sz);
  bond += kron(sp, sm);
  bond += kron(sm, sp);
  bond.compact();
  return bond;
}

}  // namespace spinchain
