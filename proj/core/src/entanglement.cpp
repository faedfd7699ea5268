#include "spinchain/entanglement.hpp"

#include <cmath>
#include <limits>

#include "spinchain/errors.hpp"

namespace spinchain {

WitnessReport witness(double energy_mean, double e_min) {
  return witness(std::numeric_limits<double>::quiet_NaN(), energy_mean, e_min);
}

WitnessReport witness(double temperature, double energy_mean, double e_min) {
  WitnessReport report;
  report.temperature = temperature;
  report.energy_mean = energy_mean;
  report.e_min = e_min;
  report.witness = energy_mean - e_min;
  report.entangled_by_witness = report.witness < 0.0;
  return report;
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, Subsystem which) {
  if (rho.dims.size() != 2) {
    throw InvalidSpec("partial transpose needs exactly two subsystem dimensions, got " +
                      std::to_string(rho.dims.size()));
  }
  const long da = rho.dims[0];
  const long db = rho.dims[1];
  if (da * db != rho.dimension()) {
    throw InvalidSpec("subsystem dimensions do not factor the density matrix dimension");
  }

  Eigen::MatrixXcd out(rho.dimension(), rho.dimension());
  for (long a = 0; a < da; ++a) {
    for (long b = 0; b < db; ++b) {
      for (long ap = 0; ap < da; ++ap) {
        for (long bp = 0; bp < db; ++bp) {
          const long row = a * db + b;
          const long col = ap * db + bp;
          const long src_row = which == Subsystem::kA ? ap * db + b : a * db + bp;
          const long src_col = which == Subsystem::kA ? a * db + bp : ap * db + b;
          out(row, col) = rho.entries(src_row, src_col);
        }
      }
    }
  }
  return out;
}

NegativityReport negativity(const DensityMatrix& rho, double tol) {
  if (!(tol > 0.0)) throw InvalidSpec("negativity tolerance must be positive");
  const Eigen::MatrixXcd pt = partial_transpose(rho, Subsystem::kA);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigensolverFailure("partial-transpose eigendecomposition did not converge");
  }

  NegativityReport report;
  report.tolerance_used = tol;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double mu = solver.eigenvalues()[i];
    if (mu < -tol) {
      report.negative_eigenvalues.push_back(mu);
      sum += mu;
    }
  }
  report.negativity = std::abs(sum);
  return report;
}

bool su2_criterion_spin_half(double correlation) { return correlation < -0.25; }

bool su2_criterion_spin_one(double squared_correlation) { return squared_correlation > 2.0; }

double negativity_from_witness_spin1(double w, double variance, double j) {
  if (!(j > 0.0)) throw InvalidSpec("coupling J must be positive");
  const double shifted = w - 2.0 * j;
  return (shifted * shifted + variance) / (8.0 * j * j) - 1.0;
}

}  // namespace spinchain
