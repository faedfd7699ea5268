#include "spinchain/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinchain/errors.hpp"
#include "spinchain/spin_ops.hpp"

namespace spinchain {

namespace {

constexpr double kWeightCutoff = 1e-16;

void require_positive_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidSpec("temperature must be a positive finite number, got " +
                      std::to_string(t));
  }
}

double shifted_weight(double energy, double ground, double t) {
  return std::exp(-(energy - ground) / t);
}

// Decomposition of a product-basis index into (bond pair row, rest index)
// for the two sites (a, b) of one bond.
struct BondSplit {
  std::vector<long> pair_row;  // digit_a * d + digit_b
  std::vector<long> rest;      // remaining digits mixed in site order
  long rest_dim;
};

BondSplit bond_split(const ChainSpec& spec, long dim, int site_a, int site_b) {
  const long d = spec.spin.dimension();
  BondSplit out;
  out.pair_row.resize(static_cast<std::size_t>(dim));
  out.rest.resize(static_cast<std::size_t>(dim));
  out.rest_dim = 1;
  for (int s = 0; s < spec.sites - 2; ++s) out.rest_dim *= d;
  for (long n = 0; n < dim; ++n) {
    long rest_key = 0;
    long digit_a = 0;
    long digit_b = 0;
    long value = n;
    // site 0 is the most significant digit
    std::vector<long> digits(static_cast<std::size_t>(spec.sites));
    for (int s = spec.sites - 1; s >= 0; --s) {
      digits[static_cast<std::size_t>(s)] = value % d;
      value /= d;
    }
    for (int s = 0; s < spec.sites; ++s) {
      if (s == site_a) {
        digit_a = digits[static_cast<std::size_t>(s)];
      } else if (s == site_b) {
        digit_b = digits[static_cast<std::size_t>(s)];
      } else {
        rest_key = rest_key * d + digits[static_cast<std::size_t>(s)];
      }
    }
    out.pair_row[static_cast<std::size_t>(n)] = digit_a * d + digit_b;
    out.rest[static_cast<std::size_t>(n)] = rest_key;
  }
  return out;
}

}  // namespace

ThermalObservables observables(const std::vector<double>& eigenvalues, double temperature) {
  require_positive_temperature(temperature);
  if (eigenvalues.empty()) throw InvalidSpec("spectrum is empty");
  const double ground = *std::min_element(eigenvalues.begin(), eigenvalues.end());

  double z = 0.0;
  double sum_e = 0.0;
  double sum_e2 = 0.0;
  for (const double e : eigenvalues) {
    const double w = shifted_weight(e, ground, temperature);
    z += w;
    sum_e += w * e;
    sum_e2 += w * e * e;
  }

  ThermalObservables obs;
  obs.temperature = temperature;
  obs.energy_mean = sum_e / z;
  obs.energy_sq_mean = sum_e2 / z;
  obs.variance = obs.energy_sq_mean - obs.energy_mean * obs.energy_mean;
  if (obs.variance < 0.0 && obs.variance > -1e-9) obs.variance = 0.0;
  obs.log_z_shifted = std::log(z);
  return obs;
}

ThermalObservables observables(const SpectralData& sd, double temperature) {
  return observables(sd.eigenvalues, temperature);
}

void DensityMatrix::validate() const {
  long product = 1;
  for (const long d : dims) {
    if (d < 1) throw InvalidSpec("density matrix dims must be positive");
    product *= d;
  }
  if (entries.rows() != entries.cols() || product != entries.rows()) {
    throw InvalidSpec("density matrix dims do not factor its dimension");
  }
  const double trace_err = std::abs(entries.trace() - std::complex<double>(1.0, 0.0));
  if (trace_err > 1e-10) {
    throw InvalidSpec("density matrix trace deviates from 1 by " + std::to_string(trace_err));
  }
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) {
    throw InvalidSpec("density matrix Hermiticity residual " + std::to_string(herm));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw InvalidSpec("density matrix has an eigenvalue below -1e-9");
  }
}

DensityMatrix thermal_state(const SpectralData& sd, double temperature,
                            const Budget& budget) {
  require_positive_temperature(temperature);
  if (!sd.has_vectors()) {
    throw InvalidSpec("thermal_state needs eigenvectors; rerun diagonalize with vectors");
  }
  const long dim = sd.spec.dimension(budget);
  if (dim > budget.max_state_dimension) {
    throw InstanceTooLarge("dense thermal state at dimension " + std::to_string(dim) +
                           " exceeds the state budget " +
                           std::to_string(budget.max_state_dimension));
  }
  const double ground = sd.eigenvalues.front();
  double z = 0.0;
  for (const double e : sd.eigenvalues) z += shifted_weight(e, ground, temperature);

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd full(dim);
  for (const SectorVectors& sec : sd.sectors) {
    const long n = static_cast<long>(sec.basis.size());
    for (long i = 0; i < n; ++i) {
      const double w = shifted_weight(sec.values[i], ground, temperature);
      if (w < kWeightCutoff) continue;
      full.setZero();
      for (long p = 0; p < n; ++p) full[sec.basis[static_cast<std::size_t>(p)]] = sec.vectors(p, i);
      rho.noalias() += (w / z) * full * full.transpose();
    }
  }

  DensityMatrix out;
  out.entries = rho.cast<std::complex<double>>();
  out.dims.assign(static_cast<std::size_t>(sd.spec.sites), sd.spec.spin.dimension());
  return out;
}

DensityMatrix nn_reduced_density(const SpectralData& sd, double temperature, int site,
                                 const Budget& budget) {
  require_positive_temperature(temperature);
  if (!sd.has_vectors()) {
    throw InvalidSpec("nn_reduced_density needs eigenvectors; rerun diagonalize with vectors");
  }
  const ChainSpec& spec = sd.spec;
  const int last_valid = spec.periodic ? spec.sites - 1 : spec.sites - 2;
  if (site < 0 || site > last_valid) {
    throw InvalidSpec("bond site " + std::to_string(site) + " out of range for L = " +
                      std::to_string(spec.sites));
  }
  const int neighbor = (site + 1) % spec.sites;
  const long dim = spec.dimension(budget);
  const long d = spec.spin.dimension();
  const BondSplit split = bond_split(spec, dim, site, neighbor);

  const double ground = sd.eigenvalues.front();
  double z = 0.0;
  for (const double e : sd.eigenvalues) z += shifted_weight(e, ground, temperature);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d * d, d * d);
  Eigen::MatrixXd slice(d * d, split.rest_dim);
  for (const SectorVectors& sec : sd.sectors) {
    const long n = static_cast<long>(sec.basis.size());
    for (long i = 0; i < n; ++i) {
      const double w = shifted_weight(sec.values[i], ground, temperature);
      if (w < kWeightCutoff) continue;
      slice.setZero();
      for (long p = 0; p < n; ++p) {
        const long full_index = sec.basis[static_cast<std::size_t>(p)];
        slice(split.pair_row[static_cast<std::size_t>(full_index)],
              split.rest[static_cast<std::size_t>(full_index)]) = sec.vectors(p, i);
      }
      acc.noalias() += (w / z) * slice * slice.transpose();
    }
  }

  DensityMatrix out;
  out.entries = acc.cast<std::complex<double>>();
  out.dims = {d, d};
  return out;
}

double bond_correlation(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[0] != rho.dims[1]) {
    throw InvalidSpec("bond correlation needs a two-site state with equal local dimensions");
  }
  const SpinValue s = SpinValue::from_twice(static_cast<int>(rho.dims[0]) - 1);
  const Eigen::MatrixXd bond = heisenberg_bond(s).dense();
  return (rho.entries * bond.cast<std::complex<double>>()).trace().real();
}

double bond_correlation_squared(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[0] != rho.dims[1]) {
    throw InvalidSpec("bond correlation needs a two-site state with equal local dimensions");
  }
  const SpinValue s = SpinValue::from_twice(static_cast<int>(rho.dims[0]) - 1);
  const Eigen::MatrixXd bond = heisenberg_bond(s).dense();
  const Eigen::MatrixXd bond2 = bond * bond;
  return (rho.entries * bond2.cast<std::complex<double>>()).trace().real();
}

}  // namespace spinchain
