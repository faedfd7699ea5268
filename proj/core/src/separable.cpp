#include "spinchain/separable.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <utility>

#include "spinchain/errors.hpp"
#include "spinchain/spin_ops.hpp"

namespace spinchain {

namespace {

using Complex = std::complex<double>;

constexpr int kMaxSweeps = 500;

// Dense single-site operators, small (d <= 2s+1) and rebuilt on demand.
struct SiteOps {
  Eigen::MatrixXcd sx;
  Eigen::MatrixXcd sy;
  Eigen::MatrixXcd sz;
};

SiteOps site_ops(const SpinValue& s) {
  SiteOps ops;
  ops.sx = sx_matrix(s).dense().cast<Complex>();
  ops.sy = sy_matrix(s);
  ops.sz = sz_matrix(s).dense().cast<Complex>();
  return ops;
}

Eigen::Vector3d mean_spin_with(const SiteOps& ops, const Eigen::VectorXcd& factor) {
  Eigen::Vector3d v;
  v[0] = (factor.adjoint() * ops.sx * factor).value().real();
  v[1] = (factor.adjoint() * ops.sy * factor).value().real();
  v[2] = (factor.adjoint() * ops.sz * factor).value().real();
  return v;
}

double dots_energy(const ChainSpec& spec, const std::vector<Eigen::Vector3d>& spins) {
  double e = 0.0;
  for (const auto& [i, j] : spec.bonds()) {
    e += spins[static_cast<std::size_t>(i)].dot(spins[static_cast<std::size_t>(j)]);
  }
  return spec.coupling * e;
}

void check_product_state(const ChainSpec& spec, const ProductState& state) {
  if (state.sites() != spec.sites) {
    throw InvalidSpec("product state has " + std::to_string(state.sites()) +
                      " factors, chain has " + std::to_string(spec.sites) + " sites");
  }
  const long d = spec.spin.dimension();
  for (const auto& f : state.factors) {
    if (f.size() != d) throw InvalidSpec("product state factor dimension mismatch");
    if (std::abs(f.norm() - 1.0) > 1e-12) {
      throw InvalidSpec("product state factor is not normalized");
    }
  }
}

double pair_correlation(const SpinValue& s, const Eigen::VectorXcd& a,
                        const Eigen::VectorXcd& b) {
  const SiteOps ops = site_ops(s);
  return mean_spin_with(ops, a).dot(mean_spin_with(ops, b));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Eigen::Vector3d mean_spin(const SpinValue& s, const Eigen::VectorXcd& factor) {
  return mean_spin_with(site_ops(s), factor);
}

double product_energy(const ChainSpec& spec, const ProductState& state) {
  check_product_state(spec, state);
  const SiteOps ops = site_ops(spec.spin);
  std::vector<Eigen::Vector3d> spins;
  spins.reserve(state.factors.size());
  for (const auto& f : state.factors) spins.push_back(mean_spin_with(ops, f));
  return dots_energy(spec, spins);
}

std::string to_string(SeparableMethod m) {
  switch (m) {
    case SeparableMethod::kClosedForm: return "closed-form";
    case SeparableMethod::kEq3Construction: return "eq3-construction";
    case SeparableMethod::kNumericMinimizer: return "numeric-minimizer";
  }
  return "unknown";
}

double e_min_closed_form(const ChainSpec& spec) {
  spec.validate();
  if (!spec.periodic) {
    throw InvalidSpec("closed-form separable minimum covers periodic chains only; "
                      "use the numeric minimizer for open chains");
  }
  if (spec.sites % 2 != 0) {
    throw InvalidSpec("closed-form separable minimum needs an even ring (the alternating "
                      "pattern cannot close an odd one); use the numeric minimizer");
  }
  const double s = spec.spin.value();
  return -spec.coupling * spec.sites * s * s;
}

PairState coherent_pair_state(const SpinValue& s) {
  const long d = s.dimension();
  const Eigen::MatrixXcd sy = sy_matrix(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sy);
  if (solver.info() != Eigen::Success) throw EigensolverFailure("Sy eigendecomposition failed");
  const Eigen::MatrixXcd u = solver.eigenvectors();
  const Eigen::VectorXd lam = solver.eigenvalues();

  // exp(-i theta Sy) applied to |m=s>, the k=0 basis vector; the operator is
  // real orthogonal because -i*Sy is real, so the imaginary parts below are
  // pure roundoff and are dropped.
  const auto rotate_highest = [&](double theta) {
    Eigen::VectorXcd phases(d);
    for (long k = 0; k < d; ++k) phases[k] = std::exp(Complex(0.0, -theta * lam[k]));
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(d);
    e0[0] = 1.0;
    const Eigen::VectorXcd rotated = u * phases.asDiagonal() * u.adjoint() * e0;
    return Eigen::VectorXcd(rotated.real().cast<Complex>());
  };

  PairState pair;
  pair.site_a = rotate_highest(M_PI / 2.0);   // mean spin +s along x
  pair.site_b = rotate_highest(-M_PI / 2.0);  // mean spin -s along x
  pair.site_a.normalize();
  pair.site_b.normalize();
  pair.literal_ok = true;
  return pair;
}

PairState eq3_pair_state(const SpinValue& s) {
  const int twice = s.twice();
  const long d = s.dimension();
  const double sv = s.value();

  // C_0 = 1; C_{m+1} = (2s-m)/(m+1) C_m, with the integer-spin top
  // coefficient replaced by C_s = (s+1)/(4s) C_{s-1}.
  const int m_top = s.integer_spin() ? twice / 2 : (twice - 1) / 2;
  std::vector<double> c(static_cast<std::size_t>(m_top) + 1, 1.0);
  for (int m = 0; m + 1 <= m_top; ++m) {
    const bool top_is_special = s.integer_spin() && (m + 1 == m_top);
    if (top_is_special) {
      c[static_cast<std::size_t>(m + 1)] =
          (sv + 1.0) / (4.0 * sv) * c[static_cast<std::size_t>(m)];
    } else {
      c[static_cast<std::size_t>(m + 1)] =
          (2.0 * sv - m) / (m + 1.0) * c[static_cast<std::size_t>(m)];
    }
  }

  // Site A amplitudes sqrt(C_m) on |s-m> and |m-s>; site B carries (-1)^m and
  // a relative sign between the two kets for half-integer spin. Basis index of
  // |s-m> is m, of |m-s> is 2s-m; for integer spin at m=s both land on |0>.
  Eigen::VectorXd amp_a = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd amp_b = Eigen::VectorXd::Zero(d);
  const double mirror_sign = s.integer_spin() ? 1.0 : -1.0;
  for (int m = 0; m <= m_top; ++m) {
    const double root = std::sqrt(c[static_cast<std::size_t>(m)]);
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    amp_a[m] += root;
    amp_a[twice - m] += root;
    amp_b[m] += parity * root;
    amp_b[twice - m] += mirror_sign * parity * root;
  }

  PairState pair;
  pair.site_a = (amp_a / amp_a.norm()).cast<Complex>();
  pair.site_b = (amp_b / amp_b.norm()).cast<Complex>();

  const double target = -sv * sv;
  const double achieved = pair_correlation(s, pair.site_a, pair.site_b);
  if (std::abs(achieved - target) <= 1e-10) {
    pair.literal_ok = true;
    return pair;
  }

  PairState fallback = coherent_pair_state(s);
  fallback.literal_ok = false;
  fallback.note = "coefficient-recursion state reached correlation " + fmt(achieved) +
                  " instead of " + fmt(target) + " at s = " + s.str() +
                  "; using the coherent-state construction";
  return fallback;
}

ProductState neel_product_state(const ChainSpec& spec) {
  spec.validate();
  if (!spec.periodic || spec.sites % 2 != 0) {
    throw InvalidSpec("the alternating pair pattern needs an even periodic ring; "
                      "use the numeric minimizer for open chains or odd rings");
  }
  const PairState pair = eq3_pair_state(spec.spin);
  ProductState state;
  state.factors.reserve(static_cast<std::size_t>(spec.sites));
  for (int i = 0; i < spec.sites; ++i) {
    state.factors.push_back(i % 2 == 0 ? pair.site_a : pair.site_b);
  }
  return state;
}

SeparableBound numeric_min_product_energy(const ChainSpec& spec, int restarts, double tol,
                                          std::uint64_t seed, const Budget& budget) {
  spec.validate(budget);
  if (restarts < 1) throw InvalidSpec("restarts must be at least 1");
  if (!(tol > 0.0)) throw InvalidSpec("tolerance must be positive");

  const long d = spec.spin.dimension();
  const SiteOps ops = site_ops(spec.spin);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // neighbor list with multiplicity, so the doubled L=2 bond counts twice
  std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(spec.sites));
  for (const auto& [i, j] : spec.bonds()) {
    neighbors[static_cast<std::size_t>(i)].push_back(j);
    neighbors[static_cast<std::size_t>(j)].push_back(i);
  }

  SeparableBound best;
  best.method = SeparableMethod::kNumericMinimizer;
  best.e_min = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    ProductState state;
    state.factors.resize(static_cast<std::size_t>(spec.sites));
    for (auto& f : state.factors) {
      f.resize(d);
      for (long k = 0; k < d; ++k) f[k] = Complex(gauss(rng), gauss(rng));
      f.normalize();
    }
    std::vector<Eigen::Vector3d> spins(static_cast<std::size_t>(spec.sites));
    for (int i = 0; i < spec.sites; ++i) {
      spins[static_cast<std::size_t>(i)] = mean_spin_with(ops, state.factors[static_cast<std::size_t>(i)]);
    }

    double energy = dots_energy(spec, spins);
    std::vector<double> trace;
    bool converged = false;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      for (int i = 0; i < spec.sites; ++i) {
        Eigen::Vector3d field = Eigen::Vector3d::Zero();
        for (const int j : neighbors[static_cast<std::size_t>(i)]) {
          field += spins[static_cast<std::size_t>(j)];
        }
        field *= spec.coupling;
        if (field.norm() == 0.0) continue;  // any factor is optimal, keep current
        const Eigen::MatrixXcd mf = field[0] * ops.sx + field[1] * ops.sy + field[2] * ops.sz;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mf);
        if (solver.info() != Eigen::Success) {
          throw EigensolverFailure("mean-field site update failed to converge");
        }
        state.factors[static_cast<std::size_t>(i)] = solver.eigenvectors().col(0);
        spins[static_cast<std::size_t>(i)] =
            mean_spin_with(ops, state.factors[static_cast<std::size_t>(i)]);
      }
      const double next = dots_energy(spec, spins);
      trace.push_back(next);
      if (std::abs(energy - next) <= tol * std::max(1.0, std::abs(next))) {
        energy = next;
        converged = true;
        ++sweep;
        break;
      }
      energy = next;
    }

    if (energy < best.e_min) {
      best.e_min = energy;
      best.achieving_state = std::move(state);
      best.converged = converged;
      best.sweeps = sweep;
      best.sweep_energies = std::move(trace);
    }
  }
  return best;
}

SeparableBound minimum_separable_energy(const ChainSpec& spec, int restarts, double tol,
                                        std::uint64_t seed, const Budget& budget) {
  spec.validate(budget);
  if (spec.periodic && spec.sites % 2 == 0) {
    SeparableBound bound;
    bound.e_min = e_min_closed_form(spec);
    bound.achieving_state = neel_product_state(spec);
    bound.method = SeparableMethod::kClosedForm;
    return bound;
  }
  return numeric_min_product_energy(spec, restarts, tol, seed, budget);
}

}  // namespace spinchain
