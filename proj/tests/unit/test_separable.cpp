#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/chain.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/separable.hpp"

namespace sc = spinchain;
using Complex = std::complex<double>;

namespace {

sc::ChainSpec make(int twice, int sites, double j = 1.0, bool periodic = true) {
  sc::ChainSpec spec;
  spec.spin = sc::SpinValue::from_twice(twice);
  spec.sites = sites;
  spec.coupling = j;
  spec.periodic = periodic;
  return spec;
}

// Product-state minimum of the ring: -JLs^2 for even L, and the planar spiral
// value -JLs^2 cos(pi/L) for odd L (mean spins of length s at the classical
// optimum).
double ring_minimum(const sc::ChainSpec& spec) {
  const double s = spec.spin.value();
  const double base = -spec.coupling * spec.sites * s * s;
  if (spec.sites % 2 == 0) return base;
  return base * std::cos(M_PI / spec.sites);
}

sc::ProductState random_product(const sc::ChainSpec& spec, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  sc::ProductState state;
  for (int i = 0; i < spec.sites; ++i) {
    Eigen::VectorXcd f(spec.spin.dimension());
    for (long k = 0; k < f.size(); ++k) f[k] = Complex(gauss(rng), gauss(rng));
    f.normalize();
    state.factors.push_back(f);
  }
  return state;
}

Eigen::VectorXcd full_vector(const sc::ProductState& state) {
  Eigen::VectorXcd v = state.factors.front();
  for (std::size_t k = 1; k < state.factors.size(); ++k) {
    Eigen::VectorXcd next(v.size() * state.factors[k].size());
    for (long a = 0; a < v.size(); ++a) {
      for (long b = 0; b < state.factors[k].size(); ++b) {
        next[a * state.factors[k].size() + b] = v[a] * state.factors[k][b];
      }
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace

TEST_CASE("product energy equals the dense expectation value") {
  for (const auto& spec : {make(2, 3), make(1, 4), make(1, 4, 0.7, false), make(3, 2)}) {
    CAPTURE(spec.key());
    const Eigen::MatrixXcd h = sc::build_hamiltonian(spec).dense().cast<Complex>();
    for (unsigned seed : {7u, 8u, 9u}) {
      const sc::ProductState state = random_product(spec, seed);
      const Eigen::VectorXcd v = full_vector(state);
      const double dense = (v.adjoint() * h * v)(0).real();
      CHECK(sc::product_energy(spec, state) == doctest::Approx(dense).epsilon(1e-10));
    }
  }
}

TEST_CASE("mean spin of the highest-weight state points along +z with length s") {
  for (int twice = 1; twice <= 5; ++twice) {
    const sc::SpinValue s = sc::SpinValue::from_twice(twice);
    Eigen::VectorXcd top = Eigen::VectorXcd::Zero(s.dimension());
    top[0] = 1.0;
    const Eigen::Vector3d m = sc::mean_spin(s, top);
    CHECK(m[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(m[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(m[2] == doctest::Approx(s.value()).epsilon(1e-14));
  }
}

TEST_CASE("closed-form separable minimum on even rings, refusals elsewhere") {
  CHECK(sc::e_min_closed_form(make(1, 2)) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(sc::e_min_closed_form(make(2, 2)) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(sc::e_min_closed_form(make(1, 10)) == doctest::Approx(-2.5).epsilon(1e-15));
  CHECK(sc::e_min_closed_form(make(3, 4, 2.0)) == doctest::Approx(-18.0).epsilon(1e-15));
  CHECK_THROWS_AS(sc::e_min_closed_form(make(1, 3)), sc::InvalidSpec);
  CHECK_THROWS_AS(sc::e_min_closed_form(make(1, 4, 1.0, false)), sc::InvalidSpec);
}

TEST_CASE("the coefficient-recursion pair reaches correlation -s^2 for every spin") {
  for (int twice = 1; twice <= 5; ++twice) {
    CAPTURE(twice);
    const sc::SpinValue s = sc::SpinValue::from_twice(twice);
    const sc::PairState pair = sc::eq3_pair_state(s);
    CHECK(pair.literal_ok);
    CHECK(pair.note.empty());
    CHECK(pair.site_a.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.site_b.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double corr =
        sc::mean_spin(s, pair.site_a).dot(sc::mean_spin(s, pair.site_b));
    CHECK(corr == doctest::Approx(-s.value() * s.value()).epsilon(1e-10));
  }
}

TEST_CASE("the spin-1/2 pair is (|0> + |1>, |0> - |1>) up to normalization") {
  const sc::PairState pair = sc::eq3_pair_state(sc::SpinValue::from_twice(1));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(pair.site_a[0] - r) < 1e-12);
  CHECK(std::abs(pair.site_a[1] - r) < 1e-12);
  CHECK(std::abs(pair.site_b[0] - r) < 1e-12);
  CHECK(std::abs(pair.site_b[1] + r) < 1e-12);
}

TEST_CASE("the spin-1 pair carries amplitudes (1/2, sqrt2/2, 1/2) with alternating signs") {
  const sc::PairState pair = sc::eq3_pair_state(sc::SpinValue::from_twice(2));
  const double mid = std::sqrt(2.0) / 2.0;
  CHECK(std::abs(pair.site_a[0] - 0.5) < 1e-12);
  CHECK(std::abs(pair.site_a[1] - mid) < 1e-12);
  CHECK(std::abs(pair.site_a[2] - 0.5) < 1e-12);
  CHECK(std::abs(pair.site_b[0] - 0.5) < 1e-12);
  CHECK(std::abs(pair.site_b[1] + mid) < 1e-12);
  CHECK(std::abs(pair.site_b[2] - 0.5) < 1e-12);
}

TEST_CASE("rotated highest-weight pairs agree with the recursion construction") {
  for (int twice = 1; twice <= 5; ++twice) {
    CAPTURE(twice);
    const sc::SpinValue s = sc::SpinValue::from_twice(twice);
    const sc::PairState coherent = sc::coherent_pair_state(s);
    const sc::PairState recursion = sc::eq3_pair_state(s);
    const double corr =
        sc::mean_spin(s, coherent.site_a).dot(sc::mean_spin(s, coherent.site_b));
    CHECK(corr == doctest::Approx(-s.value() * s.value()).epsilon(1e-10));
    // same physical states: unit overlap magnitude
    CHECK(std::abs((coherent.site_a.adjoint() * recursion.site_a)(0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs((coherent.site_b.adjoint() * recursion.site_b)(0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("the alternating ring state attains the closed-form minimum") {
  for (const auto& spec : {make(1, 2), make(2, 2), make(1, 4), make(2, 6), make(3, 4)}) {
    CAPTURE(spec.key());
    const sc::ProductState state = sc::neel_product_state(spec);
    REQUIRE(state.sites() == spec.sites);
    CHECK(sc::product_energy(spec, state) ==
          doctest::Approx(sc::e_min_closed_form(spec)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(sc::neel_product_state(make(1, 3)), sc::InvalidSpec);
  CHECK_THROWS_AS(sc::neel_product_state(make(1, 4, 1.0, false)), sc::InvalidSpec);
}

TEST_CASE("the numeric minimizer reproduces the even-ring closed form") {
  for (int twice : {1, 2, 3}) {
    for (int sites : {2, 4, 6}) {
      CAPTURE(twice);
      CAPTURE(sites);
      const sc::ChainSpec spec = make(twice, sites);
      const sc::SeparableBound bound = sc::numeric_min_product_energy(spec);
      CHECK(bound.method == sc::SeparableMethod::kNumericMinimizer);
      CHECK(bound.converged);
      CHECK(bound.e_min == doctest::Approx(sc::e_min_closed_form(spec)).epsilon(1e-6));
      CHECK(sc::product_energy(spec, bound.achieving_state) ==
            doctest::Approx(bound.e_min).epsilon(1e-12));
    }
  }
}

TEST_CASE("odd rings frustrate the minimizer into the planar spiral value") {
  CHECK(sc::numeric_min_product_energy(make(1, 3)).e_min ==
        doctest::Approx(-0.375).epsilon(1e-9));
  CHECK(sc::numeric_min_product_energy(make(1, 5)).e_min ==
        doctest::Approx(-1.0112712429686843).epsilon(1e-7));
  CHECK(sc::numeric_min_product_energy(make(1, 7)).e_min ==
        doctest::Approx(-1.5766955188292334).epsilon(1e-7));
  // the same numbers in closed form: -JLs^2 cos(pi/L)
  CHECK(ring_minimum(make(1, 5)) == doctest::Approx(-1.0112712429686843).epsilon(1e-10));
  CHECK(sc::numeric_min_product_energy(make(2, 3)).e_min ==
        doctest::Approx(ring_minimum(make(2, 3))).epsilon(1e-6));
}

TEST_CASE("open chains lose one bond worth of energy") {
  CHECK(sc::numeric_min_product_energy(make(1, 3, 1.0, false)).e_min ==
        doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(sc::numeric_min_product_energy(make(1, 4, 1.0, false)).e_min ==
        doctest::Approx(-0.75).epsilon(1e-6));
  CHECK(sc::numeric_min_product_energy(make(2, 4, 1.0, false)).e_min ==
        doctest::Approx(-3.0).epsilon(1e-6));
}

TEST_CASE("coordinate descent never raises the energy along its sweep trace") {
  const sc::SeparableBound bound = sc::numeric_min_product_energy(make(2, 5), 4);
  REQUIRE_FALSE(bound.sweep_energies.empty());
  CHECK(bound.sweeps <= 500);
  for (std::size_t k = 1; k < bound.sweep_energies.size(); ++k) {
    CHECK(bound.sweep_energies[k] <= bound.sweep_energies[k - 1] + 1e-12);
  }
  CHECK(bound.sweep_energies.back() == bound.e_min);
}

TEST_CASE("the minimizer is deterministic in the seed and seed-robust in the value") {
  const sc::ChainSpec spec = make(1, 5);
  const sc::SeparableBound a = sc::numeric_min_product_energy(spec, 8, 1e-10, 42);
  const sc::SeparableBound b = sc::numeric_min_product_energy(spec, 8, 1e-10, 42);
  CHECK(a.e_min == b.e_min);  // bitwise
  const sc::SeparableBound c = sc::numeric_min_product_energy(spec, 8, 1e-10, 1234);
  CHECK(c.e_min == doctest::Approx(a.e_min).epsilon(1e-8));
}

TEST_CASE("the dispatch picks the closed form exactly when it applies") {
  const sc::SeparableBound even = sc::minimum_separable_energy(make(2, 4));
  CHECK(even.method == sc::SeparableMethod::kClosedForm);
  CHECK(even.e_min == -4.0);
  CHECK(sc::product_energy(make(2, 4), even.achieving_state) ==
        doctest::Approx(-4.0).epsilon(1e-10));

  const sc::SeparableBound odd = sc::minimum_separable_energy(make(1, 3));
  CHECK(odd.method == sc::SeparableMethod::kNumericMinimizer);
  CHECK(odd.e_min == doctest::Approx(-0.375).epsilon(1e-9));

  const sc::SeparableBound open = sc::minimum_separable_energy(make(1, 4, 1.0, false));
  CHECK(open.method == sc::SeparableMethod::kNumericMinimizer);
  CHECK(open.e_min == doctest::Approx(-0.75).epsilon(1e-6));
}

TEST_CASE("method names are stable strings") {
  CHECK(sc::to_string(sc::SeparableMethod::kClosedForm) == "closed-form");
  CHECK(sc::to_string(sc::SeparableMethod::kEq3Construction) == "eq3-construction");
  CHECK(sc::to_string(sc::SeparableMethod::kNumericMinimizer) == "numeric-minimizer");
}
