#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinchain/separable.hpp"
#include "spinchain/spectra.hpp"

namespace spinchain {

// Where <H>(T) crosses the separable minimum; thermal entanglement is
// certified below t_c.
struct TcResult {
  ChainSpec spec;
  double t_c;
  double bracket_lo;  // f < 0 end of the expanded initial bracket
  double bracket_hi;  // f > 0 end
  int iterations;
  double residual;    // |<H>(t_c) - e_min|
  double e_min;
  SeparableMethod e_min_method;
};

// Bisection on f(T) = <H>(T) - e_min, eigenvalues only. Initial bracket
// [1e-3, 1]; the upper end doubles until f > 0 (at most 60 times), the lower
// end halves if needed. f is continuous and nondecreasing, so the crossing is
// unique. Stops at |f| < tol * max(1, |e_min|).
TcResult characteristic_temperature(const SpectralData& sd, double e_min,
                                    SeparableMethod e_min_method, double tol = 1e-8);

// Convenience: diagonalizes, then resolves e_min through
// minimum_separable_energy (closed form on even periodic rings, numeric
// minimizer elsewhere).
TcResult characteristic_temperature(const ChainSpec& spec, double tol = 1e-8,
                                    const Budget& budget = {}, int restarts = 16,
                                    std::uint64_t seed = 12345);

// First temperature where the two-site thermal state's negativity falls
// below tol; L = 2 only. Lies above the witness temperature for s >= 1.
double negativity_vanishing_temperature(const ChainSpec& spec, double tol = 1e-8,
                                        const Budget& budget = {});

// T_c against s at L = 2, with a least-squares line as a diagnostic (the
// trend is near-linear; residuals are reported, never asserted).
struct SpinScanRow {
  SpinValue spin{SpinValue::from_twice(1)};
  double t_c;
  int iterations;
  double residual;
};

struct SpinScanTable {
  std::vector<SpinScanRow> rows;  // ascending in s
  double fit_slope;
  double fit_intercept;
  double fit_max_residual;
};

SpinScanTable tc_vs_spin(const std::vector<SpinValue>& spins, double coupling,
                         double tol = 1e-8, const Budget& budget = {});

// T_c against chain length at fixed s. Rows the budget refuses are marked
// skipped and the scan continues. Odd rings fall back to the numeric
// separable minimum; their note names the method.
struct LengthScanRow {
  int sites;
  double t_c;        // NaN when skipped
  double e_min;      // NaN when skipped
  std::string e_min_method;
  bool skipped;
  std::string note;
};

struct LengthScanTable {
  std::vector<LengthScanRow> rows;  // ascending in L
  bool monotone_decreasing;         // over computed rows, strict
};

LengthScanTable tc_vs_length(const SpinValue& spin, const std::vector<int>& sites_list,
                             double coupling, double tol = 1e-8, const Budget& budget = {},
                             int restarts = 16, std::uint64_t seed = 12345);

// Largest even L whose Hilbert dimension fits the budget, capped at 12.
int default_max_even_sites(const SpinValue& spin, const Budget& budget = {});

// Negativity minus |W| over a (T, J) grid at L = 2, W clamped to 0 for
// T >= T_c(J). The W = 0 locus is the curve T = T_c(J).
struct DeltaCell {
  double temperature;
  double coupling;
  double negativity;
  double witness_clamped;
  double delta;
};

struct DeltaTable {
  std::vector<double> t_grid;          // ascending
  std::vector<double> j_grid;          // ascending
  std::vector<double> tc_by_coupling;  // parallel to j_grid
  std::vector<DeltaCell> cells;        // J outer, T inner
};

DeltaTable delta_map(const SpinValue& spin, const std::vector<double>& t_grid,
                     const std::vector<double>& j_grid, double tol = 1e-8,
                     const Budget& budget = {});

// n evenly spaced points from a to b inclusive; n = 1 gives {a}.
std::vector<double> linspace(double a, double b, int n);

inline constexpr double kDefaultMapTMin = 0.1;
inline constexpr double kDefaultMapTMax = 4.0;
inline constexpr double kDefaultMapJMin = 0.1;
inline constexpr double kDefaultMapJMax = 2.0;
inline constexpr int kDefaultMapPoints = 64;

}  // namespace spinchain
