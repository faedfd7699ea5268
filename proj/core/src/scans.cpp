#include "spinchain/scans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinchain/entanglement.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/thermal.hpp"

namespace spinchain {

namespace {

constexpr int kMaxExpansions = 60;
constexpr int kMaxBisections = 200;

double mean_energy(const std::vector<double>& eigenvalues, double t) {
  return observables(eigenvalues, t).energy_mean;
}

void check_sorted_unique(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw InvalidSpec(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw InvalidSpec(std::string(name) + " grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidSpec(std::string(name) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

TcResult characteristic_temperature(const SpectralData& sd, double e_min,
                                    SeparableMethod e_min_method, double tol) {
  if (!(tol > 0.0)) throw InvalidSpec("tolerance must be positive");
  const double ground = ground_energy(sd);
  if (!(ground < e_min)) {
    throw NoCrossing("entanglement gap is not positive (E_0 = " + std::to_string(ground) +
                     ", E_min = " + std::to_string(e_min) + "); <H> never crosses E_min");
  }

  const auto f = [&](double t) { return mean_energy(sd.eigenvalues, t) - e_min; };

  double lo = 1e-3;
  double hi = 1.0;
  int expansions = 0;
  while (f(lo) >= 0.0) {
    lo *= 0.5;
    if (++expansions > kMaxExpansions) {
      throw NoCrossing("no temperature with <H> below E_min found while shrinking the bracket");
    }
  }
  expansions = 0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (++expansions > kMaxExpansions) {
      throw NoCrossing("<H> never exceeds E_min while expanding the bracket");
    }
  }

  TcResult result;
  result.spec = sd.spec;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.e_min = e_min;
  result.e_min_method = e_min_method;

  const double stop = tol * std::max(1.0, std::abs(e_min));
  double mid = 0.5 * (lo + hi);
  double fmid = f(mid);
  int iterations = 0;
  while (std::abs(fmid) >= stop && iterations < kMaxBisections) {
    if (fmid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    fmid = f(mid);
    ++iterations;
    if (hi - lo < 1e-15 * std::max(1.0, lo)) break;  // interval exhausted in doubles
  }

  result.t_c = mid;
  result.iterations = iterations;
  result.residual = std::abs(fmid);
  return result;
}

TcResult characteristic_temperature(const ChainSpec& spec, double tol, const Budget& budget,
                                    int restarts, std::uint64_t seed) {
  const SpectralData sd = diagonalize(spec, false, budget);
  const SeparableBound bound = minimum_separable_energy(spec, restarts, tol, seed, budget);
  return characteristic_temperature(sd, bound.e_min, bound.method, tol);
}

double negativity_vanishing_temperature(const ChainSpec& spec, double tol,
                                        const Budget& budget) {
  if (spec.sites != 2) {
    throw InvalidSpec("negativity-vanishing temperature is a two-site quantity; got L = " +
                      std::to_string(spec.sites));
  }
  if (!(tol > 0.0)) throw InvalidSpec("tolerance must be positive");
  const SpectralData sd = diagonalize(spec, true, budget);

  const auto neg = [&](double t) {
    return negativity(thermal_state(sd, t, budget), tol).negativity;
  };

  double lo = 1e-3;  // entangled side, N >= tol
  if (!(neg(lo) >= tol)) {
    throw NoCrossing("two-site thermal state is not entangled at T = 1e-3");
  }
  double hi = 1.0;
  int expansions = 0;
  while (neg(hi) >= tol) {
    hi *= 2.0;
    if (++expansions > kMaxExpansions) {
      throw NoCrossing("negativity did not fall below tolerance while expanding the bracket");
    }
  }

  for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (neg(mid) >= tol) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;  // first probed temperature with N below tol
}

SpinScanTable tc_vs_spin(const std::vector<SpinValue>& spins, double coupling, double tol,
                         const Budget& budget) {
  if (spins.empty()) throw InvalidSpec("spin list is empty");
  std::vector<SpinValue> sorted = spins;
  std::sort(sorted.begin(), sorted.end(),
            [](const SpinValue& a, const SpinValue& b) { return a.twice() < b.twice(); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw InvalidSpec("duplicate spin " + sorted[i].str() + " in scan list");
    }
  }

  SpinScanTable table;
  table.rows.reserve(sorted.size());
  for (const SpinValue& s : sorted) {
    ChainSpec spec;
    spec.spin = s;
    spec.sites = 2;
    spec.coupling = coupling;
    spec.periodic = true;
    const TcResult r = characteristic_temperature(spec, tol, budget);
    table.rows.push_back(SpinScanRow{s, r.t_c, r.iterations, r.residual});
  }

  // least-squares line t_c ~ slope * s + intercept, reported as a diagnostic
  const auto n = static_cast<double>(table.rows.size());
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& row : table.rows) {
    const double x = row.spin.value();
    sx += x;
    sy += row.t_c;
    sxx += x * x;
    sxy += x * row.t_c;
  }
  const double denom = n * sxx - sx * sx;
  if (denom > 0.0) {
    table.fit_slope = (n * sxy - sx * sy) / denom;
    table.fit_intercept = (sy - table.fit_slope * sx) / n;
  } else {
    table.fit_slope = 0.0;
    table.fit_intercept = sy / n;
  }
  table.fit_max_residual = 0.0;
  for (const auto& row : table.rows) {
    const double predicted = table.fit_slope * row.spin.value() + table.fit_intercept;
    table.fit_max_residual = std::max(table.fit_max_residual, std::abs(row.t_c - predicted));
  }
  return table;
}

LengthScanTable tc_vs_length(const SpinValue& spin, const std::vector<int>& sites_list,
                             double coupling, double tol, const Budget& budget, int restarts,
                             std::uint64_t seed) {
  if (sites_list.empty()) throw InvalidSpec("sites list is empty");
  std::vector<int> sorted = sites_list;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw InvalidSpec("duplicate length " + std::to_string(sorted[i]) + " in scan list");
    }
  }

  LengthScanTable table;
  table.rows.reserve(sorted.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const int sites : sorted) {
    ChainSpec spec;
    spec.spin = spin;
    spec.sites = sites;
    spec.coupling = coupling;
    spec.periodic = true;
    LengthScanRow row{sites, nan, nan, "", false, ""};
    try {
      const TcResult r = characteristic_temperature(spec, tol, budget, restarts, seed);
      row.t_c = r.t_c;
      row.e_min = r.e_min;
      row.e_min_method = to_string(r.e_min_method);
    } catch (const InstanceTooLarge& e) {
      row.skipped = true;
      row.note = std::string("skipped: ") + e.what();
    } catch (const NoCrossing& e) {
      row.skipped = true;
      row.note = std::string("no crossing: ") + e.what();
    }
    table.rows.push_back(std::move(row));
  }

  table.monotone_decreasing = true;
  const LengthScanRow* prev = nullptr;
  for (const auto& row : table.rows) {
    if (row.skipped) continue;
    if (prev != nullptr && !(row.t_c < prev->t_c)) table.monotone_decreasing = false;
    prev = &row;
  }
  return table;
}

int default_max_even_sites(const SpinValue& spin, const Budget& budget) {
  const long d = spin.dimension();
  int best = 2;
  for (int sites = 2; sites <= 12; sites += 2) {
    long dim = 1;
    bool fits = true;
    for (int i = 0; i < sites; ++i) {
      if (dim > budget.max_dimension / d) {
        fits = false;
        break;
      }
      dim *= d;
    }
    if (fits) best = sites;
  }
  return best;
}

DeltaTable delta_map(const SpinValue& spin, const std::vector<double>& t_grid,
                     const std::vector<double>& j_grid, double tol, const Budget& budget) {
  check_sorted_unique(t_grid, "temperature");
  check_sorted_unique(j_grid, "coupling");

  DeltaTable table;
  table.t_grid = t_grid;
  table.j_grid = j_grid;
  table.tc_by_coupling.reserve(j_grid.size());
  table.cells.reserve(t_grid.size() * j_grid.size());

  for (const double j : j_grid) {
    ChainSpec spec;
    spec.spin = spin;
    spec.sites = 2;
    spec.coupling = j;
    spec.periodic = true;
    const SpectralData sd = diagonalize(spec, true, budget);
    const double e_min = e_min_closed_form(spec);
    const double tc =
        characteristic_temperature(sd, e_min, SeparableMethod::kClosedForm, tol).t_c;
    table.tc_by_coupling.push_back(tc);

    for (const double t : t_grid) {
      const double n = negativity(thermal_state(sd, t, budget)).negativity;
      double w = observables(sd, t).energy_mean - e_min;
      if (t >= tc) w = 0.0;  // the witness is taken as 0 at and above T_c
      table.cells.push_back(DeltaCell{t, j, n, w, n - std::abs(w)});
    }
  }
  return table;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw InvalidSpec("linspace needs at least one point");
  if (n == 1) return {a};
  if (!(b > a)) throw InvalidSpec("linspace needs b > a");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  const double step = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(i + 1 == n ? b : a + step * i);
  return out;
}

}  // namespace spinchain
