#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emit.hpp"
#include "svg.hpp"
#include "spinchain/entanglement.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/scans.hpp"
#include "spinchain/separable.hpp"
#include "spinchain/spectra.hpp"
#include "spinchain/spectra_cache.hpp"
#include "spinchain/thermal.hpp"
#include "spinchain/version.hpp"

namespace {

namespace sc = spinchain;
using sc::cli::Provenance;
using sc::cli::Table;

constexpr const char* kConventionNote =
    "periodic rings list every bond, so L=2 counts its single bond twice";

struct Options {
  std::string spin = "1/2";
  std::string sites = "2";
  std::string coupling = "1";
  std::string temperature = "0.1:4:40";
  bool open_chain = false;
  bool sites_given = false;
  double tol = 1e-8;
  std::uint64_t seed = 12345;
  int restarts = 16;
  std::string cache_dir;
  std::string out;
  std::string format = "csv";
};

sc::SpinValue parse_spin(const std::string& text) {
  try {
    return sc::SpinValue::parse(text);
  } catch (const sc::InvalidSpec& e) {
    throw sc::InvalidSpec(std::string("--spin: ") + e.what());
  }
}

long parse_long(const std::string& text, const char* flag) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0') {
    throw sc::InvalidSpec(std::string(flag) + ": expected an integer, got \"" + text + "\"");
  }
  return v;
}

double parse_double(const std::string& text, const char* flag) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw sc::InvalidSpec(std::string(flag) + ": expected a number, got \"" + text + "\"");
  }
  return v;
}

// "N" or "a..b" inclusive
std::vector<int> parse_sites(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    return {static_cast<int>(parse_long(text, "--sites"))};
  }
  const int a = static_cast<int>(parse_long(text.substr(0, dots), "--sites"));
  const int b = static_cast<int>(parse_long(text.substr(dots + 2), "--sites"));
  if (a > b) throw sc::InvalidSpec("--sites: range start exceeds its end");
  std::vector<int> out;
  for (int l = a; l <= b; ++l) out.push_back(l);
  return out;
}

// "x" or "a:b:n" inclusive grid
std::vector<double> parse_grid(const std::string& text, const char* flag) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {parse_double(text, flag)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw sc::InvalidSpec(std::string(flag) + ": grid syntax is a:b:n, got \"" + text + "\"");
  }
  const double a = parse_double(text.substr(0, c1), flag);
  const double b = parse_double(text.substr(c1 + 1, c2 - c1 - 1), flag);
  const int n = static_cast<int>(parse_long(text.substr(c2 + 1), flag));
  try {
    return sc::linspace(a, b, n);
  } catch (const sc::InvalidSpec& e) {
    throw sc::InvalidSpec(std::string(flag) + ": " + e.what());
  }
}

int single_sites(const std::string& text, const char* command) {
  const std::vector<int> list = parse_sites(text);
  if (list.size() != 1) {
    throw sc::InvalidSpec(std::string(command) + " takes a single --sites value");
  }
  return list.front();
}

double single_coupling(const std::string& text) {
  const std::vector<double> grid = parse_grid(text, "--coupling");
  if (grid.size() != 1) {
    throw sc::InvalidSpec("--coupling: this command takes a single value, not a grid");
  }
  return grid.front();
}

sc::ChainSpec make_spec(const Options& o, int sites, double coupling) {
  sc::ChainSpec spec;
  spec.spin = parse_spin(o.spin);
  spec.sites = sites;
  spec.coupling = coupling;
  spec.periodic = !o.open_chain;
  spec.validate(sc::env_budget());
  return spec;
}

std::filesystem::path effective_cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  return sc::env_cache_dir({});
}

sc::SpectralData load_or_compute(const sc::ChainSpec& spec, bool need_vectors,
                                 const Options& o) {
  const sc::Budget budget = sc::env_budget();
  const std::filesystem::path dir = effective_cache_dir(o);
  if (!dir.empty()) {
    std::string warn;
    std::optional<sc::SpectralData> hit = sc::cache_load(spec, need_vectors, dir, &warn);
    if (!warn.empty()) std::cerr << "warning: " << warn << "\n";
    if (hit.has_value()) {
      std::cerr << "cache: hit " << sc::cache_basename(spec) << "\n";
      return std::move(*hit);
    }
  }
  sc::SpectralData sd = sc::diagonalize(spec, need_vectors, budget);
  if (!dir.empty()) {
    sc::cache_store(sd, dir);
    std::cerr << "cache: stored " << sc::cache_basename(spec) << "\n";
  }
  return sd;
}

Provenance base_provenance(const std::string& command) {
  Provenance prov;
  prov.add("artifact", std::string("spinchain ") + sc::kVersion);
  prov.add("command", command);
  prov.add("convention", kConventionNote);
  return prov;
}

void add_spec_provenance(Provenance& prov, const sc::ChainSpec& spec) {
  prov.add("spin", spec.spin.str());
  prov.add("sites", std::to_string(spec.sites));
  prov.add("coupling", sc::cli::render_number(spec.coupling));
  prov.add("boundary", spec.periodic ? "periodic" : "open");
}

void emit_table(const Options& o, const Provenance& prov, const Table& table) {
  if (o.format == "csv") {
    sc::cli::write_output(o.out, sc::cli::to_csv(prov, table));
  } else if (o.format == "json") {
    sc::cli::write_output(o.out, sc::cli::to_json(prov, table));
  } else {
    throw sc::InvalidSpec("--format: svg-plot is only available for scan commands");
  }
}

sc::SeparableBound resolve_e_min(const sc::ChainSpec& spec, const Options& o) {
  const double opt_tol = std::min(o.tol, 1e-10);
  return sc::minimum_separable_energy(spec, o.restarts, opt_tol, o.seed, sc::env_budget());
}

int run_spectrum(const Options& o) {
  const sc::ChainSpec spec = make_spec(o, single_sites(o.sites, "spectrum"),
                                       single_coupling(o.coupling));
  const sc::SpectralData sd = load_or_compute(spec, false, o);

  Provenance prov = base_provenance("spectrum");
  add_spec_provenance(prov, spec);
  prov.add("dimension", std::to_string(spec.dimension(sc::env_budget())));

  Table table;
  table.columns = {"energy", "multiplicity"};
  for (const sc::DegeneracyLevel& level : sc::degeneracies(sd)) {
    table.add_row({level.energy, level.multiplicity});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_thermal(const Options& o) {
  const sc::ChainSpec spec = make_spec(o, single_sites(o.sites, "thermal"),
                                       single_coupling(o.coupling));
  const std::vector<double> temps = parse_grid(o.temperature, "--temperature");
  const sc::SpectralData sd = load_or_compute(spec, false, o);

  Provenance prov = base_provenance("thermal");
  add_spec_provenance(prov, spec);

  Table table;
  table.columns = {"temperature", "energy_mean", "energy_sq_mean", "variance",
                   "log_z_shifted"};
  for (const double t : temps) {
    const sc::ThermalObservables obs = sc::observables(sd, t);
    table.add_row({obs.temperature, obs.energy_mean, obs.energy_sq_mean, obs.variance,
                   obs.log_z_shifted});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_witness(const Options& o) {
  const sc::ChainSpec spec = make_spec(o, single_sites(o.sites, "witness"),
                                       single_coupling(o.coupling));
  const std::vector<double> temps = parse_grid(o.temperature, "--temperature");
  const sc::SpectralData sd = load_or_compute(spec, false, o);
  const sc::SeparableBound bound = resolve_e_min(spec, o);

  Provenance prov = base_provenance("witness");
  add_spec_provenance(prov, spec);
  prov.add("tolerance", sc::cli::render_number(o.tol));
  prov.add("e_min", sc::cli::render_number(bound.e_min));
  prov.add("e_min_method", sc::to_string(bound.method));
  if (bound.method == sc::SeparableMethod::kNumericMinimizer) {
    prov.add("seed", std::to_string(o.seed));
    prov.add("restarts", std::to_string(o.restarts));
  }

  Table table;
  table.columns = {"temperature", "energy_mean", "e_min", "witness", "entangled_by_witness"};
  for (const double t : temps) {
    const sc::WitnessReport report =
        sc::witness(t, sc::observables(sd, t).energy_mean, bound.e_min);
    table.add_row({report.temperature, report.energy_mean, report.e_min, report.witness,
                   report.entangled_by_witness});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_negativity(const Options& o) {
  const sc::ChainSpec spec = make_spec(o, single_sites(o.sites, "negativity"),
                                       single_coupling(o.coupling));
  const std::vector<double> temps = parse_grid(o.temperature, "--temperature");
  const sc::SpectralData sd = load_or_compute(spec, true, o);
  const sc::Budget budget = sc::env_budget();

  Provenance prov = base_provenance("negativity");
  add_spec_provenance(prov, spec);
  prov.add("tolerance", sc::cli::render_number(std::min(o.tol, 1e-10)));
  prov.add("state", spec.sites == 2 ? "full two-site thermal state"
                                    : "reduced thermal state of the bond (1,2)");

  Table table;
  table.columns = {"temperature", "negativity", "negative_eigenvalue_count"};
  for (const double t : temps) {
    const sc::DensityMatrix rho = spec.sites == 2
                                      ? sc::thermal_state(sd, t, budget)
                                      : sc::nn_reduced_density(sd, t, 0, budget);
    const sc::NegativityReport report = sc::negativity(rho, std::min(o.tol, 1e-10));
    table.add_row({t, report.negativity,
                   static_cast<long>(report.negative_eigenvalues.size())});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_tc(const Options& o) {
  const std::vector<int> sites_list = parse_sites(o.sites);
  const double coupling = single_coupling(o.coupling);

  Provenance prov = base_provenance("tc");
  prov.add("spin", parse_spin(o.spin).str());
  prov.add("coupling", sc::cli::render_number(coupling));
  prov.add("boundary", o.open_chain ? "open" : "periodic");
  prov.add("tolerance", sc::cli::render_number(o.tol));
  prov.add("seed", std::to_string(o.seed));
  prov.add("restarts", std::to_string(o.restarts));

  Table table;
  table.columns = {"sites", "t_c", "e_min", "e_min_method", "iterations", "residual"};
  for (const int sites : sites_list) {
    const sc::ChainSpec spec = make_spec(o, sites, coupling);
    const sc::SpectralData sd = load_or_compute(spec, false, o);
    const sc::SeparableBound bound = resolve_e_min(spec, o);
    const sc::TcResult r =
        sc::characteristic_temperature(sd, bound.e_min, bound.method, o.tol);
    table.add_row({sites, r.t_c, r.e_min, sc::to_string(r.e_min_method), r.iterations,
                   r.residual});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_emin(const Options& o) {
  const sc::ChainSpec spec = make_spec(o, single_sites(o.sites, "emin"),
                                       single_coupling(o.coupling));
  Provenance prov = base_provenance("emin");
  add_spec_provenance(prov, spec);
  prov.add("seed", std::to_string(o.seed));
  prov.add("restarts", std::to_string(o.restarts));

  Table table;
  table.columns = {"method", "e_min", "converged", "sweeps"};
  if (spec.periodic && spec.sites % 2 == 0) {
    table.add_row({"closed-form", sc::e_min_closed_form(spec), true, 0});
    const sc::ProductState neel = sc::neel_product_state(spec);
    table.add_row({"eq3-construction", sc::product_energy(spec, neel), true, 0});
  }
  const sc::SeparableBound numeric = sc::numeric_min_product_energy(
      spec, o.restarts, std::min(o.tol, 1e-10), o.seed, sc::env_budget());
  table.add_row({"numeric-minimizer", numeric.e_min, numeric.converged, numeric.sweeps});
  emit_table(o, prov, table);
  return 0;
}

int run_scan_fig1(const Options& o) {
  const double coupling = single_coupling(o.coupling);
  const sc::Budget budget = sc::env_budget();
  std::vector<sc::SpinValue> spins;
  for (int twice = 1; twice <= budget.max_twice_spin; ++twice) {
    spins.push_back(sc::SpinValue::from_twice(twice));
  }
  const sc::SpinScanTable scan = sc::tc_vs_spin(spins, coupling, o.tol, budget);

  Provenance prov = base_provenance("scan fig1");
  prov.add("sites", "2");
  prov.add("coupling", sc::cli::render_number(coupling));
  prov.add("boundary", "periodic");
  prov.add("tolerance", sc::cli::render_number(o.tol));
  prov.add("fit_slope", sc::cli::render_number(scan.fit_slope));
  prov.add("fit_intercept", sc::cli::render_number(scan.fit_intercept));
  prov.add("fit_max_residual", sc::cli::render_number(scan.fit_max_residual));

  if (o.format == "svg-plot") {
    sc::cli::Series series;
    series.label = "T_c at L=2";
    for (const sc::SpinScanRow& row : scan.rows) {
      series.x.push_back(row.spin.value());
      series.y.push_back(row.t_c);
    }
    sc::cli::write_output(
        o.out, sc::cli::svg_scatter(prov, "Characteristic temperature against spin",
                                    "spin s", "T_c", {series}));
    return 0;
  }

  Table table;
  table.columns = {"spin", "spin_value", "t_c", "iterations", "residual"};
  for (const sc::SpinScanRow& row : scan.rows) {
    table.add_row({row.spin.str(), row.spin.value(), row.t_c, row.iterations, row.residual});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_scan_fig2(const Options& o) {
  const sc::SpinValue spin = parse_spin(o.spin);
  const double coupling = single_coupling(o.coupling);
  const sc::Budget budget = sc::env_budget();

  std::vector<int> sites_list;
  if (o.sites_given) {
    sites_list = parse_sites(o.sites);
  } else {
    // default: even rings only, up to the largest length inside the budget
    for (int l = 2; l <= sc::default_max_even_sites(spin, budget); l += 2) {
      sites_list.push_back(l);
    }
  }

  const sc::LengthScanTable scan =
      sc::tc_vs_length(spin, sites_list, coupling, o.tol, budget, o.restarts, o.seed);

  Provenance prov = base_provenance("scan fig2");
  prov.add("spin", spin.str());
  prov.add("coupling", sc::cli::render_number(coupling));
  prov.add("boundary", "periodic");
  prov.add("tolerance", sc::cli::render_number(o.tol));
  prov.add("seed", std::to_string(o.seed));
  prov.add("restarts", std::to_string(o.restarts));
  prov.add("monotone_decreasing", scan.monotone_decreasing ? "true" : "false");

  if (o.format == "svg-plot") {
    sc::cli::Series series;
    series.label = "s = " + spin.str();
    for (const sc::LengthScanRow& row : scan.rows) {
      if (row.skipped) continue;
      series.x.push_back(row.sites);
      series.y.push_back(row.t_c);
    }
    sc::cli::write_output(
        o.out, sc::cli::svg_scatter(prov, "Characteristic temperature against chain length",
                                    "sites L", "T_c", {series}));
    return 0;
  }

  Table table;
  table.columns = {"sites", "t_c", "e_min", "e_min_method", "skipped", "note"};
  for (const sc::LengthScanRow& row : scan.rows) {
    table.add_row({row.sites, row.t_c, row.e_min, row.e_min_method, row.skipped, row.note});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_scan_fig3(const Options& o) {
  const sc::SpinValue spin = parse_spin(o.spin);
  const std::vector<double> t_grid = parse_grid(o.temperature, "--temperature");
  const std::vector<double> j_grid = parse_grid(o.coupling, "--coupling");
  const sc::Budget budget = sc::env_budget();

  const sc::DeltaTable scan = sc::delta_map(spin, t_grid, j_grid, o.tol, budget);

  Provenance prov = base_provenance("scan fig3");
  prov.add("spin", spin.str());
  prov.add("sites", "2");
  prov.add("boundary", "periodic");
  prov.add("tolerance", sc::cli::render_number(o.tol));
  prov.add("delta", "negativity minus |witness|, witness clamped to 0 at and above T_c");
  prov.add("temperature_grid", sc::cli::render_number(t_grid.front()) + ":" +
                                   sc::cli::render_number(t_grid.back()) + ":" +
                                   std::to_string(t_grid.size()));
  prov.add("coupling_grid", sc::cli::render_number(j_grid.front()) + ":" +
                                sc::cli::render_number(j_grid.back()) + ":" +
                                std::to_string(j_grid.size()));

  if (o.format == "svg-plot") {
    std::vector<double> values;
    values.reserve(scan.cells.size());
    // cells arrive J outer, T inner; the heat grid wants x=T rows per y=J
    for (std::size_t j = 0; j < scan.j_grid.size(); ++j) {
      for (std::size_t t = 0; t < scan.t_grid.size(); ++t) {
        values.push_back(scan.cells[j * scan.t_grid.size() + t].delta);
      }
    }
    sc::cli::write_output(
        o.out, sc::cli::svg_heatmap(prov, "Delta = N - |W| over temperature and coupling",
                                    "temperature T", "coupling J", scan.t_grid, scan.j_grid,
                                    values, scan.tc_by_coupling, scan.j_grid, "W=0"));
    return 0;
  }

  Table table;
  table.columns = {"temperature", "coupling", "negativity", "witness_clamped", "delta"};
  for (const sc::DeltaCell& cell : scan.cells) {
    table.add_row({cell.temperature, cell.coupling, cell.negativity, cell.witness_clamped,
                   cell.delta});
  }
  emit_table(o, prov, table);
  return 0;
}

int run_verify(const Options& o) {
  int failures = 0;
  const auto check = [&failures](const std::string& name, bool ok,
                                 const std::string& detail = "") {
    if (ok) {
      std::cout << "ok - " << name << "\n";
    } else {
      std::cout << "FAIL - " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
      ++failures;
    }
  };
  const sc::Budget budget = sc::env_budget();

  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(1);
    const double tc = sc::characteristic_temperature(spec, 1e-10, budget).t_c;
    check("T_c(s=1/2, L=2) = 2/ln3", std::abs(tc - 2.0 / std::log(3.0)) < 1e-6,
          sc::cli::render_number(tc));
  }
  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(2);
    const double tc = sc::characteristic_temperature(spec, 1e-10, budget).t_c;
    check("T_c(s=1, L=2) = 6/ln10", std::abs(tc - 6.0 / std::log(10.0)) < 1e-6,
          sc::cli::render_number(tc));
  }
  {
    bool ok = true;
    std::string detail;
    for (int twice = 1; twice <= budget.max_twice_spin; ++twice) {
      sc::ChainSpec spec;
      spec.spin = sc::SpinValue::from_twice(twice);
      const double s = spec.spin.value();
      const double e0 = sc::ground_energy(sc::diagonalize(spec, false, budget));
      const double gap = std::abs(e0 - sc::e_min_closed_form(spec));
      if (std::abs(e0 + 2.0 * (s * s + s)) > 1e-10 || std::abs(gap - 2.0 * s) > 1e-10) {
        ok = false;
        detail = "failed at s = " + spec.spin.str();
        break;
      }
    }
    check("ground energy -2J(s^2+s) and gap 2Js at L=2", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int twice = 1; twice <= budget.max_twice_spin; ++twice) {
      const sc::SpinValue s = sc::SpinValue::from_twice(twice);
      const sc::PairState pair = sc::eq3_pair_state(s);
      const double corr = sc::mean_spin(s, pair.site_a).dot(sc::mean_spin(s, pair.site_b));
      if (!pair.literal_ok || std::abs(corr + s.value() * s.value()) > 1e-10) {
        ok = false;
        detail = "failed at s = " + s.str() + (pair.note.empty() ? "" : "; " + pair.note);
        break;
      }
    }
    check("pair construction reaches correlation -s^2", ok, detail);
  }
  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(1);
    spec.sites = 4;
    const sc::SeparableBound bound = sc::numeric_min_product_energy(spec, 8, 1e-12, o.seed);
    check("numeric minimizer reaches -JLs^2 (L=4, s=1/2)",
          std::abs(bound.e_min + 1.0) < 1e-6, sc::cli::render_number(bound.e_min));
  }
  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(1);
    const sc::SpectralData sd = sc::diagonalize(spec, true, budget);
    const double n = sc::negativity(sc::thermal_state(sd, 1e-3, budget)).negativity;
    check("two-qubit ground-state negativity 1/2", std::abs(n - 0.5) < 1e-5,
          sc::cli::render_number(n));
  }
  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(2);
    const sc::SpectralData sd = sc::diagonalize(spec, true, budget);
    const sc::DensityMatrix rho = sc::thermal_state(sd, 1e-3, budget);
    const double n = sc::negativity(rho).negativity;
    check("two-qutrit ground-state negativity 1", std::abs(n - 1.0) < 1e-5,
          sc::cli::render_number(n));

    sc::DensityMatrix once = rho;
    once.entries = sc::partial_transpose(rho, sc::Subsystem::kA);
    const double residual =
        (sc::partial_transpose(once, sc::Subsystem::kA) - rho.entries).cwiseAbs().maxCoeff();
    check("partial transpose is an involution", residual == 0.0,
          sc::cli::render_number(residual));
  }
  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(2);
    const double tn = sc::negativity_vanishing_temperature(spec, 1e-8, budget);
    const double tc = sc::characteristic_temperature(spec, 1e-10, budget).t_c;
    check("negativity outlives the witness (s=1, L=2)", tn > tc,
          "T_N = " + sc::cli::render_number(tn) + ", T_c = " + sc::cli::render_number(tc));
  }
  {
    sc::ChainSpec spec;
    spec.spin = sc::SpinValue::from_twice(1);
    spec.sites = 6;
    const sc::SpectralData sd = sc::diagonalize(spec, false, budget);
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("spinchain-verify-" + std::to_string(::getpid()));
    bool ok = false;
    std::string detail;
    try {
      sc::cache_store(sd, dir);
      std::string warn;
      const std::optional<sc::SpectralData> back = sc::cache_load(spec, false, dir, &warn);
      ok = back.has_value() && back->eigenvalues == sd.eigenvalues && warn.empty();
      if (!ok) detail = warn.empty() ? "round trip mismatch" : warn;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
    check("spectrum cache round trip is bit exact", ok, detail);
  }

  std::cout << (failures == 0 ? "all checks passed\n"
                              : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

void add_spec_options(CLI::App* sub, Options& o, bool with_sites = true) {
  sub->add_option("--spin", o.spin, "Spin s, e.g. 1/2, 1, 3/2 or 0.5")
      ->capture_default_str();
  if (with_sites) {
    sub->add_option("--sites", o.sites, "Chain length L, single value or range a..b")
        ->capture_default_str();
  }
  sub->add_option("--coupling", o.coupling, "Exchange coupling J > 0")
      ->capture_default_str();
  sub->add_flag("--open-chain", o.open_chain, "Open boundary instead of periodic");
}

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Solver tolerance")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for the separable-state minimizer restarts")
      ->capture_default_str();
  sub->add_option("--restarts", o.restarts, "Random restarts of the separable minimizer")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_io_options(CLI::App* sub, Options& o, bool allow_svg) {
  sub->add_option("--cache-dir", o.cache_dir,
                  "Spectrum cache directory (also via SPINCHAIN_CACHE_DIR)");
  sub->add_option("--out", o.out, "Output path; stdout when omitted");
  std::vector<std::string> formats = {"csv", "json"};
  if (allow_svg) formats.push_back("svg-plot");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
}

void add_temperature_option(CLI::App* sub, Options& o) {
  sub->add_option("--temperature", o.temperature,
                  "Temperature, single value or grid a:b:n")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal entanglement in periodic Heisenberg spin-s rings"};
  app.set_version_flag("--version", std::string("spinchain ") + sc::kVersion);
  app.set_config("--config", "", "Optional key=value configuration file");
  app.require_subcommand(1);

  // one options block per subcommand so defaults stay independent
  std::vector<std::unique_ptr<Options>> blocks;
  const auto fresh = [&blocks]() -> Options& {
    blocks.push_back(std::make_unique<Options>());
    return *blocks.back();
  };
  int rc = 0;

  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand("spectrum", "Eigenvalues and multiplicities");
    add_spec_options(sub, o);
    add_io_options(sub, o, false);
    sub->callback([&o, &rc] { rc = run_spectrum(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand("thermal", "Gibbs observables on a temperature grid");
    add_spec_options(sub, o);
    add_temperature_option(sub, o);
    add_run_options(sub, o);
    add_io_options(sub, o, false);
    sub->callback([&o, &rc] { rc = run_thermal(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand("witness", "Energy witness W = <H> - E_min");
    add_spec_options(sub, o);
    add_temperature_option(sub, o);
    add_run_options(sub, o);
    add_io_options(sub, o, false);
    sub->callback([&o, &rc] { rc = run_witness(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand(
        "negativity", "Partial-transpose negativity of the bond thermal state");
    add_spec_options(sub, o);
    add_temperature_option(sub, o);
    add_run_options(sub, o);
    add_io_options(sub, o, false);
    sub->callback([&o, &rc] { rc = run_negativity(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand("tc", "Characteristic temperature where <H> = E_min");
    add_spec_options(sub, o);
    add_run_options(sub, o);
    add_io_options(sub, o, false);
    sub->callback([&o, &rc] { rc = run_tc(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand("emin", "Minimum separable energy by every method");
    add_spec_options(sub, o);
    add_run_options(sub, o);
    add_io_options(sub, o, false);
    sub->callback([&o, &rc] { rc = run_emin(o); });
  }

  CLI::App* scan = app.add_subcommand("scan", "Figure-reproduction drivers");
  scan->require_subcommand(1);
  {
    Options& o = fresh();
    CLI::App* sub = scan->add_subcommand("fig1", "T_c against spin at L=2");
    sub->add_option("--coupling", o.coupling, "Exchange coupling J > 0")
        ->capture_default_str();
    add_run_options(sub, o);
    add_io_options(sub, o, true);
    sub->callback([&o, &rc] { rc = run_scan_fig1(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = scan->add_subcommand("fig2", "T_c against chain length at fixed s");
    add_spec_options(sub, o);
    add_run_options(sub, o);
    add_io_options(sub, o, true);
    CLI::Option* sites_opt = sub->get_option("--sites");
    sub->callback([&o, &rc, sites_opt] {
      o.sites_given = sites_opt->count() > 0;
      rc = run_scan_fig2(o);
    });
  }
  {
    Options& o = fresh();
    o.spin = "1";
    o.temperature = "0.1:4:64";
    o.coupling = "0.1:2:64";
    CLI::App* sub = scan->add_subcommand("fig3", "Delta = N - |W| over a (T, J) grid at L=2");
    sub->add_option("--spin", o.spin, "Spin s")->capture_default_str();
    add_temperature_option(sub, o);
    sub->add_option("--coupling", o.coupling, "Coupling J, single value or grid a:b:n")
        ->capture_default_str();
    add_run_options(sub, o);
    add_io_options(sub, o, true);
    sub->callback([&o, &rc] { rc = run_scan_fig3(o); });
  }
  {
    Options& o = fresh();
    CLI::App* sub = app.add_subcommand("verify", "Run the built-in oracle checks");
    sub->add_option("--seed", o.seed, "Seed for the separable-state minimizer")
        ->capture_default_str();
    sub->callback([&o, &rc] { rc = run_verify(o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const sc::InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sc::NoCrossing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sc::InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const sc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
