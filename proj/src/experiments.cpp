#include "majorana/experiments.hpp"

#include "majorana/error.hpp"
#include "majorana/qubit.hpp"
#include "majorana/report.hpp"
#include "majorana/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

namespace majorana {
namespace {

std::string sci(double v, int digits = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  return a * b + b * a;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return a * b - b * a;
}

PauliSum identity(int n) { return PauliSum(PauliTerm::identity(n)); }

// --- self-check invariants -------------------------------------------------

struct Invariant {
  std::string name;
  bool passed = true;
  std::string detail;
};

Invariant check_majorana_algebra() {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (double phi : {0.0, std::numbers::pi / 3}) {
      std::vector<PauliSum> c;
      for (int k = 1; k <= 2 * n; ++k) c.push_back(majorana_op(k, n, phi));
      for (int j = 0; j < 2 * n; ++j) {
        worst = std::max(worst, (c[j] - c[j].adjoint()).coefficient_norm());
        for (int k = j; k < 2 * n; ++k) {
          PauliSum d = anticommutator(c[j], c[k]);
          if (j == k) d -= identity(n) * Complex(2.0);
          worst = std::max(worst, d.coefficient_norm());
        }
      }
    }
  return {"majorana_algebra", worst <= 1e-12,
          "max deviation " + sci(worst) + ", N = 2..6, phi in {0, pi/3}"};
}

Invariant check_fermion_algebra() {
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const PauliSum ai = fermion_annihilation(i, n, 0.7);
        const PauliSum aj = fermion_annihilation(j, n, 0.7);
        PauliSum d = anticommutator(ai, aj.adjoint());
        if (i == j) d -= identity(n);
        worst = std::max(worst, d.coefficient_norm());
        worst = std::max(worst, anticommutator(ai, aj).coefficient_norm());
      }
  return {"fermion_algebra", worst <= 1e-12,
          "max deviation " + sci(worst) + ", N = 2..5"};
}

Invariant check_hermiticity(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (int draw = 0; draw < 5; ++draw) {
      FermionParams f{n, uniform(rng, 0.1, 2.0), uniform(rng, 0.1, 2.0),
                      uniform(rng, -std::numbers::pi, std::numbers::pi),
                      uniform(rng, -2.0, 2.0)};
      for (const PauliSum& h : {build_fermionic(f), build_majorana(f)})
        worst = std::max(worst, (h - h.adjoint()).coefficient_norm());
    }
  return {"hermiticity", worst <= 1e-12,
          "max |H - H^dag| " + sci(worst) + ", N = 2..6, 5 draws each"};
}

Invariant check_mapping_equivalence(std::uint64_t seed, Fault fault) {
  const JwConvention conv =
      fault == Fault::jw_sign ? JwConvention::flipped : JwConvention::standard;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  int draws = 0;
  for (int n = 2; n <= 8; ++n)
    for (int draw = 0; draw < 20; ++draw, ++draws) {
      const double w = uniform(rng, 0.1, 2.0);
      const FermionParams f{n, w, w, 0.0, uniform(rng, -2.0, 2.0)};
      const PauliSum h1 = build_fermionic(f, conv);
      const PauliSum h2 = build_majorana(f);
      const PauliSum h3 = build_spin(SpinParams::from_fermion(f));
      const double scale = std::max(1.0, h3.coefficient_norm());
      worst = std::max({worst, (h1 - h3).coefficient_norm() / scale,
                        (h2 - h3).coefficient_norm() / scale});
    }
  return {"mapping_equivalence", worst <= 1e-12,
          "max relative deviation " + sci(worst) + " over " +
              std::to_string(draws) + " draws, N = 2..8"};
}

Invariant check_mfq_algebra() {
  double worst = 0.0;
  const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
  for (int n = 2; n <= 6; ++n) {
    SpinParams p = SpinParams::ideal(n);
    for (int b = 0; b + 1 < n; ++b) p.j_bonds[b] = 1.0 + 0.01 * b;
    if (n >= 3) p.j_nnn.push_back({1, 3, 0.125});
    const PauliSum h = build_spin(p);
    std::vector<PauliSum> s;
    for (Axis a : axes) s.emplace_back(mfq_pauli(a, n));
    for (int a = 0; a < 3; ++a) {
      worst = std::max(worst, (s[a] * s[a] - identity(n)).coefficient_norm());
      worst = std::max(worst, commutator(s[a], h).coefficient_norm());
      for (int b = a + 1; b < 3; ++b)
        worst = std::max(worst, anticommutator(s[a], s[b]).coefficient_norm());
    }
    worst = std::max(
        worst, (s[0] * s[1] - s[2] * Complex(0.0, 1.0)).coefficient_norm());
  }
  return {"mfq_algebra", worst <= 1e-12,
          "max deviation " + sci(worst) + ", N = 2..6 with J_13"};
}

Invariant check_parity_symmetry(std::uint64_t seed) {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    Imperfections noise = Imperfections::trapped_ion(true);
    noise.random_signs = true;
    noise.seed = seed + static_cast<std::uint64_t>(n);
    const PauliSum h = build_spin(noise.apply(n, 1.0, 0.3));
    worst = std::max(
        worst, commutator(PauliSum(parity_operator(n)), h).coefficient_norm());
  }
  return {"parity_symmetry", worst <= 1e-12,
          "max |[P, H]| " + sci(worst) + ", perturbed chains N = 2..8"};
}

Invariant check_ground_structure() {
  double gap_dev = 0.0, overlap_def = 0.0, parity_dev = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const GroundSubspace g =
        ground_subspace(realize(build_spin(SpinParams::ideal(n))));
    gap_dev = std::max(gap_dev, std::abs(g.gap - 2.0));
    overlap_def = std::max({overlap_def,
                            1.0 - g.psi0.fidelity(ghz_x_state(n, +1)),
                            1.0 - g.psi1.fidelity(ghz_x_state(n, -1))});
    const PauliSum parity(parity_operator(n));
    parity_dev = std::max(
        {parity_dev, std::abs(expectation(parity, g.psi0).real() - 1.0),
         std::abs(expectation(parity, g.psi1).real() + 1.0)});
  }
  const bool ok = gap_dev <= 1e-10 && overlap_def <= 1e-10 && parity_dev <= 1e-10;
  return {"ground_structure", ok,
          "|gap - 2J| " + sci(gap_dev) + ", GHZ infidelity " + sci(overlap_def) +
              ", parity deviation " + sci(parity_dev) + ", N = 3..8"};
}

Invariant check_edge_mode() {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const PauliSum a = edge_mode_annihilation(n);
    const PauliSum h = build_spin(SpinParams::ideal(n));
    worst = std::max({worst, commutator(a, h).coefficient_norm(),
                      (a * a).coefficient_norm(),
                      (anticommutator(a, a.adjoint()) - identity(n))
                          .coefficient_norm()});
  }
  return {"edge_mode", worst <= 1e-12,
          "max deviation " + sci(worst) + ", N = 2..6"};
}

// --- CSV helpers -------------------------------------------------------------

bool time_in_seconds(const RunConfig& config) {
  return config.get_real("run.J_hz") > 0.0;
}

std::vector<std::string> with_seconds(std::vector<std::string> cols,
                                      const RunConfig& config) {
  if (time_in_seconds(config)) cols.push_back("t [s]");
  return cols;
}

void push_seconds(std::vector<CsvReport::Cell>& row, double t,
                  const RunConfig& config) {
  if (time_in_seconds(config)) row.emplace_back(t / config.get_real("run.J_hz"));
}

double step_for(const RunConfig& config, const SpinParams& chain,
                const Schedule& sched) {
  const double dt = config.get_real("schedule.dt");
  return dt > 0.0 ? dt : 0.5 * max_step(chain, sched);
}

std::string sweep_csv(const RunConfig& config, const SpinParams& chain,
                      std::string_view name) {
  const Schedule sched = schedule_from(config);
  const Trajectory tr =
      ground_transfer(chain, sched, step_for(config, chain, sched),
                      static_cast<int>(config.get_int("run.samples")));
  CsvReport csv(with_seconds({"t [1/J]", "one_minus_F", "parity", "norm"}, config));
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::vector<CsvReport::Cell> row{tr.times[k], 1.0 - tr.fidelity[k],
                                     tr.parity[k], tr.norm[k]};
    push_seconds(row, tr.times[k], config);
    csv.add_row(std::move(row));
  }
  csv.stamp(config, name);
  return csv.str();
}

}  // namespace

Schedule schedule_from(const RunConfig& config) {
  const RampShape shape = config.get_string("schedule.shape") == "smoothstep"
                              ? RampShape::smoothstep
                              : RampShape::linear;
  return Schedule(config.get_real("schedule.T_total"), shape,
                  config.get_real("schedule.J_start"),
                  config.get_real("schedule.h_start"),
                  config.get_real("schedule.J_end"),
                  config.get_real("schedule.h_end"));
}

Imperfections imperfections_from(const RunConfig& config, bool with_nnn) {
  Imperfections noise;
  noise.delta_hz = config.get_real("noise.delta_hz");
  noise.j12_ratio = config.get_real("model.j12_ratio");
  noise.j13_over_j12 = with_nnn ? config.get_real("model.j13_over_j12") : 0.0;
  noise.random_signs = config.get_bool("noise.random_sign");
  noise.seed = static_cast<unsigned long long>(config.get_int("run.seed"));
  return noise;
}

std::vector<Complex> memory_input(const RunConfig& config) {
  const auto k = config.get_int("run.K");
  const std::size_t dim = std::size_t{1} << k;
  const std::string& kind = config.get_string("run.input");
  std::vector<Complex> c(dim, 0.0);
  if (kind == "bell") {
    c.front() = c.back() = 1.0 / std::sqrt(2.0);
  } else if (kind == "product") {
    std::fill(c.begin(), c.end(), 1.0 / std::sqrt(static_cast<double>(dim)));
  } else if (kind == "zero") {
    c.front() = 1.0;
  } else if (kind == "one") {
    c.back() = 1.0;
  } else {
    const auto& raw = config.get_real_list("run.coeffs");
    if (raw.size() != dim)
      throw ConfigError("run.coeffs needs " + std::to_string(dim) + " entries");
    std::copy(raw.begin(), raw.end(), c.begin());
  }
  return c;
}

ExperimentResult run_check(const RunConfig& config, Fault fault) {
  const auto seed = static_cast<std::uint64_t>(config.get_int("run.seed"));
  const std::vector<std::function<Invariant()>> suite = {
      check_majorana_algebra,
      check_fermion_algebra,
      [&] { return check_hermiticity(seed); },
      [&] { return check_mapping_equivalence(seed, fault); },
      check_mfq_algebra,
      [&] { return check_parity_symmetry(seed); },
      check_ground_structure,
      check_edge_mode,
  };
  ExperimentResult res;
  std::vector<std::string> failed;
  for (const auto& run : suite) {
    const Invariant inv = run();
    res.text += (inv.passed ? "PASS " : "FAIL ") + inv.name + ": " + inv.detail + "\n";
    if (!inv.passed) failed.push_back(inv.name);
  }
  res.passed = failed.empty();
  if (res.passed) {
    res.text += "check: all " + std::to_string(suite.size()) + " invariants passed\n";
  } else {
    res.text += "check: " + std::to_string(failed.size()) + " of " +
                std::to_string(suite.size()) + " invariants failed:";
    for (const auto& f : failed) res.text += " " + f;
    res.text += "\n";
  }
  return res;
}

ExperimentResult run_sweep(const RunConfig& config) {
  const int n = static_cast<int>(config.get_int("model.N"));
  const std::string& variant = config.get_string("run.variant");
  ExperimentResult res;
  if (variant != "perturbed")
    res.files.push_back(
        {variant == "both" ? "ideal" : "",
         sweep_csv(config, SpinParams::ideal(n), "sweep ideal")});
  if (variant != "ideal")
    // The perturbed protocol always carries the configured J_13.
    res.files.push_back(
        {variant == "both" ? "perturbed" : "",
         sweep_csv(config, imperfections_from(config, true).apply(n),
                   "sweep perturbed")});
  return res;
}

ExperimentResult run_splitting(const RunConfig& config) {
  std::vector<int> ns;
  for (auto v : config.get_int_list("run.N_list")) ns.push_back(static_cast<int>(v));
  const auto rows = splitting_scan(
      imperfections_from(config, config.get_bool("model.include_nnn")), ns);
  CsvReport csv({"N", "gamma [J]", "gap [J]", "reliable_flag", "oracle_gamma [J]"});
  for (const auto& r : rows)
    csv.add_row({std::int64_t{r.n_sites}, r.gamma, r.gap,
                 std::int64_t{r.reliable ? 1 : 0}, r.oracle_gamma});
  csv.stamp(config, "splitting");
  return {{{"", csv.str()}}, "", true};
}

ExperimentResult run_survival(const RunConfig& config) {
  SurvivalOptions opts;
  opts.n_sites = static_cast<int>(config.get_int("model.N"));
  opts.delta_hz = config.get_real("noise.delta_hz");
  opts.t_max = config.get_real("run.t_max");
  opts.samples = static_cast<int>(config.get_int("run.samples"));
  opts.random_signs = config.get_bool("noise.random_sign");
  opts.seed = static_cast<unsigned long long>(config.get_int("run.seed"));
  const Trajectory with = survival_experiment(opts);
  opts.with_topological = false;
  const Trajectory without = survival_experiment(opts);

  CsvReport csv(with_seconds({"t [1/J]", "F_with", "F_without"}, config));
  for (std::size_t k = 0; k < with.times.size(); ++k) {
    std::vector<CsvReport::Cell> row{with.times[k], with.fidelity[k],
                                     without.fidelity[k]};
    push_seconds(row, with.times[k], config);
    csv.add_row(std::move(row));
  }
  csv.stamp(config, "survival");
  return {{{"", csv.str()}}, "", true};
}

ExperimentResult run_interface(const RunConfig& config) {
  const int n = static_cast<int>(config.get_int("model.N"));
  const int k = static_cast<int>(config.get_int("run.K"));
  MemoryOptions opts;
  opts.schedule = schedule_from(config);
  if (config.get_bool("run.interface_noise"))
    opts.noise = imperfections_from(config, config.get_bool("model.include_nnn"));
  opts.dt = config.get_real("schedule.dt");
  const MemoryResult m = memory_transfer(memory_input(config), k, n, opts);
  CsvReport csv({"K", "raw_fidelity", "phase_opt_fidelity"});
  csv.add_row({std::int64_t{k}, m.raw_fidelity, m.phase_opt_fidelity});
  csv.stamp(config, "interface");
  return {{{"", csv.str()}}, "", true};
}

ExperimentResult run_estimate(const RunConfig& config) {
  const double amplitude = config.get_real("noise.x_amplitude");
  const double omega0 = config.get_real("noise.omega0");
  const double dhz = config.get_real("noise.delta_hz");
  const ExcitationEstimate x = offresonant_excitation(amplitude, omega0);
  const double f = effective_error_frequency(dhz, 1.0);

  std::string t;
  t += "off-resonant X excitation: amplitude " + sci(amplitude) + " Hz, omega0 " +
       sci(omega0) + " Hz -> probability " + sci(x.probability) +
       (x.perturbative ? "" : " (outside the perturbative regime)") + "\n";
  t += "effective Z error frequency: delta_hz^2 / (2J) = " + sci(f) + " J";
  if (dhz > 0.0) t += " = " + sci(f / dhz) + " * delta_hz";
  t += "\n";
  t += "protection against local noise\n";
  t += "  axis  topological gap  ion internal transition  suppressed by\n";
  t += "  X     no               yes                      ion transition only\n";
  t += "  Y     yes              yes                      both\n";
  t += "  Z     yes              no                       gap only\n";
  return {{}, t, true};
}

ExperimentResult run_experiment(std::string_view name, const RunConfig& config,
                                Fault fault) {
  config.validate();
  if (name == "check") return run_check(config, fault);
  if (name == "sweep") return run_sweep(config);
  if (name == "splitting") return run_splitting(config);
  if (name == "survival") return run_survival(config);
  if (name == "interface") return run_interface(config);
  if (name == "estimate") return run_estimate(config);
  throw UsageError("unknown experiment '" + std::string(name) + "'");
}

}  // namespace majorana
