// lrkit: batch driver for spin-chain commutator-bound experiments.
//
// Subcommands:
//   simulate   commutator-norm grid with both theoretical bounds per cell
//   bound      interaction norm, convolution constants, velocities
//   lightcone  threshold crossings and fitted propagation velocity
//   verify     the full invariant suite, one pass/fail line per check
//
// Exit codes: 0 success, 1 invariant failure, 2 config error, 3 resource cap.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "lrkit/config.hpp"
#include "lrkit/report.hpp"
#include "lrkit/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lrkit;

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

DynamicsEngine make_engine(const Experiment& ex) {
  std::vector<int> lambda(ex.graph.size());
  for (int i = 0; i < ex.graph.size(); ++i) lambda[i] = i;
  std::vector<std::string> warnings;
  const Observable h = build_hamiltonian(ex.graph, ex.onsite, ex.phi, lambda, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return DynamicsEngine::diagonalize(h);
}

int cmd_simulate(const Experiment& ex, unsigned threads) {
  ex.require_dynamics_capacity();
  if (!ex.observable || !ex.probe || ex.probe_sites.empty() || ex.times.empty())
    throw ConfigError(
        "simulate needs dynamics.observable, dynamics.probe, dynamics.probe_sites "
        "and dynamics.times");

  const DynamicsEngine engine = make_engine(ex);
  std::vector<Observable> probes;
  for (int s : ex.probe_sites) probes.push_back(make_observable(*ex.probe, {s}));

  const auto norms = engine.commutator_norm_scan(*ex.observable, probes, ex.times, threads);
  const BoundContext ctx = ex.bound_context();
  const double norm_a = operator_norm(*ex.observable);
  const double norm_b = operator_norm(Eigen::MatrixXcd(*ex.probe));

  std::vector<LightConeCell> grid;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const bool disjoint = !std::binary_search(ex.observable->support.begin(),
                                              ex.observable->support.end(),
                                              probes[p].support.front());
    const double d = min_distance(ex.observable->support, probes[p].support, ex.graph);
    for (std::size_t i = 0; i < ex.times.size(); ++i) {
      LightConeCell cell;
      cell.distance = d;
      cell.t = ex.times[i];
      cell.measured_norm = norms[p][i];
      cell.bound_22 = lr_bound(ctx.ev, ex.observable->support, probes[p].support, ctx.f,
                               ex.graph, norm_a, norm_b, ex.times[i]);
      cell.bound_24 = (ctx.ev.a > 0.0 && disjoint)
                          ? lr_bound_corollary(ctx.ev, ex.observable->support,
                                               probes[p].support, ex.graph, norm_a,
                                               norm_b, ex.times[i])
                          : std::numeric_limits<double>::quiet_NaN();
      grid.push_back(cell);
    }
  }

  const fs::path dir(ex.out_dir);
  write_file(dir / "simulate_grid.csv", grid_csv(grid));

  SimulateSummary summary;
  summary.a = ctx.ev.a;
  summary.phi_norm = ctx.ev.phi_norm;
  summary.conv_constant = ctx.ev.conv_constant;
  summary.f_norm_bare = ctx.ev.f_norm_bare;
  if (ctx.ev.a > 0.0) summary.velocity = lr_velocity(ctx.ev);
  summary.cells = grid.size();
  write_file(dir / "simulate_summary.json", simulate_summary_json(summary));

  std::cout << "wrote " << (dir / "simulate_grid.csv").string() << " (" << grid.size()
            << " cells)\n";
  return 0;
}

int cmd_bound(const Experiment& ex, unsigned /*threads*/) {
  const BoundContext ctx = ex.bound_context();

  BoundReport r;
  r.nu = ex.graph.dimension();
  r.epsilon = ex.decay.epsilon();
  r.a = ex.decay.weight();
  r.coupling = ex.model.coupling;
  r.phi_norm = ctx.ev.phi_norm;
  r.f_norm_lattice = lattice_f_norm(r.nu, r.epsilon);
  r.f_norm_truncation = f_norm(ex.decay.bare(), ex.graph);
  r.conv_analytic_lattice = ctx.ev.conv_constant;
  r.conv_analytic_truncation = convolution_constant_analytic(ex.decay, ex.graph);
  r.conv_empirical = convolution_constant_empirical(ex.decay, ex.graph);
  if (ctx.ev.a > 0.0) r.velocity = lr_velocity(ctx.ev);
  r.a_interval = ex.a_interval;
  r.optimum = optimal_velocity(ex.phi, ex.decay, ex.graph, ex.a_interval.first,
                               ex.a_interval.second, ctx.ev.conv_constant);
  if (ex.model.kind == "heisenberg")
    r.heisenberg_bound = heisenberg_velocity_bound(std::abs(ex.model.coupling), r.nu,
                                                   r.epsilon, r.f_norm_lattice.value);
  if (ex.anharmonic_phi_sup)
    r.anharmonic_bound = anharmonic_velocity_bound(*ex.anharmonic_phi_sup, r.nu,
                                                   r.epsilon, r.f_norm_lattice.value);

  const fs::path dir(ex.out_dir);
  write_file(dir / "bound_report.json", bound_report_json(r));
  std::cout << "wrote " << (dir / "bound_report.json").string() << "\n";
  return 0;
}

int cmd_lightcone(const Experiment& ex, unsigned threads) {
  ex.require_dynamics_capacity();
  if (!ex.observable || !ex.probe || ex.lightcone_distances.empty() || ex.times.empty())
    throw ConfigError(
        "lightcone needs dynamics.observable, dynamics.probe, dynamics.times and "
        "lightcone.distances");

  const DynamicsEngine engine = make_engine(ex);
  const BoundContext ctx = ex.bound_context();
  const double norm_a = operator_norm(*ex.observable);
  const double norm_b = operator_norm(Eigen::MatrixXcd(*ex.probe));
  const double threshold =
      ex.lightcone_threshold.value_or(0.1 * 2.0 * norm_a * norm_b);

  const LightConeReport report =
      light_cone_scan(engine, *ex.observable, *ex.probe, ex.lightcone_distances,
                      ex.times, threshold, ctx, threads);

  for (std::size_t i = 1; i < report.crossings.size(); ++i)
    if (report.crossings[i].distance > report.crossings[i - 1].distance &&
        report.crossings[i].time < report.crossings[i - 1].time)
      std::cerr << "warning: crossing at distance "
                << report.crossings[i].distance << " earlier than at "
                << report.crossings[i - 1].distance << "\n";

  const fs::path dir(ex.out_dir);
  write_file(dir / "lightcone_grid.csv", grid_csv(report.grid));
  write_file(dir / "lightcone_report.json", light_cone_report_json(report));
  std::cout << "wrote " << (dir / "lightcone_report.json").string() << " ("
            << report.crossings.size() << " crossings)\n";
  return 0;
}

int cmd_verify(const Experiment& ex, unsigned threads) {
  ex.require_dynamics_capacity();
  const auto results = run_verification(ex, threads);
  for (const CheckResult& r : results) {
    std::printf("%-44s %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL");
    if (!r.detail.empty()) std::printf("  %s\n", r.detail.c_str());
  }
  const bool ok = all_passed(results);
  std::printf("%zu checks, %s\n", results.size(), ok ? "all passed" : "FAILURES");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commutator-bound experiments for finite quantum spin systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned threads = 1;
  std::int64_t seed = -1;

  for (const char* name : {"simulate", "bound", "lightcone", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads, "worker threads for grid sweeps (0 = auto)");
    sub->add_option("--seed", seed, "seed override for randomized checks");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    Experiment ex = load_experiment(config_path);
    if (!out_dir.empty()) ex.out_dir = out_dir;
    if (seed >= 0) ex.seed = static_cast<std::uint64_t>(seed);

    if (app.got_subcommand("simulate")) return cmd_simulate(ex, threads);
    if (app.got_subcommand("bound")) return cmd_bound(ex, threads);
    if (app.got_subcommand("lightcone")) return cmd_lightcone(ex, threads);
    return cmd_verify(ex, threads);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
