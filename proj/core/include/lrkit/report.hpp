#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrkit/geometry.hpp"
#include "lrkit/quasilocality.hpp"

namespace lrkit {

/// Shortest text that round-trips a double exactly (%.17g, C locale).
std::string format_g17(double v);

/// CSV with header distance,t,measured_norm,bound_22,bound_24 and one row
/// per grid cell; 17 significant digits, '.' decimal, byte-deterministic.
std::string grid_csv(const std::vector<LightConeCell>& grid);

std::string light_cone_report_json(const LightConeReport& report);

/// Machine-readable companion of the simulate grid: the certified bound
/// ingredients used for every cell.
struct SimulateSummary {
  double a = 0.0;
  double phi_norm = 0.0;
  double conv_constant = 1.0;
  double f_norm_bare = 1.0;
  std::optional<double> velocity;
  std::size_t cells = 0;
};

std::string simulate_summary_json(const SimulateSummary& summary);

/// Everything cmd_bound emits: the certified quantities next to their
/// truncation-level counterparts.
struct BoundReport {
  int nu = 1;
  double epsilon = 1.0;
  double a = 0.0;
  double coupling = 0.0;
  double phi_norm = 0.0;
  LatticeFNorm f_norm_lattice{};
  double f_norm_truncation = 0.0;
  double conv_analytic_lattice = 0.0;
  double conv_analytic_truncation = 0.0;
  double conv_empirical = 0.0;
  std::optional<double> velocity;
  std::optional<VelocityOptimum> optimum;
  std::pair<double, double> a_interval{0.0, 0.0};
  std::optional<double> heisenberg_bound;
  std::optional<double> anharmonic_bound;
};

std::string bound_report_json(const BoundReport& report);

}  // namespace lrkit
