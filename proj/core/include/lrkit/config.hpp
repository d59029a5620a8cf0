#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lrkit/quasilocality.hpp"

namespace lrkit {

/// Hard cap on the simulated volume; dimension 2^12 = 4096 keeps dense
/// eigendecompositions exact and desk-sized. Configs may override it
/// explicitly and own the consequences.
inline constexpr int kSiteCap = 12;

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Volume larger than the cap without an explicit override.
class ResourceCapError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string kind;      ///< "heisenberg" or "custom"
  double coupling = 0.0;  ///< J
  double field = 0.0;     ///< h
};

/// A fully assembled experiment: graph, model, decay data, observables and
/// grids, plus the bookkeeping the CLI commands need.
struct Experiment {
  MetricGraph graph;
  DecayFunction decay;  ///< carries the configured weight a
  std::pair<double, double> a_interval{1e-3, 10.0};
  Interaction phi;
  std::vector<OnSiteTerm> onsite;
  ModelSpec model;

  std::optional<Observable> observable;    ///< A
  std::optional<Eigen::Matrix2cd> probe;   ///< single-site B template
  std::vector<int> probe_sites;            ///< canonical indices for simulate
  std::vector<double> times;

  std::vector<double> lightcone_distances;
  std::optional<double> lightcone_threshold;

  std::optional<double> anharmonic_phi_sup;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool override_site_cap = false;
  double bound_scale = 1.0;  ///< verification negative-control hook

  /// Certified bound ingredients: ||Phi||_a on this graph, the analytic
  /// convolution constant and ||F|| from the converged lattice sums. The
  /// returned context points at this->graph.
  BoundContext bound_context() const;

  /// Throws ResourceCapError when the volume exceeds the cap and the config
  /// does not override it.
  void require_dynamics_capacity() const;
};

Experiment parse_experiment(const std::string& json_text);
Experiment load_experiment(const std::filesystem::path& file);

/// Inclusive evenly spaced grid, count >= 2.
std::vector<double> linspace(double start, double stop, int count);

}  // namespace lrkit
