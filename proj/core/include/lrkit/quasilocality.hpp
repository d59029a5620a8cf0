#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lrkit/bounds.hpp"
#include "lrkit/dynamics.hpp"

namespace lrkit {

/// Everything needed to evaluate the two commutator bounds on a graph.
struct BoundContext {
  DecayFunction f;          ///< decay function carrying the weight a
  const MetricGraph* graph = nullptr;
  BoundEvaluation ev;       ///< a, ||Phi||_a, C, ||F||; disjoint set per use
};

struct LocalizationError {
  double measured;   ///< ||E_ball(tau_t A) (x) 1 - tau_t A||
  double certified;  ///< sum of single-site commutator bounds over the exterior
};

/// How far the evolved observable sticks out of `ball`, measured through the
/// conditional expectation, next to the certified bound obtained by summing
/// the theorem over every exterior site. measured <= certified whenever
/// certified is below the trivial value 2||A||.
LocalizationError localization_error(const DynamicsEngine& engine, const Observable& a,
                                     double t, std::span<const int> ball,
                                     const BoundContext& ctx);

struct LightConeCell {
  double distance;
  double t;
  double measured_norm;
  double bound_22;  ///< weighted-sum bound
  double bound_24;  ///< exponential corollary bound; NaN when a = 0
};

struct LightConeCrossing {
  double distance;
  double time;  ///< earliest threshold crossing, linearly interpolated
};

struct LightConeReport {
  std::vector<LightConeCell> grid;  ///< distance-major, then time
  double threshold;
  std::vector<LightConeCrossing> crossings;
  std::optional<double> fitted_velocity;  ///< least-squares slope, >= 3 crossings
  double theoretical_velocity;            ///< 2 ||Phi||_a C / a; NaN when a = 0
};

/// Sweeps the commutator norm against a single-site probe placed at each
/// requested distance from the observable's support, fills both bounds per
/// cell, extracts threshold crossings and fits an empirical velocity.
LightConeReport light_cone_scan(const DynamicsEngine& engine, const Observable& a,
                                const Eigen::Matrix2cd& probe,
                                std::span<const double> distances,
                                std::span<const double> times, double threshold,
                                const BoundContext& ctx, unsigned threads = 1);

}  // namespace lrkit
