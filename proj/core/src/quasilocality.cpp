#include "lrkit/quasilocality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrkit {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

bool subset_of(std::span<const int> small, std::span<const int> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

LocalizationError localization_error(const DynamicsEngine& engine, const Observable& a,
                                     double t, std::span<const int> ball,
                                     const BoundContext& ctx) {
  require(ctx.graph != nullptr, "localization_error needs a graph");
  const auto& lambda = engine.volume();
  require(subset_of(a.support, ball), "ball must contain the observable support");
  require(subset_of(ball, lambda), "ball must lie inside the volume");

  const Observable evolved = engine.evolve(a, t);
  const Observable projected = conditional_expectation(evolved, ball, lambda);
  const Eigen::MatrixXcd diff = embed(projected, lambda).matrix - evolved.matrix;
  const double measured = operator_norm(diff);

  const double norm_a = operator_norm(a);
  double certified = 0.0;
  for (int y : lambda) {
    if (std::binary_search(ball.begin(), ball.end(), y)) continue;
    const int site[] = {y};
    certified += lr_bound(ctx.ev, a.support, site, ctx.f, *ctx.graph, norm_a, 1.0, t);
  }
  return LocalizationError{measured, certified};
}

LightConeReport light_cone_scan(const DynamicsEngine& engine, const Observable& a,
                                const Eigen::Matrix2cd& probe,
                                std::span<const double> distances,
                                std::span<const double> times, double threshold,
                                const BoundContext& ctx, unsigned threads) {
  require(ctx.graph != nullptr, "light_cone_scan needs a graph");
  require(times.size() >= 2, "light cone scan needs at least two time points");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], "times must be strictly increasing");

  const MetricGraph& g = *ctx.graph;
  const double norm_a = operator_norm(a);
  const double norm_b = operator_norm(Eigen::MatrixXcd(probe));
  const double trivial = 2.0 * norm_a * norm_b;
  require(threshold > 0.0 && threshold < trivial,
          "threshold must lie strictly between 0 and 2 ||A|| ||B||");

  // smallest-index probe site realizing each requested distance
  std::vector<Observable> probes;
  probes.reserve(distances.size());
  for (double d : distances) {
    int found = -1;
    for (int y : engine.volume()) {
      if (std::binary_search(a.support.begin(), a.support.end(), y)) continue;
      const int site[] = {y};
      if (double(min_distance(a.support, site, g)) == d) {
        found = y;
        break;
      }
    }
    require(found >= 0, "no volume site at requested distance " + std::to_string(d));
    probes.push_back(make_observable(probe, {found}));
  }

  const auto norms = engine.commutator_norm_scan(a, probes, times, threads);

  LightConeReport report;
  report.threshold = threshold;
  report.theoretical_velocity =
      ctx.ev.a > 0.0 ? lr_velocity(ctx.ev) : std::numeric_limits<double>::quiet_NaN();

  for (std::size_t p = 0; p < probes.size(); ++p) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      LightConeCell cell;
      cell.distance = distances[p];
      cell.t = times[i];
      cell.measured_norm = norms[p][i];
      cell.bound_22 = lr_bound(ctx.ev, a.support, probes[p].support, ctx.f, g, norm_a,
                               norm_b, times[i]);
      cell.bound_24 = ctx.ev.a > 0.0
                          ? lr_bound_corollary(ctx.ev, a.support, probes[p].support, g,
                                               norm_a, norm_b, times[i])
                          : std::numeric_limits<double>::quiet_NaN();
      report.grid.push_back(cell);
    }

    // earliest crossing by linear interpolation on the straddling grid cell
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (norms[p][i] < threshold) continue;
      double when = times[i];
      if (i > 0) {
        const double run = norms[p][i] - norms[p][i - 1];
        if (run > 0.0)
          when = times[i - 1] +
                 (threshold - norms[p][i - 1]) * (times[i] - times[i - 1]) / run;
      }
      report.crossings.push_back(LightConeCrossing{distances[p], when});
      break;
    }
  }

  if (report.crossings.size() >= 3) {
    double st = 0.0, sd = 0.0;
    for (const auto& c : report.crossings) {
      st += c.time;
      sd += c.distance;
    }
    const double n = double(report.crossings.size());
    const double mt = st / n, md = sd / n;
    double cov = 0.0, var = 0.0;
    for (const auto& c : report.crossings) {
      cov += (c.time - mt) * (c.distance - md);
      var += (c.time - mt) * (c.time - mt);
    }
    if (var > 0.0) report.fitted_velocity = cov / var;
  }
  return report;
}

}  // namespace lrkit
