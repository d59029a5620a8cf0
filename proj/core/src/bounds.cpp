#include "lrkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lrkit {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

bool sets_disjoint(std::span<const int> x_set, std::span<const int> y_set) {
  for (int x : x_set)
    if (std::binary_search(y_set.begin(), y_set.end(), x)) return false;
  return true;
}

void validate(const BoundEvaluation& ev) {
  require(ev.a >= 0.0 && ev.phi_norm >= 0.0 && ev.f_norm_bare >= 0.0,
          "bound evaluation fields must be non-negative");
  require(ev.conv_constant > 0.0, "convolution constant must be positive");
}

}  // namespace

double growth_factor(const BoundEvaluation& ev, double t) {
  validate(ev);
  const double grown = std::exp(2.0 * ev.phi_norm * ev.conv_constant * std::abs(t));
  return ev.disjoint ? (grown - 1.0) / ev.conv_constant : grown / ev.conv_constant;
}

int min_distance(std::span<const int> x_set, std::span<const int> y_set,
                 const MetricGraph& g) {
  require(!x_set.empty() && !y_set.empty(), "distance between empty site sets");
  int best = std::numeric_limits<int>::max();
  for (int x : x_set)
    for (int y : y_set) best = std::min(best, g.distance(x, y));
  return best;
}

double lr_bound(const BoundEvaluation& ev, std::span<const int> x_set,
                std::span<const int> y_set, const DecayFunction& f,
                const MetricGraph& g, double norm_a, double norm_b, double t) {
  require(norm_a >= 0.0 && norm_b >= 0.0, "observable norms must be non-negative");
  BoundEvaluation local = ev;
  local.disjoint = sets_disjoint(x_set, y_set);
  double weighted = 0.0;
  for (int x : x_set)
    for (int y : y_set) weighted += f(g.distance(x, y));
  return 2.0 * norm_a * norm_b * std::min(1.0, growth_factor(local, t) * weighted);
}

double lr_bound_corollary(const BoundEvaluation& ev, std::span<const int> x_set,
                          std::span<const int> y_set, const MetricGraph& g,
                          double norm_a, double norm_b, double t) {
  validate(ev);
  require(ev.a > 0.0, "the corollary bound requires a > 0");
  require(sets_disjoint(x_set, y_set), "the corollary bound requires disjoint supports");
  const double d = min_distance(x_set, y_set, g);
  const double v = lr_velocity(ev);
  const double cardinality = std::min(x_set.size(), y_set.size());
  return 2.0 * norm_a * norm_b * ev.f_norm_bare / ev.conv_constant * cardinality *
         std::exp(-ev.a * (d - v * std::abs(t)));
}

double lr_velocity(const BoundEvaluation& ev) {
  validate(ev);
  require(ev.a > 0.0, "the velocity requires a > 0");
  return 2.0 * ev.phi_norm * ev.conv_constant / ev.a;
}

VelocityOptimum optimal_velocity(const Interaction& phi, const DecayFunction& f,
                                 const MetricGraph& g, double a_lo, double a_hi,
                                 double conv_constant) {
  require(a_lo >= 0.0 && a_lo < a_hi, "velocity search needs 0 <= a_lo < a_hi");
  require(conv_constant > 0.0, "convolution constant must be positive");

  const auto objective = [&](double a) {
    return 2.0 * interaction_norm(phi, f.with_weight(a), g) * conv_constant / a;
  };

  const double gr = (1.0 + std::sqrt(5.0)) / 2.0;
  double lo = a_lo, hi = a_hi;
  double c = hi - (hi - lo) / gr;
  double d = lo + (hi - lo) / gr;
  double fc = objective(c);
  double fd = objective(d);
  while (hi - lo > 1e-6 * std::max(1.0, 0.5 * (hi + lo))) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) / gr;
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) / gr;
      fd = objective(d);
    }
  }
  const double a_star = 0.5 * (lo + hi);
  return VelocityOptimum{a_star, objective(a_star)};
}

double heisenberg_velocity_bound(double coupling, int nu, double epsilon,
                                 double f_norm_bare) {
  require(coupling >= 0.0, "coupling must be non-negative");
  return anharmonic_velocity_bound(3.0 * coupling, nu, epsilon, f_norm_bare);
}

double anharmonic_velocity_bound(double phi_sup, int nu, double epsilon,
                                 double f_norm_bare) {
  require(phi_sup >= 0.0, "pair potential sup norm must be non-negative");
  return phi_sup * std::numbers::e_v<double> *
         std::pow(2.0, 2.0 * (nu + epsilon + 1.0)) * f_norm_bare;
}

}  // namespace lrkit
