#pragma once

#include <span>

#include "lrkit/geometry.hpp"
#include "lrkit/model.hpp"

namespace lrkit {

/// Certified ingredients of a commutator bound: the interaction norm at
/// weight a, the convolution constant (analytic, valid for every weight),
/// the bare lattice norm ||F||, and whether the two supports are disjoint.
struct BoundEvaluation {
  double a = 0.0;
  double phi_norm = 0.0;
  double conv_constant = 1.0;
  double f_norm_bare = 1.0;
  bool disjoint = true;
};

/// The growth factor g_a(t): C^{-1}(e^{2 ||Phi||_a C |t|} - 1) for disjoint
/// supports, C^{-1} e^{2 ||Phi||_a C |t|} otherwise. Even in t; overflows
/// cleanly to +inf for large arguments.
double growth_factor(const BoundEvaluation& ev, double t);

/// 2 normA normB min[1, g_a(t) sum_{x in X, y in Y} F_a(d(x,y))]. The
/// disjointness branch is derived from X and Y, not from ev.disjoint.
double lr_bound(const BoundEvaluation& ev, std::span<const int> x_set,
                std::span<const int> y_set, const DecayFunction& f,
                const MetricGraph& g, double norm_a, double norm_b, double t);

/// (2 normA normB ||F|| / C) min(|X|, |Y|) exp(-a (d(X,Y) - v |t|)) with
/// v = 2 ||Phi||_a C / a. Requires a > 0 and disjoint supports.
double lr_bound_corollary(const BoundEvaluation& ev, std::span<const int> x_set,
                          std::span<const int> y_set, const MetricGraph& g,
                          double norm_a, double norm_b, double t);

/// The velocity 2 ||Phi||_a C / a; requires a > 0.
double lr_velocity(const BoundEvaluation& ev);

/// min over pairs of d(x, y); domain error when either set is empty.
int min_distance(std::span<const int> x_set, std::span<const int> y_set,
                 const MetricGraph& g);

struct VelocityOptimum {
  double a_star;
  double v_star;
};

/// Minimizes a -> 2 ||Phi||_a C / a over (a_lo, a_hi) by golden-section
/// search to relative width 1e-6, holding the convolution constant fixed at
/// the analytic (weight-independent) value.
VelocityOptimum optimal_velocity(const Interaction& phi, const DecayFunction& f,
                                 const MetricGraph& g, double a_lo, double a_hi,
                                 double conv_constant);

/// Closed-form optimal-velocity bound 3 J e 2^{2(nu+eps+1)} ||F|| for the
/// nearest-neighbor spin-1/2 exchange model.
double heisenberg_velocity_bound(double coupling, int nu, double epsilon,
                                 double f_norm_bare);

/// Same shape for a nearest-neighbor pair potential with sup norm phi_sup:
/// phi_sup e 2^{2(nu+eps+1)} ||F||, independent of the on-site part.
double anharmonic_velocity_bound(double phi_sup, int nu, double epsilon,
                                 double f_norm_bare);

}  // namespace lrkit
