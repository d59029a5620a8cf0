#pragma once

#include <span>
#include <utility>
#include <vector>

namespace lrkit {

/// Integer lattice coordinates; length equals the graph dimension.
using Site = std::vector<int>;

/// A finite truncation of Z^nu carrying the L1 metric. Sites are stored in
/// lexicographic order, and that order fixes the tensor-factor ordering of
/// every observable built on the graph.
class MetricGraph {
 public:
  /// All sites of the box [-radius, radius]^nu.
  static MetricGraph box(int nu, int radius);
  /// An explicit site list; sorted and checked for duplicates.
  static MetricGraph from_sites(int nu, std::vector<Site> sites);

  int dimension() const { return nu_; }
  int size() const { return static_cast<int>(sites_.size()); }
  const Site& site(int index) const;
  const std::vector<Site>& sites() const { return sites_; }

  /// Canonical index of a coordinate tuple; throws std::domain_error for
  /// sites outside the graph.
  int index_of(const Site& s) const;
  bool contains(const Site& s) const;

  int distance(int i, int j) const;
  int distance(const Site& x, const Site& y) const;

 private:
  MetricGraph(int nu, std::vector<Site> sites);

  int nu_;
  std::vector<Site> sites_;
};

/// F_a(r) = e^{-a r} (1+r)^{-(nu+epsilon)}: strictly positive, non-increasing,
/// uniformly integrable over Z^nu. weight_a = 0 gives the bare power law.
class DecayFunction {
 public:
  DecayFunction(int nu, double epsilon, double weight_a = 0.0);

  double operator()(double r) const;

  DecayFunction with_weight(double a) const { return {nu_, epsilon_, a}; }
  DecayFunction bare() const { return with_weight(0.0); }

  int nu() const { return nu_; }
  double epsilon() const { return epsilon_; }
  double weight() const { return weight_a_; }

 private:
  int nu_;
  double epsilon_;
  double weight_a_;
};

/// max_x sum_y F_a(d(x,y)) over the truncation. Monotone under graph
/// inclusion and bounded by the full-lattice norm.
double f_norm(const DecayFunction& f, const MetricGraph& g);

/// Smallest C with sum_z F_a(d(x,z)) F_a(d(z,y)) <= C F_a(d(x,y)) on the
/// truncation: a lower estimate of the lattice-wide convolution constant.
double convolution_constant_empirical(const DecayFunction& f, const MetricGraph& g);

/// The certified constant 2^{nu+eps+1} max_x sum_y F(d(x,y)) with the bare F,
/// evaluated on the truncation.
double convolution_constant_analytic(const DecayFunction& f, const MetricGraph& g);

/// Certified upper estimate of ||F|| = sum_{x in Z^nu} (1+|x|_1)^{-(nu+eps)}.
struct LatticeFNorm {
  double value;        ///< partial sum plus integral tail; >= the true norm
  double tail;         ///< the integral correction added past the last shell
  double uncertainty;  ///< bracket width around the true sum (<= tol)
  long long shells;    ///< number of radial shells summed
};

LatticeFNorm lattice_f_norm(int nu, double epsilon, double tol = 1e-10);

/// 2^{nu+eps+1} times the converged lattice norm; the constant used in every
/// certified bound (valid for all weights a >= 0 since C_a <= C).
double lattice_convolution_constant(int nu, double epsilon, double tol = 1e-10);

/// Number of lattice points of Z^nu at L1 distance exactly r.
double shell_count(int nu, long long r);

/// Checks w(r1+r2) >= w(r1) w(r2) - tol for w(r) = e^{-a r} on every sample.
bool verify_log_superadditive(double weight_a,
                              std::span<const std::pair<double, double>> samples,
                              double tol = 1e-12);

}  // namespace lrkit
