#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

#include "lrkit/algebra.hpp"

namespace lrkit {

/// Exactly diagonalized local Hamiltonian powering the Heisenberg picture
/// evolution A -> e^{itH} A e^{-itH}. Immutable after construction; every
/// member operation is pure and safe to call concurrently.
class DynamicsEngine {
 public:
  /// Diagonalizes a hermitian observable (hermitian within 1e-10). Verifies
  /// unitarity of the eigenbasis and reconstruction of H to 1e-10.
  static DynamicsEngine diagonalize(const Observable& hamiltonian);

  const Observable& hamiltonian() const { return hamiltonian_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
  const std::vector<int>& volume() const { return hamiltonian_.domain; }

  /// e^{itH} embed(a) e^{-itH}, computed with phase factors in the eigenbasis.
  /// t = 0 returns embed(a, volume) exactly; for t != 0 the declared support
  /// widens to the whole volume.
  Observable evolve(const Observable& a, double t) const;

  /// ||[evolve(a, t), embed(b)]|| for every listed time, in input order.
  std::vector<std::pair<double, double>> commutator_norm_grid(
      const Observable& a, const Observable& b, std::span<const double> times,
      unsigned threads = 1) const;

  /// Same sweep over several probes at once; result[p][i] pairs probes[p]
  /// with times[i]. Cells are computed independently and stored by index, so
  /// the output is identical for every thread count.
  std::vector<std::vector<double>> commutator_norm_scan(
      const Observable& a, std::span<const Observable> probes,
      std::span<const double> times, unsigned threads = 1) const;

 private:
  DynamicsEngine() = default;

  Observable hamiltonian_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

/// Truncated nested-commutator series sum_k (it)^k/k! ad_H^k(A) together with
/// the a-priori remainder bound 2||A|| (2||H|| |t|)^{order+1} / (order+1)!.
struct TaylorEvolved {
  Observable observable;
  double remainder_bound;
};

/// Independent propagation oracle. Refuses to run (domain error carrying the
/// computed bound) unless the remainder bound is below 1e-9.
TaylorEvolved evolve_taylor(const Observable& hamiltonian, const Observable& a,
                            double t, int order);

}  // namespace lrkit
