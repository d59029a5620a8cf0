#pragma once

// Shared helpers for the unit suites: seeded random observables, a
// brute-force Kronecker oracle independent of the embedding code under test,
// and chain construction shortcuts.

#include <random>
#include <vector>

#include "lrkit/config.hpp"
#include "lrkit/model.hpp"

namespace lrtest {

inline lrkit::MetricGraph chain(int length) {
  std::vector<lrkit::Site> sites;
  for (int i = 0; i < length; ++i) sites.push_back({i});
  return lrkit::MetricGraph::from_sites(1, std::move(sites));
}

inline std::vector<int> iota_sites(int length) {
  std::vector<int> v(length);
  for (int i = 0; i < length; ++i) v[i] = i;
  return v;
}

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  return g;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::MatrixXcd g = random_matrix(rng, dim);
  return 0.5 * (g + g.adjoint()).eval();
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::MatrixXcd identity(Eigen::Index dim) {
  return Eigen::MatrixXcd::Identity(dim, dim);
}

// Heisenberg chain Hamiltonian over all graph sites.
inline lrkit::Observable chain_hamiltonian(const lrkit::MetricGraph& g, double coupling,
                                           double field) {
  lrkit::Interaction phi = lrkit::heisenberg_interaction(g, coupling);
  std::vector<lrkit::OnSiteTerm> onsite;
  if (field != 0.0)
    for (int s = 0; s < g.size(); ++s)
      onsite.push_back({s, field * lrkit::pauli_matrix(3)});
  std::vector<int> lambda = iota_sites(g.size());
  return lrkit::build_hamiltonian(g, onsite, phi, lambda);
}

}  // namespace lrtest
