#include "lrkit/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "lrkit/parallel.hpp"

namespace lrkit {

namespace {

using Complex = std::complex<double>;

constexpr double kUnitaryTol = 1e-10;

bool exactly_diagonal(const Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{}) return false;
  return true;
}

}  // namespace

DynamicsEngine DynamicsEngine::diagonalize(const Observable& hamiltonian) {
  if ((hamiltonian.matrix - hamiltonian.matrix.adjoint()).cwiseAbs().maxCoeff() >
      kUnitaryTol)
    throw std::domain_error("diagonalize: hamiltonian is not hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian.matrix);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: eigensolver failed");

  DynamicsEngine e;
  e.hamiltonian_ = hamiltonian;
  e.eigenvalues_ = es.eigenvalues();
  e.eigenvectors_ = es.eigenvectors();

  const Eigen::Index n = e.eigenvectors_.rows();
  const double ortho = (e.eigenvectors_.adjoint() * e.eigenvectors_ -
                        Eigen::MatrixXcd::Identity(n, n))
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > kUnitaryTol)
    throw std::runtime_error("diagonalize: eigenbasis lost unitarity");
  const Eigen::MatrixXcd rebuilt = e.eigenvectors_ *
                                   e.eigenvalues_.asDiagonal().toDenseMatrix().cast<Complex>() *
                                   e.eigenvectors_.adjoint();
  if (operator_norm(Eigen::MatrixXcd(rebuilt - hamiltonian.matrix)) > kUnitaryTol)
    throw std::runtime_error("diagonalize: spectral reconstruction failed");
  return e;
}

Observable DynamicsEngine::evolve(const Observable& a, double t) const {
  Observable emb = embed(a, volume());
  if (t == 0.0) return emb;

  const Eigen::Index n = emb.dim();
  Eigen::VectorXcd phase(n);
  for (Eigen::Index i = 0; i < n; ++i) phase(i) = std::polar(1.0, t * eigenvalues_(i));

  Eigen::MatrixXcd w = eigenvectors_.adjoint() * emb.matrix * eigenvectors_;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) w(i, j) *= phase(i) * std::conj(phase(j));

  Observable out;
  out.matrix = eigenvectors_ * w * eigenvectors_.adjoint();
  out.domain = volume();
  out.support = volume();  // true support generically fills the volume
  out.site_dims.assign(out.domain.size(), 2);
  return out;
}

std::vector<std::vector<double>> DynamicsEngine::commutator_norm_scan(
    const Observable& a, std::span<const Observable> probes,
    std::span<const double> times, unsigned threads) const {
  const Observable emb_a = embed(a, volume());
  const Eigen::Index n = emb_a.dim();

  std::vector<Eigen::MatrixXcd> emb_b;
  std::vector<bool> diag_b;
  emb_b.reserve(probes.size());
  for (const Observable& b : probes) {
    emb_b.push_back(embed(b, volume()).matrix);
    diag_b.push_back(exactly_diagonal(emb_b.back()));
  }

  bool any_moving = false;
  for (double t : times) any_moving |= (t != 0.0);
  Eigen::MatrixXcd w;
  if (any_moving) w = eigenvectors_.adjoint() * emb_a.matrix * eigenvectors_;

  std::vector<std::vector<double>> norms(probes.size(),
                                         std::vector<double>(times.size(), 0.0));
  parallel_for(times.size(), threads, [&](std::size_t ti) {
    const double t = times[ti];
    Eigen::MatrixXcd evolved;
    if (t == 0.0) {
      evolved = emb_a.matrix;
    } else {
      Eigen::VectorXcd phase(n);
      for (Eigen::Index i = 0; i < n; ++i)
        phase(i) = std::polar(1.0, t * eigenvalues_(i));
      Eigen::MatrixXcd wt = w;
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) wt(i, j) *= phase(i) * std::conj(phase(j));
      evolved = eigenvectors_ * wt * eigenvectors_.adjoint();
    }
    for (std::size_t p = 0; p < emb_b.size(); ++p) {
      Eigen::MatrixXcd comm;
      if (diag_b[p]) {
        // [T, B] with diagonal B is an entrywise scaling, bit-identical to
        // the matrix-product route
        comm.resize(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
          for (Eigen::Index i = 0; i < n; ++i)
            comm(i, j) = evolved(i, j) * emb_b[p](j, j) - emb_b[p](i, i) * evolved(i, j);
      } else {
        comm = evolved * emb_b[p] - emb_b[p] * evolved;
      }
      norms[p][ti] = operator_norm(comm);
    }
  });
  return norms;
}

std::vector<std::pair<double, double>> DynamicsEngine::commutator_norm_grid(
    const Observable& a, const Observable& b, std::span<const double> times,
    unsigned threads) const {
  const Observable probes[] = {b};
  auto norms = commutator_norm_scan(a, probes, times, threads);
  std::vector<std::pair<double, double>> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out.emplace_back(times[i], norms[0][i]);
  return out;
}

TaylorEvolved evolve_taylor(const Observable& hamiltonian, const Observable& a,
                            double t, int order) {
  if (order < 1) throw std::domain_error("evolve_taylor: order must be positive");
  const auto& lambda = hamiltonian.domain;
  Observable emb = embed(a, lambda);

  const double norm_h = operator_norm(hamiltonian);
  const double norm_a = operator_norm(emb);

  // remainder of the exponential series for ad_H after `order` terms
  double bound = 2.0 * norm_a;
  for (int k = 1; k <= order + 1; ++k) bound *= (std::abs(t) * 2.0 * norm_h) / k;
  if (!(bound < 1e-9))
    throw std::domain_error(
        "evolve_taylor: remainder bound " + std::to_string(bound) +
        " exceeds 1e-9; shrink |t| or raise the order");

  Eigen::MatrixXcd sum = emb.matrix;
  Eigen::MatrixXcd nested = emb.matrix;
  Complex coeff{1.0, 0.0};
  const Complex it{0.0, t};
  for (int k = 1; k <= order; ++k) {
    nested = hamiltonian.matrix * nested - nested * hamiltonian.matrix;
    coeff *= it / double(k);
    sum += coeff * nested;
  }

  TaylorEvolved out;
  out.observable.matrix = std::move(sum);
  out.observable.domain = lambda;
  out.observable.support = lambda;
  out.observable.site_dims.assign(lambda.size(), 2);
  out.remainder_bound = bound;
  return out;
}

}  // namespace lrkit
