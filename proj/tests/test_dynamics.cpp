#include "doctest.h"

#include <cmath>
#include <random>

#include "lrkit/dynamics.hpp"
#include "lrkit/model.hpp"
#include "support.hpp"

using namespace lrkit;

namespace {

DynamicsEngine chain_engine(int length, double coupling, double field) {
  MetricGraph g = lrtest::chain(length);
  return DynamicsEngine::diagonalize(lrtest::chain_hamiltonian(g, coupling, field));
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("diagonalize: spectra of simple hamiltonians") {
  Observable s3 = pauli(3, 0);
  DynamicsEngine e = DynamicsEngine::diagonalize(s3);
  CHECK(e.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-14));

  Observable zero = make_observable(Eigen::MatrixXcd::Zero(4, 4), {0, 1});
  DynamicsEngine ez = DynamicsEngine::diagonalize(zero);
  CHECK(ez.eigenvalues().cwiseAbs().maxCoeff() == 0.0);

  DynamicsEngine e2 = chain_engine(2, 1.0, 0.0);
  CHECK(e2.eigenvalues()(0) == doctest::Approx(-3.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(e2.eigenvalues()(i) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  Eigen::MatrixXcd not_herm = lrtest::random_matrix(rng, 4);
  CHECK_THROWS_AS(DynamicsEngine::diagonalize(make_observable(not_herm, {0, 1})),
                  std::domain_error);
}

TEST_CASE("engine invariants: unitary eigenbasis and reconstruction") {
  DynamicsEngine e = chain_engine(4, 1.0, 0.5);
  const Eigen::Index n = e.eigenvectors().rows();
  CHECK((e.eigenvectors().adjoint() * e.eigenvectors() -
         Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
  Eigen::MatrixXcd rebuilt =
      e.eigenvectors() *
      e.eigenvalues().asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
      e.eigenvectors().adjoint();
  CHECK(operator_norm(Eigen::MatrixXcd(rebuilt - e.hamiltonian().matrix)) <= 1e-10);
}

TEST_CASE("evolution at t = 0 is the exact embedding") {
  DynamicsEngine e = chain_engine(3, 1.0, 0.5);
  Observable a = pauli(1, 1);
  const Observable evolved = e.evolve(a, 0.0);
  const Observable emb = embed(a, e.volume());
  CHECK((evolved.matrix - emb.matrix).cwiseAbs().maxCoeff() == 0.0);
  CHECK(evolved.support == a.support);
}

TEST_CASE("evolution is an isometry and fixes the hamiltonian") {
  DynamicsEngine e = chain_engine(4, 1.0, 0.5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> tdist(-2.0, 2.0);
  for (int trial = 0; trial < 6; ++trial) {
    Observable a = make_observable(lrtest::random_matrix(rng, 4), {1, 2});
    const double t = tdist(rng);
    CHECK(operator_norm(e.evolve(a, t)) ==
          doctest::Approx(operator_norm(a)).epsilon(1e-10));
  }
  const Observable fixed = e.evolve(e.hamiltonian(), 1.3);
  CHECK(operator_norm(Eigen::MatrixXcd(fixed.matrix - e.hamiltonian().matrix)) <= 1e-10);
}

TEST_CASE("group law and automorphism property") {
  DynamicsEngine e = chain_engine(4, 1.0, 0.3);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> tdist(-1.5, 1.5);
  for (int trial = 0; trial < 6; ++trial) {
    Observable a = make_observable(lrtest::random_hermitian(rng, 2), {0});
    Observable b = make_observable(lrtest::random_hermitian(rng, 2), {2});
    const double s = tdist(rng), t = tdist(rng);

    const Observable two_step = e.evolve(e.evolve(a, s), t);
    const Observable one_step = e.evolve(a, s + t);
    CHECK(operator_norm(Eigen::MatrixXcd(two_step.matrix - one_step.matrix)) <= 1e-9);

    Observable ab;
    ab.matrix = embed(a, e.volume()).matrix * embed(b, e.volume()).matrix;
    ab.domain = e.volume();
    ab.support = e.volume();
    ab.site_dims.assign(ab.domain.size(), 2);
    const Eigen::MatrixXcd split = e.evolve(a, t).matrix * e.evolve(b, t).matrix;
    CHECK(operator_norm(Eigen::MatrixXcd(e.evolve(ab, t).matrix - split)) <= 1e-9);
    CHECK(is_hermitian(e.evolve(a, t).matrix, 1e-9));
  }
}

TEST_CASE("taylor series: identity cases and the oracle cross-check") {
  MetricGraph g = lrtest::chain(2);
  Observable h = lrtest::chain_hamiltonian(g, 1.0, 0.5);
  Observable a = pauli(1, 0);

  const auto at_zero = evolve_taylor(h, a, 0.0, 8);
  CHECK((at_zero.observable.matrix - embed(a, lrtest::iota_sites(2)).matrix)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // commuting pair: the whole series collapses
  Observable h_comm = make_observable(Eigen::MatrixXcd(pauli_matrix(3)), {0});
  Observable a_comm = pauli(3, 0);
  const auto collapsed = evolve_taylor(h_comm, a_comm, 0.07, 6);
  CHECK((collapsed.observable.matrix - pauli_matrix(3)).cwiseAbs().maxCoeff() <= 1e-12);

  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> tdist(-0.1, 0.1);
  for (int trial = 0; trial < 10; ++trial) {
    Interaction phi(1.0);
    phi.add_term({0, 1}, lrtest::random_hermitian(rng, 4), g);
    std::vector<OnSiteTerm> onsite{
        {0, Eigen::Matrix2cd(lrtest::random_hermitian(rng, 2))},
        {1, Eigen::Matrix2cd(lrtest::random_hermitian(rng, 2))}};
    Observable hr = build_hamiltonian(g, onsite, phi, lrtest::iota_sites(2));
    DynamicsEngine er = DynamicsEngine::diagonalize(hr);
    Observable ar = make_observable(lrtest::random_hermitian(rng, 2), {0});
    const double t = tdist(rng);

    const auto series = evolve_taylor(hr, ar, t, 20);
    CHECK(series.remainder_bound < 1e-9);
    const Observable exact = er.evolve(ar, t);
    CHECK(operator_norm(
              Eigen::MatrixXcd(series.observable.matrix - exact.matrix)) <= 1e-8);
  }
}

TEST_CASE("taylor series refuses when the remainder bound is too large") {
  MetricGraph g = lrtest::chain(2);
  Observable h = lrtest::chain_hamiltonian(g, 5.0, 0.0);
  Observable a = pauli(1, 0);
  try {
    evolve_taylor(h, a, 2.0, 3);
    FAIL("expected a precondition error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("remainder") != std::string::npos);
  }
}

TEST_CASE("commutator grid: exact zeros and on-site-only dynamics") {
  DynamicsEngine e = chain_engine(4, 1.0, 0.5);
  Observable a = pauli(3, 0);
  Observable b = pauli(3, 2);

  const double times0[] = {0.0};
  auto grid = e.commutator_norm_grid(a, b, times0);
  CHECK(grid[0].second == 0.0);  // disjoint supports at t = 0

  auto self = e.commutator_norm_grid(a, a, times0);
  CHECK(self[0].second == 0.0);

  // J = 0: evolution never leaves the support, so all norms stay at zero
  DynamicsEngine free = chain_engine(4, 0.0, 0.7);
  const double times[] = {0.0, 0.4, 0.9, 1.7};
  for (auto [t, norm] : free.commutator_norm_grid(pauli(1, 0), pauli(1, 3), times))
    CHECK(norm <= 1e-10);
}

TEST_CASE("grid values respect the trivial bound and are thread-invariant") {
  DynamicsEngine e = chain_engine(5, 1.0, 0.5);
  Observable a = pauli(1, 0);
  Observable b = pauli(2, 3);
  std::vector<double> times;
  for (int i = 0; i < 12; ++i) times.push_back(0.2 * i);

  auto serial = e.commutator_norm_grid(a, b, times, 1);
  auto parallel = e.commutator_norm_grid(a, b, times, 4);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(serial[i].second <= 2.0 + 1e-9);
    CHECK(serial[i].second == parallel[i].second);  // bit-identical by index
  }

  // probes with a non-diagonal matrix exercise the generic commutator path
  const Observable probes[] = {pauli(1, 3), pauli(3, 3)};
  auto scan = e.commutator_norm_scan(a, probes, times, 2);
  auto direct_x = e.commutator_norm_grid(a, probes[0], times, 1);
  auto direct_z = e.commutator_norm_grid(a, probes[1], times, 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(scan[0][i] == direct_x[i].second);
    CHECK(scan[1][i] == direct_z[i].second);
  }
}

TEST_CASE("grid norms agree with explicit evolve-and-commute values") {
  DynamicsEngine e = chain_engine(4, 0.8, 0.4);
  Observable a = pauli(1, 0);
  Observable b = pauli(2, 2);
  const double times[] = {0.3, 1.1};
  auto grid = e.commutator_norm_grid(a, b, times);
  for (auto [t, norm] : grid) {
    const Observable evolved = e.evolve(a, t);
    const Observable direct = commutator(evolved, embed(b, e.volume()), e.volume());
    CHECK(norm == doctest::Approx(operator_norm(direct)).epsilon(1e-10));
  }
}

}  // TEST_SUITE
