#include "doctest.h"

#include <complex>
#include <random>

#include "lrkit/algebra.hpp"
#include "support.hpp"

using namespace lrkit;
using lrtest::identity;
using lrtest::kron;
using Complex = std::complex<double>;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("spin matrices have the standard entries") {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  CHECK(pauli_matrix(1) == s1);
  CHECK(pauli_matrix(2) == s2);
  CHECK(pauli_matrix(3) == s3);
  CHECK_THROWS_AS(pauli_matrix(0), std::domain_error);
  CHECK_THROWS_AS(pauli_matrix(4), std::domain_error);

  for (int k = 1; k <= 3; ++k) {
    CHECK(is_hermitian(pauli_matrix(k)));
    CHECK(operator_norm(pauli(k, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("embedding pads with identities in canonical order") {
  const std::vector<int> lam{0, 1};

  Observable s3_alone = pauli(3, 0);
  CHECK(embed(s3_alone, std::vector<int>{0}).matrix == s3_alone.matrix);

  // 1 (x) S1 in the two-site basis, first site most significant
  Observable s1_at_1 = pauli(1, 1);
  Eigen::MatrixXcd expected(4, 4);
  expected << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  const Observable e = embed(s1_at_1, lam);
  CHECK(max_abs(e.matrix - expected) == 0.0);
  CHECK(e.support == std::vector<int>{1});
  CHECK(e.domain == lam);

  CHECK_THROWS_AS(embed(pauli(1, 5), lam), std::domain_error);
}

TEST_CASE("embedding agrees with a brute-force kronecker oracle") {
  std::mt19937_64 rng(2024);
  const std::vector<int> lam{0, 1, 2, 3, 4};
  for (int trial = 0; trial < 12; ++trial) {
    // pick one or two support sites and compare against explicit kron products
    const int a_site = int(rng() % 5);
    Eigen::MatrixXcd m2 = lrtest::random_matrix(rng, 2);
    Observable single = make_observable(m2, {a_site});
    Eigen::MatrixXcd oracle = identity(1);
    for (int s = 0; s < 5; ++s)
      oracle = kron(oracle, s == a_site ? m2 : identity(2));
    CHECK(max_abs(embed(single, lam).matrix - oracle) == 0.0);
  }

  // two-site support with a non-factorizing matrix
  Eigen::MatrixXcd m4 = lrtest::random_matrix(rng, 4);
  Observable pair_obs = make_observable(m4, {1, 3});
  // oracle: permutationless build through index arithmetic
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(32, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      auto bit = [](int word, int pos) { return (word >> (4 - pos)) & 1; };
      if (bit(i, 0) != bit(j, 0) || bit(i, 2) != bit(j, 2) || bit(i, 4) != bit(j, 4))
        continue;
      const int row = 2 * bit(i, 1) + bit(i, 3);
      const int col = 2 * bit(j, 1) + bit(j, 3);
      big(i, j) = m4(row, col);
    }
  CHECK(max_abs(embed(pair_obs, lam).matrix - big) == 0.0);
}

TEST_CASE("embedding preserves spectral norm and hermiticity") {
  std::mt19937_64 rng(99);
  const std::vector<int> lam{0, 1, 2, 3};
  for (int trial = 0; trial < 8; ++trial) {
    Observable a = make_observable(lrtest::random_hermitian(rng, 4), {1, 2});
    const Observable e = embed(a, lam);
    CHECK(is_hermitian(e.matrix));
    CHECK(operator_norm(e) == doctest::Approx(operator_norm(a)).epsilon(1e-12));
  }
}

TEST_CASE("commutators: disjoint supports vanish exactly, same-site algebra") {
  const std::vector<int> lam{0, 1};
  const Observable c = commutator(pauli(1, 0), pauli(3, 1), lam);
  CHECK(max_abs(c.matrix) == 0.0);
  CHECK(c.support == lam);

  // [S1, S2] = 2i S3 by direct 2x2 multiplication
  const Observable c12 = commutator(pauli(1, 0), pauli(2, 0), std::vector<int>{0});
  Eigen::Matrix2cd expected = Complex{0.0, 2.0} * pauli_matrix(3);
  CHECK(max_abs(c12.matrix - expected) <= 1e-15);

  std::mt19937_64 rng(5);
  Observable a = make_observable(lrtest::random_matrix(rng, 4), {0, 1});
  CHECK(max_abs(commutator(a, a, lam).matrix) == 0.0);
}

TEST_CASE("disjoint spin pairs commute exactly on six sites") {
  const std::vector<int> lam{0, 1, 2, 3, 4, 5};
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      if (x == y) continue;
      for (int k1 = 1; k1 <= 3; ++k1)
        for (int k2 = 1; k2 <= 3; ++k2) {
          const Observable c = commutator(pauli(k1, x), pauli(k2, y), lam);
          CHECK(max_abs(c.matrix) == 0.0);
        }
    }
}

TEST_CASE("operator norm: exact values and route agreement") {
  CHECK(operator_norm(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(4, 4))) == 0.0);

  // two-site exchange term: eigenvalues {1, 1, 1, -3}
  Observable exchange = make_observable(heisenberg_exchange(1.0), {0, 1});
  CHECK(operator_norm(exchange) == doctest::Approx(3.0).epsilon(1e-13));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd m = lrtest::random_matrix(rng, 8);
    const double general = operator_norm_via_gram(m);
    CHECK(operator_norm(m) == doctest::Approx(general).epsilon(1e-9));

    Eigen::MatrixXcd h = lrtest::random_hermitian(rng, 8);
    CHECK(operator_norm(h) == doctest::Approx(operator_norm_via_gram(h)).epsilon(1e-9));

    Eigen::MatrixXcd anti = 0.5 * (m - m.adjoint());
    CHECK(operator_norm(anti) ==
          doctest::Approx(operator_norm_via_gram(anti)).epsilon(1e-9));
  }
}

TEST_CASE("conditional expectation: exact restriction and traceless projection") {
  const std::vector<int> lam{0, 1};

  // support inside keep: exact identity
  Observable a = pauli(3, 0);
  const Observable kept = conditional_expectation(a, std::vector<int>{0}, lam);
  CHECK(max_abs(kept.matrix - a.matrix) == 0.0);

  // tracing out a spin matrix leaves zero
  Observable s3_at_1 = pauli(3, 1);
  const Observable gone =
      conditional_expectation(embed(s3_at_1, lam), std::vector<int>{0}, lam);
  CHECK(max_abs(gone.matrix) <= 1e-15);

  CHECK_THROWS_AS(conditional_expectation(a, std::vector<int>{7}, lam),
                  std::domain_error);
}

TEST_CASE("conditional expectation is a hermitian norm contraction and projection") {
  std::mt19937_64 rng(31);
  const std::vector<int> lam{0, 1, 2};
  for (int trial = 0; trial < 10; ++trial) {
    Observable a = make_observable(lrtest::random_hermitian(rng, 8), lam);
    const std::vector<int> keep{0, 2};
    const Observable once = conditional_expectation(a, keep, lam);
    CHECK(is_hermitian(once.matrix));
    CHECK(operator_norm(once) <= operator_norm(a) + 1e-12);
    const double proj_gap =
        operator_norm(Eigen::MatrixXcd(embed(once, lam).matrix - a.matrix));
    CHECK(proj_gap <= 2.0 * operator_norm(a) + 1e-12);

    const Observable twice =
        conditional_expectation(embed(once, lam), keep, lam);
    CHECK(max_abs(twice.matrix - once.matrix) <= 1e-12);

    // B on the traced factor: projecting changes no commutator with it
    Observable b = make_observable(lrtest::random_hermitian(rng, 2), {1});
    const Eigen::MatrixXcd diff = embed(once, lam).matrix - a.matrix;
    const Eigen::MatrixXcd be = embed(b, lam).matrix;
    const double with_diff = operator_norm(Eigen::MatrixXcd(diff * be - be * diff));
    const Observable comm_a = commutator(a, b, lam);
    CHECK(with_diff == doctest::Approx(operator_norm(comm_a)).epsilon(1e-10));
  }
}

TEST_CASE("projection error is bounded by the best commutator over unitaries") {
  // maximize ||[A, 1 (x) U]|| over single-site unitaries by seeded multistart
  // ascent; the averaging representation bounds ||E(A) (x) 1 - A|| by that sup
  std::mt19937_64 rng(424242);
  const std::vector<int> lam{0, 1};
  std::uniform_real_distribution<double> angle(-3.2, 3.2);

  for (int trial = 0; trial < 4; ++trial) {
    Observable a = make_observable(lrtest::random_hermitian(rng, 4), lam);
    const Observable proj = conditional_expectation(a, std::vector<int>{0}, lam);
    const double diff_norm =
        operator_norm(Eigen::MatrixXcd(embed(proj, lam).matrix - a.matrix));

    auto comm_norm = [&](double t1, double t2, double t3) {
      // U = exp(i sum t_k S_k), a full parametrization of SU(2)
      Eigen::Matrix2cd gen = t1 * pauli_matrix(1) + t2 * pauli_matrix(2) +
                             t3 * pauli_matrix(3);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gen);
      Eigen::Matrix2cd u = es.eigenvectors() *
                           (Complex{0, 1} * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                           es.eigenvectors().adjoint();
      Observable ub = make_observable(u, {1});
      return operator_norm(commutator(a, ub, lam));
    };

    double best = 0.0;
    for (int start = 0; start < 60; ++start) {
      double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng);
      double value = comm_norm(t1, t2, t3);
      double step = 0.5;
      while (step > 1e-4) {
        bool improved = false;
        for (int dim = 0; dim < 3; ++dim)
          for (double sign : {1.0, -1.0}) {
            double u1 = t1 + (dim == 0 ? sign * step : 0.0);
            double u2 = t2 + (dim == 1 ? sign * step : 0.0);
            double u3 = t3 + (dim == 2 ? sign * step : 0.0);
            double candidate = comm_norm(u1, u2, u3);
            if (candidate > value) {
              value = candidate;
              t1 = u1;
              t2 = u2;
              t3 = u3;
              improved = true;
            }
          }
        if (!improved) step *= 0.5;
      }
      best = std::max(best, value);
    }
    CHECK(diff_norm <= best + 1e-6);
  }
}

}  // TEST_SUITE
