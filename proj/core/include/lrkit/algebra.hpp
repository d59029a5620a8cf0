#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace lrkit {

/// Absolute tolerance for the hermitian / anti-hermitian entry checks.
inline constexpr double kHermTol = 1e-12;

/// A complex matrix acting on the spin-1/2 factors of `domain`, together with
/// its declared support. For a freshly built local observable domain and
/// support coincide; embedding pads the domain while the declared support
/// stays put, and evolution widens the declared support to the whole volume.
///
/// Basis convention: product basis ordered lexicographically over the sorted
/// domain, first domain site most significant.
struct Observable {
  Eigen::MatrixXcd matrix;
  std::vector<int> domain;     ///< sorted canonical site indices, dim = 2^|domain|
  std::vector<int> support;    ///< declared support, subset of domain
  std::vector<int> site_dims;  ///< local dimension per domain site (all 2)

  Eigen::Index dim() const { return matrix.rows(); }
  double norm_a() const;  ///< spectral norm, see operator_norm
};

/// Builds an observable whose domain and support are both `sites`.
/// Validates sortedness, distinctness and the dimension product.
Observable make_observable(Eigen::MatrixXcd matrix, std::vector<int> sites);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = kHermTol);

/// The three spin matrices for k = 1, 2, 3.
Eigen::Matrix2cd pauli_matrix(int k);
Observable pauli(int k, int site = 0);

/// A tensor identity on lambda \ domain(a); declared support is unchanged.
Observable embed(const Observable& a, std::span<const int> lambda);

/// embed(a)·embed(b) - embed(b)·embed(a) over lambda; support declared lambda.
Observable commutator(const Observable& a, const Observable& b,
                      std::span<const int> lambda);

/// Largest singular value. Hermitian and anti-hermitian inputs go through a
/// direct eigendecomposition, everything else through eig(A* A).
double operator_norm(const Eigen::MatrixXcd& m);
double operator_norm(const Observable& a);

/// Spectral norm via eig(A* A) unconditionally; reference route for tests.
double operator_norm_via_gram(const Eigen::MatrixXcd& m);

/// Normalized partial trace of embed(a, lambda) onto the `keep` factor: the
/// canonical norm-contractive projection onto the subalgebra of `keep`.
/// When the declared support already sits inside `keep` the restriction is
/// exact (no floating-point averaging).
Observable conditional_expectation(const Observable& a, std::span<const int> keep,
                                   std::span<const int> lambda);

}  // namespace lrkit
