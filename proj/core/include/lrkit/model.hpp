#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrkit/algebra.hpp"
#include "lrkit/geometry.hpp"

namespace lrkit {

/// Single-site hermitian term of the on-site Hamiltonian.
struct OnSiteTerm {
  int site;
  Eigen::Matrix2cd matrix;
};

/// A map from finite site subsets to hermitian terms. Zero matrices are never
/// stored; an optional range R promises that every stored subset has diameter
/// at most R.
class Interaction {
 public:
  Interaction() = default;
  explicit Interaction(std::optional<double> range) : range_(range) {}

  /// Adds a term on the given (sorted, distinct) sites. Exactly-zero matrices
  /// are skipped. Throws on non-hermitian matrices, bad dimensions, or a
  /// support wider than the declared range.
  void add_term(std::vector<int> sites, Eigen::MatrixXcd matrix, const MetricGraph& g);

  const std::map<std::vector<int>, Eigen::MatrixXcd>& terms() const { return terms_; }
  std::optional<double> range() const { return range_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

 private:
  std::map<std::vector<int>, Eigen::MatrixXcd> terms_;
  std::optional<double> range_;
};

/// J (S1 S1 + S2 S2 + S3 S3) on a pair of sites; eigenvalues {J, J, J, -3J}.
Eigen::Matrix4cd heisenberg_exchange(double coupling);

/// Nearest-neighbor exchange terms J (S1 S1 + S2 S2 + S3 S3) on every pair at
/// distance 1; empty when J = 0; declared range 1.
Interaction heisenberg_interaction(const MetricGraph& g, double coupling);

/// H = sum_x onsite_x + sum_{X in lambda} Phi(X) with open boundary
/// conditions: interaction terms not contained in lambda are dropped, and
/// on-site terms for sites outside lambda are recorded in `warnings` (when
/// given) instead of raising.
Observable build_hamiltonian(const MetricGraph& g, std::span<const OnSiteTerm> onsite,
                             const Interaction& phi, std::span<const int> lambda,
                             std::vector<std::string>* warnings = nullptr);

/// sup over ordered site pairs (x, y) of sum_{X containing x and y} ||Phi(X)||
/// divided by F_a(d(x, y)); pairs covered by no term contribute zero.
double interaction_norm(const Interaction& phi, const DecayFunction& f,
                        const MetricGraph& g);

}  // namespace lrkit
