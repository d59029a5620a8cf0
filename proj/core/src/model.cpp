#include "lrkit/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace lrkit {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

int subset_diameter(const std::vector<int>& sites, const MetricGraph& g) {
  int d = 0;
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      d = std::max(d, g.distance(sites[i], sites[j]));
  return d;
}

}  // namespace

void Interaction::add_term(std::vector<int> sites, Eigen::MatrixXcd matrix,
                           const MetricGraph& g) {
  require(!sites.empty(), "interaction term needs a non-empty site set");
  require(std::is_sorted(sites.begin(), sites.end()) &&
              std::adjacent_find(sites.begin(), sites.end()) == sites.end(),
          "interaction term sites must be sorted and distinct");
  for (int s : sites) require(s >= 0 && s < g.size(), "term site outside the graph");
  require(matrix.rows() == matrix.cols() &&
              matrix.rows() == (Eigen::Index(1) << sites.size()),
          "term matrix dimension must be 2^(number of sites)");
  if (matrix.cwiseAbs().maxCoeff() == 0.0) return;  // zero terms are absent
  require(is_hermitian(matrix), "interaction terms must be hermitian");
  if (range_)
    require(subset_diameter(sites, g) <= *range_,
            "term support exceeds the declared interaction range");
  auto [it, inserted] = terms_.emplace(std::move(sites), std::move(matrix));
  require(inserted, "duplicate interaction term");
}

Eigen::Matrix4cd heisenberg_exchange(double coupling) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int k = 1; k <= 3; ++k) {
    Eigen::Matrix2cd s = pauli_matrix(k);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            m(2 * i + p, 2 * j + q) += coupling * s(i, j) * s(p, q);
  }
  return m;
}

Interaction heisenberg_interaction(const MetricGraph& g, double coupling) {
  Interaction phi(1.0);
  if (coupling == 0.0) return phi;
  const Eigen::Matrix4cd term = heisenberg_exchange(coupling);
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.distance(i, j) == 1) phi.add_term({i, j}, term, g);
  return phi;
}

Observable build_hamiltonian(const MetricGraph& g, std::span<const OnSiteTerm> onsite,
                             const Interaction& phi, std::span<const int> lambda,
                             std::vector<std::string>* warnings) {
  require(!lambda.empty(), "hamiltonian volume must be non-empty");
  for (int s : lambda) require(s >= 0 && s < g.size(), "volume site outside the graph");

  const Eigen::Index dim = Eigen::Index(1) << lambda.size();
  Observable h;
  h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  h.domain.assign(lambda.begin(), lambda.end());
  h.support = h.domain;
  h.site_dims.assign(h.domain.size(), 2);

  for (const OnSiteTerm& t : onsite) {
    if (!std::binary_search(lambda.begin(), lambda.end(), t.site)) {
      if (warnings)
        warnings->push_back("on-site term at site index " + std::to_string(t.site) +
                            " outside the volume; ignored");
      continue;
    }
    require(is_hermitian(t.matrix), "on-site terms must be hermitian");
    h.matrix += embed(make_observable(t.matrix, {t.site}), lambda).matrix;
  }

  for (const auto& [sites, matrix] : phi.terms()) {
    if (!std::includes(lambda.begin(), lambda.end(), sites.begin(), sites.end()))
      continue;  // open boundary conditions
    h.matrix += embed(make_observable(matrix, sites), lambda).matrix;
  }
  return h;
}

double interaction_norm(const Interaction& phi, const DecayFunction& f,
                        const MetricGraph& g) {
  if (phi.empty()) return 0.0;
  const int n = g.size();

  // accumulate sum_{X : x,y in X} ||Phi(X)|| per ordered pair
  std::map<std::pair<int, int>, double> acc;
  for (const auto& [sites, matrix] : phi.terms()) {
    const double norm = operator_norm(matrix);
    for (int x : sites)
      for (int y : sites) acc[{x, y}] += norm;
  }

  double best = 0.0;
  for (const auto& [pair, total] : acc) {
    require(pair.first < n && pair.second < n, "term site outside the graph");
    best = std::max(best, total / f(g.distance(pair.first, pair.second)));
  }
  return best;
}

}  // namespace lrkit
