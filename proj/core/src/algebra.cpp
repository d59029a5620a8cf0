#include "lrkit/algebra.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace lrkit {

namespace {

using Complex = std::complex<double>;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

bool sorted_unique(std::span<const int> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

bool subset_of(std::span<const int> small, std::span<const int> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Bit weight of each listed site in the global product-basis index,
// first site most significant.
std::vector<long> site_weights(std::span<const int> sites, std::span<const int> lambda) {
  const long L = static_cast<long>(lambda.size());
  std::vector<long> w;
  w.reserve(sites.size());
  for (int s : sites) {
    auto it = std::lower_bound(lambda.begin(), lambda.end(), s);
    long pos = it - lambda.begin();
    w.push_back(1L << (L - 1 - pos));
  }
  return w;
}

// offsets[b] = global index contribution of local basis state b
std::vector<long> scatter_table(const std::vector<long>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<long> offsets(std::size_t(1) << n, 0);
  for (long b = 0; b < (1L << n); ++b) {
    long off = 0;
    for (int k = 0; k < n; ++k)
      if ((b >> (n - 1 - k)) & 1) off += weights[k];
    offsets[b] = off;
  }
  return offsets;
}

}  // namespace

double Observable::norm_a() const { return operator_norm(*this); }

Observable make_observable(Eigen::MatrixXcd matrix, std::vector<int> sites) {
  require(sorted_unique(sites), "observable sites must be sorted and distinct");
  require(matrix.rows() == matrix.cols(), "observable matrix must be square");
  require(matrix.rows() == (Eigen::Index(1) << sites.size()),
          "matrix dimension must be 2^(number of sites)");
  Observable a;
  a.matrix = std::move(matrix);
  a.domain = sites;
  a.support = std::move(sites);
  a.site_dims.assign(a.domain.size(), 2);
  return a;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::Matrix2cd pauli_matrix(int k) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd s;
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, -i, i, 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      throw std::domain_error("pauli index must be 1, 2 or 3");
  }
  return s;
}

Observable pauli(int k, int site) {
  return make_observable(pauli_matrix(k), {site});
}

Observable embed(const Observable& a, std::span<const int> lambda) {
  require(sorted_unique(lambda), "lambda must be sorted and distinct");
  require(subset_of(a.domain, lambda), "observable domain not contained in lambda");
  if (a.domain.size() == lambda.size()) return a;

  std::vector<int> comp;
  std::set_difference(lambda.begin(), lambda.end(), a.domain.begin(), a.domain.end(),
                      std::back_inserter(comp));

  const auto sup_off = scatter_table(site_weights(a.domain, lambda));
  const auto comp_off = scatter_table(site_weights(comp, lambda));
  const long dim_s = static_cast<long>(sup_off.size());
  const long dim_c = static_cast<long>(comp_off.size());

  Observable out;
  out.matrix = Eigen::MatrixXcd::Zero(dim_s * dim_c, dim_s * dim_c);
  for (long is = 0; is < dim_s; ++is)
    for (long js = 0; js < dim_s; ++js) {
      const Complex v = a.matrix(is, js);
      if (v == Complex{}) continue;
      for (long ic = 0; ic < dim_c; ++ic)
        out.matrix(sup_off[is] + comp_off[ic], sup_off[js] + comp_off[ic]) = v;
    }
  out.domain.assign(lambda.begin(), lambda.end());
  out.support = a.support;
  out.site_dims.assign(out.domain.size(), 2);
  return out;
}

Observable commutator(const Observable& a, const Observable& b,
                      std::span<const int> lambda) {
  Observable ea = embed(a, lambda);
  Observable eb = embed(b, lambda);
  if (ea.dim() != eb.dim())
    throw std::logic_error("commutator: embedded dimensions disagree");
  Observable out;
  out.matrix = ea.matrix * eb.matrix - eb.matrix * ea.matrix;
  out.domain.assign(lambda.begin(), lambda.end());
  out.support = out.domain;
  out.site_dims.assign(out.domain.size(), 2);
  return out;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev <= kHermTol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("operator_norm: eigensolver failed");
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  const double anti_dev = (m + m.adjoint()).cwiseAbs().maxCoeff();
  if (anti_dev <= kHermTol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Complex{0.0, 1.0} * m,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("operator_norm: eigensolver failed");
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  return operator_norm_via_gram(m);
}

double operator_norm_via_gram(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("operator_norm: eigensolver failed");
  const double top = es.eigenvalues()(es.eigenvalues().size() - 1);
  return std::sqrt(std::max(top, 0.0));
}

double operator_norm(const Observable& a) { return operator_norm(a.matrix); }

Observable conditional_expectation(const Observable& a, std::span<const int> keep,
                                   std::span<const int> lambda) {
  require(sorted_unique(keep), "keep set must be sorted and distinct");
  require(subset_of(keep, lambda), "keep set not contained in lambda");
  require(subset_of(a.support, lambda), "observable support not contained in lambda");
  require(subset_of(a.domain, lambda), "observable domain not contained in lambda");

  if (subset_of(a.support, keep)) {
    // The matrix factors as A~ (x) 1 over domain \ support, so the slice at
    // the complement ground configuration is the exact restriction.
    Observable inside = a;
    if (!subset_of(a.domain, keep)) {
      std::vector<int> dom_keep;
      std::set_intersection(a.domain.begin(), a.domain.end(), keep.begin(), keep.end(),
                            std::back_inserter(dom_keep));
      const auto koff = scatter_table(site_weights(dom_keep, a.domain));
      const long dk = static_cast<long>(koff.size());
      Eigen::MatrixXcd r(dk, dk);
      for (long i = 0; i < dk; ++i)
        for (long j = 0; j < dk; ++j) r(i, j) = a.matrix(koff[i], koff[j]);
      inside.matrix = std::move(r);
      inside.domain = std::move(dom_keep);
      inside.site_dims.assign(inside.domain.size(), 2);
    }
    Observable out = embed(inside, keep);
    out.support = out.domain;  // report the projection target as support
    return out;
  }

  Observable ea = embed(a, lambda);
  std::vector<int> comp;
  std::set_difference(lambda.begin(), lambda.end(), keep.begin(), keep.end(),
                      std::back_inserter(comp));
  const auto koff = scatter_table(site_weights(keep, lambda));
  const auto coff = scatter_table(site_weights(comp, lambda));
  const long dk = static_cast<long>(koff.size());
  const long dc = static_cast<long>(coff.size());

  Observable out;
  out.matrix.resize(dk, dk);
  for (long i = 0; i < dk; ++i)
    for (long j = 0; j < dk; ++j) {
      Complex acc{};
      for (long c = 0; c < dc; ++c) acc += ea.matrix(koff[i] + coff[c], koff[j] + coff[c]);
      out.matrix(i, j) = acc / double(dc);
    }
  out.domain.assign(keep.begin(), keep.end());
  out.support = out.domain;
  out.site_dims.assign(out.domain.size(), 2);
  return out;
}

}  // namespace lrkit
