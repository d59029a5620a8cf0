#include "lrkit/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace lrkit {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

MetricGraph::MetricGraph(int nu, std::vector<Site> sites)
    : nu_(nu), sites_(std::move(sites)) {
  require(nu_ >= 1, "graph dimension must be positive");
  for (const Site& s : sites_) {
    require(static_cast<int>(s.size()) == nu_,
            "site coordinate tuple has wrong length");
  }
  std::sort(sites_.begin(), sites_.end());
  require(std::adjacent_find(sites_.begin(), sites_.end()) == sites_.end(),
          "sites must be pairwise distinct");
}

MetricGraph MetricGraph::box(int nu, int radius) {
  require(nu >= 1, "graph dimension must be positive");
  require(radius >= 0, "box radius must be non-negative");
  double count = std::pow(2.0 * radius + 1.0, nu);
  require(count <= double(1 << 22), "box truncation too large");

  std::vector<Site> sites;
  sites.reserve(static_cast<std::size_t>(count));
  Site cur(nu, -radius);
  while (true) {
    sites.push_back(cur);
    int k = nu - 1;
    while (k >= 0 && cur[k] == radius) cur[k--] = -radius;
    if (k < 0) break;
    ++cur[k];
  }
  return MetricGraph(nu, std::move(sites));
}

MetricGraph MetricGraph::from_sites(int nu, std::vector<Site> sites) {
  return MetricGraph(nu, std::move(sites));
}

const Site& MetricGraph::site(int index) const {
  require(index >= 0 && index < size(), "site index out of range");
  return sites_[index];
}

int MetricGraph::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  require(it != sites_.end() && *it == s, "unknown site");
  return static_cast<int>(it - sites_.begin());
}

bool MetricGraph::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

int MetricGraph::distance(int i, int j) const {
  const Site& x = site(i);
  const Site& y = site(j);
  int d = 0;
  for (int k = 0; k < nu_; ++k) d += std::abs(x[k] - y[k]);
  return d;
}

int MetricGraph::distance(const Site& x, const Site& y) const {
  return distance(index_of(x), index_of(y));
}

DecayFunction::DecayFunction(int nu, double epsilon, double weight_a)
    : nu_(nu), epsilon_(epsilon), weight_a_(weight_a) {
  require(nu_ >= 1, "decay function dimension must be positive");
  require(epsilon_ > 0.0, "decay exponent surplus must be positive");
  require(weight_a_ >= 0.0, "exponential weight must be non-negative");
}

double DecayFunction::operator()(double r) const {
  require(r >= 0.0, "distance must be non-negative");
  return std::exp(-weight_a_ * r) * std::pow(1.0 + r, -(nu_ + epsilon_));
}

double f_norm(const DecayFunction& f, const MetricGraph& g) {
  require(g.size() > 0, "f_norm needs a non-empty site set");
  const int n = g.size();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += f(g.distance(i, j));
    best = std::max(best, row);
  }
  return best;
}

double convolution_constant_empirical(const DecayFunction& f, const MetricGraph& g) {
  require(g.size() > 0, "convolution constant needs a non-empty site set");
  const int n = g.size();
  Eigen::MatrixXd fd(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fd(i, j) = f(g.distance(i, j));
  Eigen::MatrixXd conv = fd * fd;
  return (conv.array() / fd.array()).maxCoeff();
}

double convolution_constant_analytic(const DecayFunction& f, const MetricGraph& g) {
  return std::pow(2.0, f.nu() + f.epsilon() + 1.0) * f_norm(f.bare(), g);
}

double shell_count(int nu, long long r) {
  require(nu >= 1 && r >= 0, "shell_count needs nu >= 1, r >= 0");
  if (r == 0) return 1.0;
  // sum over the number k of non-zero coordinates
  double total = 0.0;
  double choose_nu_k = 1.0;  // C(nu, k), updated incrementally
  for (int k = 1; k <= std::min<long long>(nu, r); ++k) {
    choose_nu_k *= double(nu - k + 1) / double(k);
    double comp = 1.0;  // C(r-1, k-1): compositions of r into k positive parts
    for (int j = 1; j < k; ++j) comp *= double(r - j) / double(j);
    total += std::ldexp(choose_nu_k * comp, k);
  }
  return total;
}

namespace {

// Dense polynomial in u with p[m] the coefficient of u^m.
using Poly = std::vector<double>;

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

double poly_eval(const Poly& p, double u) {
  double v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * u + p[i];
  return v;
}

// Shell counts as a polynomial in u = 1+r, exact for every integer r >= 1.
Poly shell_poly(int nu) {
  Poly acc{0.0};
  double choose = 1.0;
  double fact = 1.0;
  for (int k = 1; k <= nu; ++k) {
    choose *= double(nu - k + 1) / double(k);
    if (k >= 2) fact *= double(k - 1);
    Poly q{1.0};
    for (int j = 1; j < k; ++j) q = poly_mul(q, Poly{-(1.0 + j), 1.0});
    double scale = std::ldexp(choose / fact, k);
    if (acc.size() < q.size()) acc.resize(q.size(), 0.0);
    for (std::size_t m = 0; m < q.size(); ++m) acc[m] += scale * q[m];
  }
  return acc;
}

// All real roots of q lie strictly below this value (Cauchy bound).
double cauchy_root_bound(const Poly& q) {
  std::size_t deg = q.size();
  while (deg > 1 && q[deg - 1] == 0.0) --deg;
  if (deg == 1) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < deg; ++i)
    m = std::max(m, std::abs(q[i]) / std::abs(q[deg - 1]));
  return 1.0 + m;
}

}  // namespace

LatticeFNorm lattice_f_norm(int nu, double epsilon, double tol) {
  require(nu >= 1, "lattice norm needs nu >= 1");
  require(epsilon > 0.0, "lattice norm needs epsilon > 0");
  require(tol > 0.0, "tolerance must be positive");

  const double s = nu + epsilon;
  const Poly p = shell_poly(nu);

  // s P(u) - u P'(u) > 0 on [U, inf) certifies the radial term decreasing,
  // which the sum-vs-integral bracket needs
  Poly q(p.size(), 0.0);
  for (std::size_t m = 0; m < p.size(); ++m) q[m] = (s - double(m)) * p[m];
  const double u_safe = std::max(cauchy_root_bound(q), cauchy_root_bound(p));

  double sum = 1.0;  // r = 0 shell
  double comp = 0.0;
  double term = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  const long long r_min = std::max<long long>(16, 4LL * nu);
  const long long r_cap = 600'000'000LL;

  long long r = 1;
  for (;; ++r) {
    const double u = 1.0 + double(r);
    term = poly_eval(p, u) * std::pow(u, -s);
    // Kahan accumulation: the shell count runs to ~1e7 terms
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (r >= r_min && term <= tol && term <= prev && u > u_safe) break;
    prev = term;
    if (r >= r_cap)
      throw std::domain_error(
          "lattice f_norm: tail tolerance unreachable within the iteration cap "
          "(epsilon too small)");
  }

  // integral of P(1+x)(1+x)^{-s} over [r, inf); exact term-by-term
  const double u0 = 1.0 + double(r);
  double tail = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m)
    tail += p[m] * std::pow(u0, double(m) + 1.0 - s) / (s - double(m) - 1.0);

  return LatticeFNorm{sum + tail, tail, term, r + 1};
}

double lattice_convolution_constant(int nu, double epsilon, double tol) {
  return std::pow(2.0, nu + epsilon + 1.0) * lattice_f_norm(nu, epsilon, tol).value;
}

bool verify_log_superadditive(double weight_a,
                              std::span<const std::pair<double, double>> samples,
                              double tol) {
  require(weight_a >= 0.0, "weight must be non-negative");
  for (const auto& [r1, r2] : samples) {
    require(r1 >= 0.0 && r2 >= 0.0, "radii must be non-negative");
    double lhs = std::exp(-weight_a * (r1 + r2));
    double rhs = std::exp(-weight_a * r1) * std::exp(-weight_a * r2);
    if (lhs < rhs - tol) return false;
  }
  return true;
}

}  // namespace lrkit
