#include "lrkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lrkit/report.hpp"

namespace lrkit {

namespace {

Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  return 0.5 * (g + g.adjoint()).eval();
}

std::string cell_label(double d, double t) {
  std::ostringstream os;
  os << "(d=" << d << ", t=" << t << ")";
  return os.str();
}

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back(CheckResult{name, ok, detail});
  }
};

}  // namespace

std::vector<CheckResult> run_verification(const Experiment& ex, unsigned threads) {
  if (!ex.observable || !ex.probe || ex.times.empty())
    throw ConfigError("verification needs dynamics.observable, dynamics.probe and dynamics.times");
  ex.require_dynamics_capacity();

  const MetricGraph& g = ex.graph;
  Suite suite;

  // ---- geometry -----------------------------------------------------------
  {
    std::mt19937_64 rng(ex.seed ^ 0x67656f6dULL);
    const int n = g.size();
    bool ok = true;
    std::string detail;
    auto probe_triple = [&](int i, int j, int k) {
      if (g.distance(i, i) != 0 || g.distance(i, j) != g.distance(j, i) ||
          g.distance(i, k) > g.distance(i, j) + g.distance(j, k)) {
        ok = false;
        detail = "axiom violated on sites " + std::to_string(i) + "," +
                 std::to_string(j) + "," + std::to_string(k);
      }
    };
    if (static_cast<long long>(n) * n * n <= 1000) {
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          for (int k = 0; k < n && ok; ++k) probe_triple(i, j, k);
    } else {
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int trial = 0; trial < 2000 && ok; ++trial)
        probe_triple(pick(rng), pick(rng), pick(rng));
    }
    suite.check("geometry.metric_axioms", ok, detail);
  }
  {
    bool ok = true;
    double prev = 0.0;
    for (int radius = 1; radius <= (g.dimension() == 1 ? 6 : 3); ++radius) {
      const double v = f_norm(ex.decay, MetricGraph::box(g.dimension(), radius));
      ok = ok && v >= prev - 1e-12;
      prev = v;
    }
    suite.check("geometry.f_norm_monotone", ok);
  }
  {
    bool ok = true;
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
      const DecayFunction f = ex.decay.with_weight(a);
      for (double r = 0.0; r < 10.0; r += 0.5)
        ok = ok && f(r + 0.5) <= f(r) + 1e-12 && f(r) <= ex.decay.bare()(r) + 1e-12;
    }
    suite.check("geometry.decay_monotone", ok);
  }
  {
    bool ok = true;
    std::string detail;
    for (int radius = 2; radius <= (g.dimension() == 1 ? 8 : 4); ++radius) {
      const MetricGraph box = MetricGraph::box(g.dimension(), radius);
      const double emp = convolution_constant_empirical(ex.decay, box);
      const double ana = convolution_constant_analytic(ex.decay, box);
      if (emp > ana) {
        ok = false;
        detail = "radius " + std::to_string(radius);
      }
    }
    suite.check("geometry.convolution_dominated", ok, detail);
  }
  {
    std::mt19937_64 rng(ex.seed ^ 0x6c6f6773ULL);
    std::uniform_real_distribution<double> radius(0.0, 10.0);
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < 100; ++i) samples.emplace_back(radius(rng), radius(rng));
    suite.check("geometry.log_superadditive",
                verify_log_superadditive(ex.decay.weight(), samples));
  }

  // ---- algebra ------------------------------------------------------------
  std::vector<int> lambda(g.size());
  for (int i = 0; i < g.size(); ++i) lambda[i] = i;
  const std::vector<int> small_lambda(lambda.begin(),
                                      lambda.begin() + std::min<std::size_t>(6, lambda.size()));
  {
    const std::complex<double> i{0.0, 1.0};
    Eigen::Matrix2cd s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -i, i, 0;
    s3 << 1, 0, 0, -1;
    const bool ok = pauli_matrix(1) == s1 && pauli_matrix(2) == s2 && pauli_matrix(3) == s3;
    suite.check("algebra.pauli_entries", ok);
  }
  {
    std::mt19937_64 rng(ex.seed ^ 0x616c6765ULL);
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      const int ns = 1 + int(rng() % std::min<std::size_t>(2, small_lambda.size()));
      std::vector<int> sup(small_lambda.begin(), small_lambda.begin() + ns);
      Observable a = make_observable(random_hermitian(rng, Eigen::Index(1) << ns), sup);
      const Observable e = embed(a, small_lambda);
      ok = std::abs(operator_norm(e) - operator_norm(a)) <= 1e-10 &&
           is_hermitian(e.matrix);
    }
    suite.check("algebra.embed_isometry", ok);
  }
  {
    bool ok = true;
    for (std::size_t x = 0; x < small_lambda.size() && ok; ++x)
      for (std::size_t y = 0; y < small_lambda.size() && ok; ++y) {
        if (x == y) continue;
        for (int k1 = 1; k1 <= 3 && ok; ++k1)
          for (int k2 = 1; k2 <= 3 && ok; ++k2) {
            const Observable c = commutator(pauli(k1, small_lambda[x]),
                                            pauli(k2, small_lambda[y]), small_lambda);
            ok = c.matrix.cwiseAbs().maxCoeff() == 0.0;
          }
      }
    suite.check("algebra.disjoint_commutators", ok,
                ok ? "" : "disjoint supports produced a non-zero commutator");
  }
  {
    std::mt19937_64 rng(ex.seed ^ 0x636f6e64ULL);
    bool ok = true;
    const std::size_t width = std::min<std::size_t>(3, small_lambda.size());
    std::vector<int> sup(small_lambda.begin(), small_lambda.begin() + width);
    for (int trial = 0; trial < 8 && ok; ++trial) {
      Observable a = make_observable(random_hermitian(rng, Eigen::Index(1) << width), sup);
      const std::size_t keep_n = 1 + trial % width;
      std::vector<int> keep(sup.begin(), sup.begin() + keep_n);
      const Observable once = conditional_expectation(a, keep, small_lambda);
      const Observable twice = conditional_expectation(
          embed(once, small_lambda), keep, small_lambda);
      ok = (once.matrix - twice.matrix).cwiseAbs().maxCoeff() <= 1e-12 &&
           is_hermitian(once.matrix) &&
           operator_norm(once) <= operator_norm(a) + 1e-12;
    }
    suite.check("algebra.conditional_expectation", ok);
  }

  // ---- dynamics -----------------------------------------------------------
  std::vector<std::string> warnings;
  const Observable hamiltonian = build_hamiltonian(g, ex.onsite, ex.phi, lambda, &warnings);
  const DynamicsEngine engine = DynamicsEngine::diagonalize(hamiltonian);
  const Observable& a_obs = *ex.observable;
  {
    const Eigen::Index n = engine.eigenvectors().rows();
    const double ortho = (engine.eigenvectors().adjoint() * engine.eigenvectors() -
                          Eigen::MatrixXcd::Identity(n, n))
                             .cwiseAbs()
                             .maxCoeff();
    suite.check("dynamics.engine_unitarity", ortho <= 1e-10,
                "deviation " + format_g17(ortho));
  }
  {
    const Observable at_zero = engine.evolve(a_obs, 0.0);
    const Observable emb = embed(a_obs, lambda);
    suite.check("dynamics.identity_at_zero",
                (at_zero.matrix - emb.matrix).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    std::mt19937_64 rng(ex.seed ^ 0x64796e61ULL);
    std::uniform_real_distribution<double> tdist(-1.5, 1.5);
    bool iso_ok = true, group_ok = true, auto_ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      const int site = small_lambda[trial % small_lambda.size()];
      Observable a = make_observable(random_hermitian(rng, 2), {site});
      Observable b = make_observable(random_hermitian(rng, 2), {site});
      const double s = tdist(rng), t = tdist(rng);
      const Observable as = engine.evolve(a, s);
      const Observable ast = engine.evolve(as, t);
      const Observable a_st = engine.evolve(a, s + t);
      group_ok = group_ok &&
                 operator_norm(Eigen::MatrixXcd(ast.matrix - a_st.matrix)) <= 1e-9;
      iso_ok = iso_ok &&
               std::abs(operator_norm(as) - operator_norm(a)) <= 1e-10;
      Observable ab;
      ab.matrix = embed(a, lambda).matrix * embed(b, lambda).matrix;
      ab.domain = lambda;
      ab.support = lambda;
      ab.site_dims.assign(lambda.size(), 2);
      const Observable ab_t = engine.evolve(ab, t);
      const Eigen::MatrixXcd split =
          engine.evolve(a, t).matrix * engine.evolve(b, t).matrix;
      auto_ok = auto_ok &&
                operator_norm(Eigen::MatrixXcd(ab_t.matrix - split)) <= 1e-9 &&
                is_hermitian(engine.evolve(a, t).matrix, 1e-9);
    }
    suite.check("dynamics.isometry", iso_ok);
    suite.check("dynamics.group_law", group_ok);
    suite.check("dynamics.automorphism", auto_ok);
  }
  {
    const Observable ht = engine.evolve(hamiltonian, 0.7);
    suite.check("dynamics.energy_invariance",
                operator_norm(Eigen::MatrixXcd(ht.matrix - hamiltonian.matrix)) <= 1e-10);
  }
  {
    // oracle on a small leading subvolume so the series stays cheap
    const std::size_t width = std::min<std::size_t>(4, lambda.size());
    const std::vector<int> sub(lambda.begin(), lambda.begin() + width);
    const Observable h_sub = build_hamiltonian(g, ex.onsite, ex.phi, sub);
    const DynamicsEngine e_sub = DynamicsEngine::diagonalize(h_sub);
    const double norm_h = operator_norm(h_sub);
    const double t = std::min(0.05, 0.25 / std::max(1.0, norm_h));
    const Observable probe_a = make_observable(pauli_matrix(1), {sub.front()});
    const auto taylor = evolve_taylor(h_sub, probe_a, t, 20);
    const Observable exact = e_sub.evolve(probe_a, t);
    const double gap =
        operator_norm(Eigen::MatrixXcd(taylor.observable.matrix - exact.matrix));
    suite.check("dynamics.taylor_oracle", gap <= 1e-8,
                "disagreement " + format_g17(gap) + ", remainder bound " +
                    format_g17(taylor.remainder_bound));
  }

  // ---- bound dominance ----------------------------------------------------
  const BoundContext ctx = ex.bound_context();
  std::vector<int> probe_sites = ex.probe_sites;
  if (probe_sites.empty()) {
    for (int s : lambda)
      if (!std::binary_search(a_obs.support.begin(), a_obs.support.end(), s))
        probe_sites.push_back(s);
  }
  std::vector<Observable> probes;
  for (int s : probe_sites) probes.push_back(make_observable(*ex.probe, {s}));
  const auto norms = engine.commutator_norm_scan(a_obs, probes, ex.times, threads);

  const double norm_a = operator_norm(a_obs);
  const double norm_b = operator_norm(Eigen::MatrixXcd(*ex.probe));
  {
    bool weighted_ok = true, corollary_ok = true, trivial_ok = true;
    std::string w_detail, c_detail, t_detail;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const double d = min_distance(a_obs.support, probes[p].support, g);
      for (std::size_t i = 0; i < ex.times.size(); ++i) {
        const double measured = norms[p][i];
        const double t = ex.times[i];
        const double b22 = ex.bound_scale * lr_bound(ctx.ev, a_obs.support,
                                                     probes[p].support, ctx.f, g,
                                                     norm_a, norm_b, t);
        if (measured > b22 + 1e-9 && weighted_ok) {
          weighted_ok = false;
          w_detail = cell_label(d, t) + ": measured " + format_g17(measured) +
                     " > bound " + format_g17(b22);
        }
        const bool disjoint =
            !std::binary_search(a_obs.support.begin(), a_obs.support.end(),
                                probes[p].support.front());
        if (ctx.ev.a > 0.0 && disjoint) {
          const double b24 =
              ex.bound_scale * lr_bound_corollary(ctx.ev, a_obs.support,
                                                  probes[p].support, g, norm_a,
                                                  norm_b, t);
          if (measured > b24 + 1e-9 && corollary_ok) {
            corollary_ok = false;
            c_detail = cell_label(d, t) + ": measured " + format_g17(measured) +
                       " > bound " + format_g17(b24);
          }
        }
        if (measured > 2.0 * norm_a * norm_b + 1e-9 && trivial_ok) {
          trivial_ok = false;
          t_detail = cell_label(d, t);
        }
      }
    }
    suite.check("bounds.dominance_weighted", weighted_ok, w_detail);
    if (ctx.ev.a > 0.0)
      suite.check("bounds.dominance_exponential", corollary_ok, c_detail);
    else
      suite.check("bounds.dominance_exponential", true, "not applicable (a = 0)");
    suite.check("bounds.trivial_bound", trivial_ok, t_detail);
  }
  {
    if (ex.model.kind == "heisenberg") {
      Experiment flat = ex;
      flat.model.field = 0.0;
      flat.onsite.clear();
      const BoundContext flat_ctx = flat.bound_context();
      bool ok = flat_ctx.ev.phi_norm == ctx.ev.phi_norm &&
                flat_ctx.ev.conv_constant == ctx.ev.conv_constant &&
                flat_ctx.ev.f_norm_bare == ctx.ev.f_norm_bare;
      for (std::size_t p = 0; p < probes.size() && ok; ++p)
        for (double t : ex.times) {
          ok = lr_bound(flat_ctx.ev, a_obs.support, probes[p].support, flat_ctx.f, g,
                        norm_a, norm_b, t) ==
               lr_bound(ctx.ev, a_obs.support, probes[p].support, ctx.f, g, norm_a,
                        norm_b, t);
          if (!ok) break;
        }
      suite.check("bounds.onsite_independence", ok);
    } else {
      suite.check("bounds.onsite_independence", true, "not applicable (custom model)");
    }
  }

  // ---- quasi-locality -----------------------------------------------------
  {
    bool certified_ok = true, monotone_ok = true;
    std::string cert_detail;
    const int origin = a_obs.support.front();
    std::vector<double> probe_times;
    for (std::size_t i = 0; i < ex.times.size(); i += std::max<std::size_t>(1, ex.times.size() / 4))
      probe_times.push_back(ex.times[i]);
    for (double t : probe_times) {
      double prev = std::numeric_limits<double>::infinity();
      double prev_certified = 0.0;
      for (int radius = 0; radius <= 3; ++radius) {
        std::vector<int> ball;
        for (int s : lambda)
          if (g.distance(origin, s) <= radius) ball.push_back(s);
        if (!std::includes(ball.begin(), ball.end(), a_obs.support.begin(),
                           a_obs.support.end()))
          continue;
        const auto le = localization_error(engine, a_obs, t, ball, ctx);
        if (le.certified <= 2.0 * norm_a && le.measured > le.certified + 1e-9 &&
            certified_ok) {
          certified_ok = false;
          cert_detail = "radius " + std::to_string(radius) + ", t " + format_g17(t);
        }
        // operator-norm ordering under ball growth is only checked inside the
        // certified cone; at the front edge the projection errors are not
        // ordered
        if (prev_certified <= 2.0 * norm_a)
          monotone_ok = monotone_ok && le.measured <= prev + 1e-9;
        prev = le.measured;
        prev_certified = le.certified;
        if (ball.size() == lambda.size()) break;
      }
    }
    suite.check("quasilocality.localization_certified", certified_ok, cert_detail);
    suite.check("quasilocality.localization_monotone", monotone_ok);
  }

  return suite.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace lrkit
