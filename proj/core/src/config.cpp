#include "lrkit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lrkit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
}

double number_at(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail("missing '" + key + "' in " + where);
  if (!obj[key].is_number()) fail("'" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

int int_at(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_number_integer())
    fail("'" + key + "' in " + where + " must be an integer");
  return obj[key].get<int>();
}

Site parse_site(const json& v, int nu, const std::string& where) {
  if (!v.is_array() || v.size() != std::size_t(nu)) fail(where + ": site must be an array of " + std::to_string(nu) + " integers");
  Site s;
  for (const auto& c : v) {
    if (!c.is_number_integer()) fail(where + ": site coordinates must be integers");
    s.push_back(c.get<int>());
  }
  return s;
}

Eigen::MatrixXcd parse_matrix(const json& v, Eigen::Index dim, const std::string& where) {
  if (!v.is_array() || v.size() != std::size_t(dim * dim))
    fail(where + ": matrix must be a row-major array of " + std::to_string(dim * dim) +
         " [re, im] pairs");
  Eigen::MatrixXcd m(dim, dim);
  Eigen::Index k = 0;
  for (const auto& entry : v) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      fail(where + ": each matrix entry must be a [re, im] pair");
    m(k / dim, k % dim) = std::complex<double>(entry[0].get<double>(),
                                               entry[1].get<double>());
    ++k;
  }
  return m;
}

MetricGraph parse_geometry(const json& j) {
  if (!j.contains("geometry") || !j["geometry"].is_object())
    fail("missing 'geometry' object");
  const json& g = j["geometry"];
  expect_keys(g, "geometry", {"nu", "box_radius", "sites"});
  const int nu = int_at(g, "geometry", "nu");
  if (g.contains("box_radius") == g.contains("sites"))
    fail("geometry needs exactly one of 'box_radius' or 'sites'");
  if (g.contains("box_radius")) return MetricGraph::box(nu, int_at(g, "geometry", "box_radius"));
  std::vector<Site> sites;
  for (const auto& v : g["sites"]) sites.push_back(parse_site(v, nu, "geometry.sites"));
  return MetricGraph::from_sites(nu, std::move(sites));
}

Observable parse_observable(const json& v, const MetricGraph& graph,
                            const std::string& where) {
  if (!v.is_object()) fail(where + " must be an object");
  if (v.contains("pauli")) {
    expect_keys(v, where, {"pauli", "site"});
    const int k = int_at(v, where, "pauli");
    if (!v.contains("site")) fail(where + ": pauli observable needs a 'site'");
    const Site s = parse_site(v["site"], graph.dimension(), where);
    return make_observable(pauli_matrix(k), {graph.index_of(s)});
  }
  expect_keys(v, where, {"matrix", "sites"});
  if (!v.contains("sites") || !v["sites"].is_array() || v["sites"].empty())
    fail(where + " needs 'sites'");
  std::vector<int> idx;
  for (const auto& sv : v["sites"])
    idx.push_back(graph.index_of(parse_site(sv, graph.dimension(), where)));
  if (!std::is_sorted(idx.begin(), idx.end()))
    fail(where + ": sites must be listed in canonical (sorted) order");
  if (!v.contains("matrix")) fail(where + " needs 'matrix'");
  return make_observable(
      parse_matrix(v["matrix"], Eigen::Index(1) << idx.size(), where), std::move(idx));
}

std::vector<double> parse_times(const json& v) {
  std::vector<double> times;
  if (v.is_array()) {
    for (const auto& t : v) {
      if (!t.is_number()) fail("dynamics.times entries must be numbers");
      times.push_back(t.get<double>());
    }
  } else if (v.is_object()) {
    expect_keys(v, "dynamics.times", {"start", "stop", "count"});
    times = linspace(number_at(v, "times", "start"), number_at(v, "times", "stop"),
                     int_at(v, "times", "count"));
  } else {
    fail("dynamics.times must be an array or a {start, stop, count} object");
  }
  if (times.empty()) fail("dynamics.times must be non-empty");
  return times;
}

}  // namespace

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 2) fail("linspace needs at least two points");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = start + (stop - start) * double(i) / double(count - 1);
  return out;
}

namespace {

Experiment parse_experiment_impl(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  expect_keys(j, "config",
              {"geometry", "model", "decay", "dynamics", "lightcone", "anharmonic",
               "output", "seed", "override_site_cap", "test_hooks"});

  MetricGraph graph = parse_geometry(j);

  if (!j.contains("decay") || !j["decay"].is_object()) fail("missing 'decay' object");
  const json& dj = j["decay"];
  expect_keys(dj, "decay", {"epsilon", "a", "a_interval"});
  const double epsilon = number_at(dj, "decay", "epsilon");
  const double weight = dj.contains("a") ? number_at(dj, "decay", "a") : 0.0;
  if (weight < 0.0) fail("decay.a must be non-negative");

  Experiment ex{graph, DecayFunction(graph.dimension(), epsilon, weight)};
  if (dj.contains("a_interval")) {
    const json& iv = dj["a_interval"];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      fail("decay.a_interval must be [lo, hi]");
    ex.a_interval = {iv[0].get<double>(), iv[1].get<double>()};
    if (!(ex.a_interval.first >= 0.0 && ex.a_interval.first < ex.a_interval.second))
      fail("decay.a_interval needs 0 <= lo < hi");
  }

  if (!j.contains("model") || !j["model"].is_object()) fail("missing 'model' object");
  const json& mj = j["model"];
  if (!mj.contains("model") || !mj["model"].is_string())
    fail("model.model must name the model kind");
  ex.model.kind = mj["model"].get<std::string>();
  if (ex.model.kind == "heisenberg") {
    expect_keys(mj, "model", {"model", "J", "h"});
    ex.model.coupling = number_at(mj, "model", "J");
    ex.model.field = mj.contains("h") ? number_at(mj, "model", "h") : 0.0;
    ex.phi = heisenberg_interaction(ex.graph, ex.model.coupling);
    if (ex.model.field != 0.0) {
      Eigen::Matrix2cd h_term = ex.model.field * pauli_matrix(3);
      for (int s = 0; s < ex.graph.size(); ++s)
        ex.onsite.push_back(OnSiteTerm{s, h_term});
    }
  } else if (ex.model.kind == "custom") {
    expect_keys(mj, "model", {"model", "terms"});
    if (!mj.contains("terms") || !mj["terms"].is_array())
      fail("custom model needs a 'terms' array");
    for (const auto& tv : mj["terms"]) {
      expect_keys(tv, "model.terms", {"sites", "matrix"});
      std::vector<int> idx;
      for (const auto& sv : tv["sites"])
        idx.push_back(ex.graph.index_of(parse_site(sv, ex.graph.dimension(), "model.terms")));
      if (!std::is_sorted(idx.begin(), idx.end()))
        fail("model.terms: sites must be listed in canonical (sorted) order");
      Eigen::MatrixXcd m =
          parse_matrix(tv["matrix"], Eigen::Index(1) << idx.size(), "model.terms");
      try {
        ex.phi.add_term(std::move(idx), std::move(m), ex.graph);
      } catch (const std::domain_error& e) {
        fail(std::string("model.terms: ") + e.what());
      }
    }
  } else {
    fail("model.model must be 'heisenberg' or 'custom'");
  }

  if (j.contains("dynamics")) {
    const json& dy = j["dynamics"];
    expect_keys(dy, "dynamics", {"observable", "probe", "probe_sites", "times"});
    if (dy.contains("observable"))
      ex.observable = parse_observable(dy["observable"], ex.graph, "dynamics.observable");
    if (dy.contains("probe")) {
      const json& pv = dy["probe"];
      if (pv.is_object() && pv.contains("pauli")) {
        expect_keys(pv, "dynamics.probe", {"pauli"});
        ex.probe = pauli_matrix(int_at(pv, "dynamics.probe", "pauli"));
      } else if (pv.is_object() && pv.contains("matrix")) {
        expect_keys(pv, "dynamics.probe", {"matrix"});
        ex.probe = parse_matrix(pv["matrix"], 2, "dynamics.probe");
      } else {
        fail("dynamics.probe needs 'pauli' or 'matrix'");
      }
    }
    if (dy.contains("probe_sites")) {
      if (!dy["probe_sites"].is_array()) fail("dynamics.probe_sites must be an array");
      for (const auto& sv : dy["probe_sites"])
        ex.probe_sites.push_back(
            ex.graph.index_of(parse_site(sv, ex.graph.dimension(), "dynamics.probe_sites")));
    }
    if (dy.contains("times")) ex.times = parse_times(dy["times"]);
  }

  if (j.contains("lightcone")) {
    const json& lc = j["lightcone"];
    expect_keys(lc, "lightcone", {"distances", "threshold"});
    if (!lc.contains("distances") || !lc["distances"].is_array() ||
        lc["distances"].empty())
      fail("lightcone needs a non-empty 'distances' array");
    for (const auto& dv : lc["distances"]) {
      if (!dv.is_number()) fail("lightcone.distances must be numbers");
      ex.lightcone_distances.push_back(dv.get<double>());
    }
    if (lc.contains("threshold"))
      ex.lightcone_threshold = number_at(lc, "lightcone", "threshold");
  }

  if (j.contains("anharmonic")) {
    expect_keys(j["anharmonic"], "anharmonic", {"phi_sup"});
    ex.anharmonic_phi_sup = number_at(j["anharmonic"], "anharmonic", "phi_sup");
    if (*ex.anharmonic_phi_sup < 0.0) fail("anharmonic.phi_sup must be non-negative");
  }

  if (j.contains("output")) {
    expect_keys(j["output"], "output", {"dir"});
    if (j["output"].contains("dir")) {
      if (!j["output"]["dir"].is_string()) fail("output.dir must be a string");
      ex.out_dir = j["output"]["dir"].get<std::string>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) fail("seed must be an integer");
    ex.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("override_site_cap")) {
    if (!j["override_site_cap"].is_boolean()) fail("override_site_cap must be a boolean");
    ex.override_site_cap = j["override_site_cap"].get<bool>();
  }
  if (j.contains("test_hooks")) {
    expect_keys(j["test_hooks"], "test_hooks", {"bound_scale"});
    if (j["test_hooks"].contains("bound_scale"))
      ex.bound_scale = number_at(j["test_hooks"], "test_hooks", "bound_scale");
  }

  // cross-field sanity
  if (ex.observable)
    for (int s : ex.observable->support)
      if (s < 0 || s >= ex.graph.size()) fail("observable site outside the graph");
  return ex;
}

}  // namespace

Experiment parse_experiment(const std::string& json_text) {
  try {
    return parse_experiment_impl(json_text);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::domain_error& e) {
    // domain errors raised while building graph/model objects are config errors
    fail(e.what());
  }
}

Experiment load_experiment(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail("cannot open config file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str());
}

BoundContext Experiment::bound_context() const {
  BoundContext ctx{decay, &graph, BoundEvaluation{}};
  ctx.ev.a = decay.weight();
  ctx.ev.phi_norm = interaction_norm(phi, decay, graph);
  ctx.ev.conv_constant = lattice_convolution_constant(graph.dimension(), decay.epsilon());
  ctx.ev.f_norm_bare = lattice_f_norm(graph.dimension(), decay.epsilon()).value;
  return ctx;
}

void Experiment::require_dynamics_capacity() const {
  if (graph.size() > kSiteCap && !override_site_cap)
    throw ResourceCapError("volume of " + std::to_string(graph.size()) +
                           " sites exceeds the exact-diagonalization cap of " +
                           std::to_string(kSiteCap) +
                           "; set override_site_cap to proceed anyway");
}

}  // namespace lrkit
