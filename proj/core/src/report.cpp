#include "lrkit/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace lrkit {

namespace {

using nlohmann::json;

// nlohmann serializes non-finite values as null, which is what the JSON
// grammar allows; CSV keeps them as inf/nan text.
json cell_json(const LightConeCell& c) {
  return json{{"distance", c.distance},
              {"t", c.t},
              {"measured_norm", c.measured_norm},
              {"bound_22", c.bound_22},
              {"bound_24", c.bound_24}};
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string grid_csv(const std::vector<LightConeCell>& grid) {
  std::string out = "distance,t,measured_norm,bound_22,bound_24\n";
  for (const LightConeCell& c : grid) {
    out += format_g17(c.distance);
    out += ',';
    out += format_g17(c.t);
    out += ',';
    out += format_g17(c.measured_norm);
    out += ',';
    out += format_g17(c.bound_22);
    out += ',';
    out += format_g17(c.bound_24);
    out += '\n';
  }
  return out;
}

std::string light_cone_report_json(const LightConeReport& report) {
  json j;
  j["threshold"] = report.threshold;
  j["theoretical_velocity"] = report.theoretical_velocity;
  j["fitted_velocity"] =
      report.fitted_velocity ? json(*report.fitted_velocity) : json(nullptr);
  j["crossings"] = json::array();
  for (const auto& c : report.crossings)
    j["crossings"].push_back(json{{"distance", c.distance}, {"time", c.time}});
  j["grid"] = json::array();
  for (const auto& c : report.grid) j["grid"].push_back(cell_json(c));
  return j.dump(2) + "\n";
}

std::string simulate_summary_json(const SimulateSummary& s) {
  json j;
  j["a"] = s.a;
  j["phi_norm"] = s.phi_norm;
  j["conv_constant"] = s.conv_constant;
  j["f_norm_bare"] = s.f_norm_bare;
  j["velocity"] = s.velocity ? json(*s.velocity) : json(nullptr);
  j["cells"] = s.cells;
  return j.dump(2) + "\n";
}

std::string bound_report_json(const BoundReport& r) {
  json j;
  j["nu"] = r.nu;
  j["epsilon"] = r.epsilon;
  j["a"] = r.a;
  j["J"] = r.coupling;
  j["phi_norm"] = r.phi_norm;
  j["f_norm"] = {{"lattice", r.f_norm_lattice.value},
                 {"lattice_tail", r.f_norm_lattice.tail},
                 {"lattice_uncertainty", r.f_norm_lattice.uncertainty},
                 {"lattice_shells", r.f_norm_lattice.shells},
                 {"truncation", r.f_norm_truncation}};
  j["convolution_constant"] = {{"analytic_lattice", r.conv_analytic_lattice},
                               {"analytic_truncation", r.conv_analytic_truncation},
                               {"empirical", r.conv_empirical},
                               {"certified", "analytic_lattice"}};
  j["velocity"] = r.velocity ? json(*r.velocity) : json(nullptr);
  if (r.optimum) {
    j["optimal"] = {{"a_star", r.optimum->a_star},
                    {"v_star", r.optimum->v_star},
                    {"a_interval", {r.a_interval.first, r.a_interval.second}}};
  } else {
    j["optimal"] = nullptr;
  }
  j["heisenberg_velocity_bound"] =
      r.heisenberg_bound ? json(*r.heisenberg_bound) : json(nullptr);
  j["anharmonic_velocity_bound"] =
      r.anharmonic_bound ? json(*r.anharmonic_bound) : json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace lrkit
