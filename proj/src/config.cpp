// Copyright 2026 The x2mon-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "x2mon/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "x2mon/errors.hpp"

namespace x2mon {
namespace {

using nlohmann::json;

constexpr double kKiloToGiga = 1e-6;
constexpr double kNano = 1e-9;
constexpr double kMilli = 1e-3;

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as typos.
class Block {
 public:
  Block(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key)) throw ConfigError("missing required field '" + field(key) + "'");
    return node_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError("field '" + field(key) + "' must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : (seen_.insert(key), fallback);
  }

  std::optional<double> number_or_auto(const std::string& key) {
    if (!has(key)) return (seen_.insert(key), std::nullopt);
    const json& v = raw(key);
    if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
    if (!v.is_number())
      throw ConfigError("field '" + field(key) + "' must be a number or \"auto\"");
    return v.get<double>();
  }

  int integer_or(const std::string& key, int fallback) {
    if (!has(key)) return (seen_.insert(key), fallback);
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError("field '" + field(key) + "' must be an integer");
    return v.get<int>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    if (!has(key)) return (seen_.insert(key), fallback);
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError("field '" + field(key) + "' must be true or false");
    return v.get<bool>();
  }

  std::string string_or(const std::string& key, const std::string& fallback) {
    if (!has(key)) return (seen_.insert(key), fallback);
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError("field '" + field(key) + "' must be a string");
    return v.get<std::string>();
  }

  Block child(const std::string& key) { return Block(raw(key), field(key)); }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void reject_unknown() const {
    for (const auto& item : node_.items()) {
      if (!seen_.count(item.key()))
        throw ConfigError("unknown key '" + field(item.key()) + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

CircuitParams parse_circuit(Block& b, std::vector<std::string>& warnings) {
  CircuitParams p;
  p.e_j1 = b.number("e_j1_GHz");
  p.e_j2 = b.number("e_j2_GHz");
  p.c_j = b.number_or("c_j_F", 0.0);
  p.c_b = b.number_or("c_b_F", 0.0);
  p.c_g = b.number_or("c_g_F", 0.0);
  if (p.has_capacitances()) {
    if (b.has("e_c_GHz")) throw ConfigError("give either circuit.e_c_GHz or capacitances, not both");
    p.e_c = p.charging_energy_at_rest();
  } else {
    p.e_c = b.number("e_c_GHz");
  }
  p.x0 = b.number("x0_nm") * kNano;

  if (b.has("xi_nm") && b.has("tunneling"))
    throw ConfigError("give either circuit.xi_nm or circuit.tunneling, not both");
  if (b.has("tunneling")) {
    Block t = b.child("tunneling");
    const double gap = t.number("delta_gap_GHz");
    const double r_n0 = t.number("r_n0_ohm");
    const double e_j = t.number_or("e_j_GHz", 0.5 * (p.e_j1 + p.e_j2));
    t.reject_unknown();
    try {
      p.xi = xi_from_tunneling(p.x0, gap, e_j, r_n0);
    } catch (const std::logic_error& e) {
      throw ConfigError(std::string("circuit.tunneling: ") + e.what());
    }
  } else {
    p.xi = b.number("xi_nm") * kNano;
  }

  p.mass = b.number("mass_kg");
  p.omega_m0 = b.number("omega_m0_GHz");
  if (b.has("x_zpf_m") && b.has("x_zpf_over_xi"))
    throw ConfigError("give either circuit.x_zpf_m or circuit.x_zpf_over_xi, not both");
  if (b.has("x_zpf_m")) {
    p.x_zpf = b.number("x_zpf_m");
  } else if (b.has("x_zpf_over_xi")) {
    p.x_zpf = b.number("x_zpf_over_xi") * p.xi;
  } else {
    if (p.mass <= 0.0 || p.omega_m0 <= 0.0)
      throw ConfigError("circuit.mass_kg and circuit.omega_m0_GHz must be positive");
    p.x_zpf = x_zpf_from_mass(p.mass, p.omega_m0);
  }
  p.n_g = b.number_or("n_g", 0.0);
  p.gamma_m = b.number("gamma_m_kHz") * kKiloToGiga;
  p.gamma_q = b.number("gamma_q_kHz") * kKiloToGiga;
  p.temperature = b.number("temperature_mK") * kMilli;
  b.reject_unknown();

  try {
    auto w = check_params(p);
    warnings.insert(warnings.end(), w.begin(), w.end());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  }
  return p;
}

std::vector<double> parse_sweep(Block& b) {
  std::vector<double> grid;
  if (b.has("phi_grid_rad")) {
    if (b.has("phi_min_rad") || b.has("phi_max_rad") || b.has("points"))
      throw ConfigError("give either sweep.phi_grid_rad or a phi_min/phi_max/points range");
    const json& g = b.raw("phi_grid_rad");
    if (!g.is_array()) throw ConfigError("field 'sweep.phi_grid_rad' must be an array");
    for (const auto& v : g) {
      if (!v.is_number()) throw ConfigError("field 'sweep.phi_grid_rad' must hold numbers");
      grid.push_back(v.get<double>());
    }
  } else {
    const double lo = b.number("phi_min_rad");
    const double hi = b.number("phi_max_rad");
    const int points = b.integer_or("points", 0);
    if (points < 0) throw ConfigError("field 'sweep.points' must be non-negative");
    if (points == 1) grid.push_back(lo);
    for (int i = 0; points > 1 && i < points; ++i)
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
  }
  b.reject_unknown();
  return grid;
}

json optional_number(const std::optional<double>& v, double scale = 1.0) {
  return v ? json(*v / scale) : json("auto");
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + text + "' (expected csv or json)");
}

ProtocolSchedule RunConfig::protocol_schedule() const {
  if (!drive) throw ConfigError("missing required block 'drive'");
  if (!schedule) throw ConfigError("missing required block 'schedule'");
  if (drive->phi_b_static != 0.0)
    throw ConfigError("field 'drive.phi_b_static_rad' must be 0 for the swap protocol");
  ProtocolSchedule s;
  s.swap_in.phi_b0 = drive->phi_b0;
  s.swap_in.omega_bar = drive->omega_bar;
  s.swap_in.duration = schedule->swap_in;
  s.swap_out = s.swap_in;
  s.swap_out.duration = schedule->swap_out;
  s.hold = schedule->hold;
  s.model_kind = schedule->model_kind;
  s.retain_g2_in_hold = schedule->retain_g2_in_hold;
  return s;
}

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  Block root(doc, "");
  {
    Block c = root.child("circuit");
    cfg.circuit = parse_circuit(c, cfg.warnings);
  }
  if (root.has("drive")) {
    Block d = root.child("drive");
    DriveConfig drive;
    drive.phi_b_static = d.number_or("phi_b_static_rad", 0.0);
    drive.phi_b0 = d.number("phi_b0_rad");
    drive.omega_bar = d.number_or_auto("omega_bar_GHz");
    d.reject_unknown();
    if (drive.omega_bar && *drive.omega_bar <= 0.0)
      throw ConfigError("drive frequency non-positive");
    cfg.drive = drive;
  }
  if (root.has("schedule")) {
    Block s = root.child("schedule");
    ScheduleConfig sched;
    sched.swap_in = s.number_or_auto("swap_in_ns");
    sched.hold = s.number("hold_ns");
    sched.swap_out = s.number_or_auto("swap_out_ns");
    sched.model_kind = parse_model_kind(s.string_or("model_kind", "rwa-effective"));
    sched.retain_g2_in_hold = s.boolean_or("retain_g2_in_hold", true);
    s.reject_unknown();
    for (const auto& v : {sched.swap_in, sched.swap_out}) {
      if (v && !(*v > 0.0)) throw ConfigError("swap durations must be positive");
    }
    if (!(sched.hold >= 0.0)) throw ConfigError("field 'schedule.hold_ns' must be non-negative");
    cfg.schedule = sched;
  }
  if (root.has("numeric")) {
    Block n = root.child("numeric");
    cfg.numeric.fock_dim = n.integer_or("fock_dim", cfg.numeric.fock_dim);
    auto& e = cfg.numeric.evolve;
    e.dt = n.number_or("dt_ns", e.dt);
    e.steps_per_period = n.integer_or("steps_per_period", e.steps_per_period);
    e.samples = n.integer_or("samples_per_phase", e.samples);
    e.adaptive = n.boolean_or("adaptive", e.adaptive);
    e.abs_tolerance = n.number_or("tolerance", e.abs_tolerance);
    e.allow_static_shortcut = n.boolean_or("static_shortcut", e.allow_static_shortcut);
    cfg.check_convergence = n.boolean_or("check_convergence", cfg.check_convergence);
    n.reject_unknown();
  }
  if (cfg.numeric.fock_dim < 2) throw ConfigError("field 'numeric.fock_dim' must be at least 2");
  if (!(cfg.numeric.evolve.dt > 0.0)) throw ConfigError("field 'numeric.dt_ns' must be positive");
  if (cfg.numeric.evolve.samples < 2)
    throw ConfigError("field 'numeric.samples_per_phase' must be at least 2");
  if (cfg.numeric.evolve.steps_per_period < 0)
    throw ConfigError("field 'numeric.steps_per_period' must be non-negative");
  if (!(cfg.numeric.evolve.abs_tolerance > 0.0))
    throw ConfigError("field 'numeric.tolerance' must be positive");

  if (root.has("sweep")) {
    Block s = root.child("sweep");
    cfg.phi_grid = parse_sweep(s);
    cfg.has_sweep = true;
  }
  if (root.has("validate")) {
    Block v = root.child("validate");
    cfg.validate_tolerance = v.number_or("tolerance", cfg.validate_tolerance);
    cfg.window_factor = v.number_or("window_factor", cfg.window_factor);
    v.reject_unknown();
    if (cfg.validate_tolerance < 0.0) throw ConfigError("field 'validate.tolerance' must be >= 0");
    if (!(cfg.window_factor > 0.0)) throw ConfigError("field 'validate.window_factor' must be positive");
  }
  if (root.has("output")) {
    Block o = root.child("output");
    cfg.output_path = o.string_or("path", cfg.output_path.string());
    cfg.format = parse_output_format(o.string_or("format", "csv"));
    o.reject_unknown();
  }
  root.reject_unknown();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(doc);
}

json resolved_config(const RunConfig& cfg) {
  const CircuitParams& p = cfg.circuit;
  json circuit = {
      {"e_j1_GHz", p.e_j1},       {"e_j2_GHz", p.e_j2},
      {"x0_nm", p.x0 / kNano},    {"xi_nm", p.xi / kNano},
      {"mass_kg", p.mass},        {"omega_m0_GHz", p.omega_m0},
      {"x_zpf_m", p.x_zpf},       {"n_g", p.n_g},
      {"gamma_m_kHz", p.gamma_m / kKiloToGiga},
      {"gamma_q_kHz", p.gamma_q / kKiloToGiga},
      {"temperature_mK", p.temperature / kMilli},
  };
  if (p.has_capacitances()) {
    circuit["c_j_F"] = p.c_j;
    circuit["c_b_F"] = p.c_b;
    circuit["c_g_F"] = p.c_g;
  } else {
    circuit["e_c_GHz"] = p.e_c;
  }
  const auto& e = cfg.numeric.evolve;
  json out = {
      {"circuit", circuit},
      {"numeric",
       {{"fock_dim", cfg.numeric.fock_dim},
        {"dt_ns", e.dt},
        {"steps_per_period", e.steps_per_period},
        {"samples_per_phase", e.samples},
        {"adaptive", e.adaptive},
        {"tolerance", e.abs_tolerance},
        {"static_shortcut", e.allow_static_shortcut},
        {"check_convergence", cfg.check_convergence}}},
      {"validate", {{"tolerance", cfg.validate_tolerance}, {"window_factor", cfg.window_factor}}},
      {"output",
       {{"path", cfg.output_path.string()},
        {"format", cfg.format == OutputFormat::kCsv ? "csv" : "json"}}},
  };
  if (cfg.has_sweep) out["sweep"] = {{"phi_grid_rad", cfg.phi_grid}};
  if (cfg.drive) {
    out["drive"] = {{"phi_b_static_rad", cfg.drive->phi_b_static},
                    {"phi_b0_rad", cfg.drive->phi_b0},
                    {"omega_bar_GHz", optional_number(cfg.drive->omega_bar)}};
  }
  if (cfg.schedule) {
    out["schedule"] = {{"swap_in_ns", optional_number(cfg.schedule->swap_in)},
                       {"hold_ns", cfg.schedule->hold},
                       {"swap_out_ns", optional_number(cfg.schedule->swap_out)},
                       {"model_kind", to_string(cfg.schedule->model_kind)},
                       {"retain_g2_in_hold", cfg.schedule->retain_g2_in_hold}};
  }
  return out;
}

}  // namespace x2mon
