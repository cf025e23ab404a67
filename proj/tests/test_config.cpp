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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "x2mon/config.hpp"
#include "x2mon/constants.hpp"
#include "x2mon/errors.hpp"

namespace x2mon {
namespace {

using nlohmann::json;

json reference() {
  return json::parse(R"({
    "circuit": {
      "e_j1_GHz": 20.0, "e_j2_GHz": 20.0, "e_c_GHz": 1.0, "x0_nm": 1.0,
      "tunneling": {"delta_gap_GHz": 4500.0, "r_n0_ohm": 50.0},
      "mass_kg": 5e-19, "omega_m0_GHz": 1.0, "x_zpf_over_xi": 3e-3,
      "gamma_m_kHz": 1.0, "gamma_q_kHz": 100.0, "temperature_mK": 10.0
    },
    "drive": {"phi_b0_rad": 0.5, "omega_bar_GHz": "auto"},
    "schedule": {"hold_ns": 100.0}
  })");
}

// Runs parse_config and returns the ConfigError message ("" if none).
std::string error_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, ReferenceUnits) {
  const auto cfg = parse_config(reference());
  const auto& p = cfg.circuit;
  EXPECT_EQ(p.e_j1, 20.0);
  EXPECT_EQ(p.e_c, 1.0);
  EXPECT_EQ(p.x0, 1e-9);
  EXPECT_GT(p.xi, 0.100e-9);
  EXPECT_LT(p.xi, 0.108e-9);
  EXPECT_DOUBLE_EQ(p.x_zpf, 3e-3 * p.xi);
  EXPECT_DOUBLE_EQ(p.gamma_m, 1e-6);
  EXPECT_DOUBLE_EQ(p.gamma_q, 1e-4);
  EXPECT_DOUBLE_EQ(p.temperature, 0.01);
  EXPECT_FALSE(cfg.has_sweep);
  EXPECT_EQ(cfg.format, OutputFormat::kCsv);
  EXPECT_EQ(cfg.validate_tolerance, 0.05);
  EXPECT_EQ(cfg.window_factor, 2.5);
}

TEST(Config, MissingFieldNamed) {
  auto doc = reference();
  doc["circuit"].erase("omega_m0_GHz");
  EXPECT_EQ(error_of(doc), "missing required field 'circuit.omega_m0_GHz'");
  doc = reference();
  doc.erase("circuit");
  EXPECT_EQ(error_of(doc), "missing required field 'circuit'");
}

TEST(Config, UnknownKeysRejected) {
  auto doc = reference();
  doc["circuit"]["e_j_GHz"] = 20.0;
  EXPECT_EQ(error_of(doc), "unknown key 'circuit.e_j_GHz'");
  doc = reference();
  doc["circuit"]["tunneling"]["gap"] = 1.0;
  EXPECT_EQ(error_of(doc), "unknown key 'circuit.tunneling.gap'");
  doc = reference();
  doc["extra"] = json::object();
  EXPECT_EQ(error_of(doc), "unknown key 'extra'");
}

TEST(Config, WrongTypesRejected) {
  auto doc = reference();
  doc["circuit"]["x0_nm"] = "1";
  EXPECT_EQ(error_of(doc), "field 'circuit.x0_nm' must be a number");
  doc = reference();
  doc["drive"]["omega_bar_GHz"] = "fast";
  EXPECT_EQ(error_of(doc), "field 'drive.omega_bar_GHz' must be a number or \"auto\"");
  doc = reference();
  doc["numeric"] = {{"fock_dim", 4.5}};
  EXPECT_EQ(error_of(doc), "field 'numeric.fock_dim' must be an integer");
  doc = reference();
  doc["circuit"] = 3;
  EXPECT_NE(error_of(doc).find("must be an object"), std::string::npos);
}

TEST(Config, MutuallyExclusiveForms) {
  auto doc = reference();
  doc["circuit"]["xi_nm"] = 0.1;
  EXPECT_NE(error_of(doc), "");
  doc = reference();
  doc["circuit"]["x_zpf_m"] = 1e-13;
  EXPECT_NE(error_of(doc), "");
  doc = reference();
  doc["circuit"]["c_j_F"] = 1e-15;
  EXPECT_NE(error_of(doc), "");
}

TEST(Config, ExplicitLengthsAndMassZpf) {
  auto doc = reference();
  doc["circuit"].erase("tunneling");
  doc["circuit"].erase("x_zpf_over_xi");
  doc["circuit"]["xi_nm"] = 0.104;
  const auto p = parse_config(doc).circuit;
  EXPECT_DOUBLE_EQ(p.xi, 0.104e-9);
  const double expected = std::sqrt(constants::kHbar / (2.0 * 5e-19 * 1e9));
  EXPECT_NEAR(p.x_zpf / expected, 1.0, 1e-12);
}

TEST(Config, CapacitancesSetChargingEnergy) {
  auto doc = reference();
  doc["circuit"].erase("e_c_GHz");
  doc["circuit"]["c_j_F"] = 1e-15;
  doc["circuit"]["c_b_F"] = 7e-14;
  doc["circuit"]["c_g_F"] = 5e-15;
  const auto p = parse_config(doc).circuit;
  const double e = constants::kElementaryCharge;
  const double expected = e * e / (2.0 * 7.7e-14) / constants::kHbar / 1e9;
  EXPECT_NEAR(p.e_c / expected, 1.0, 1e-12);
}

TEST(Config, PhysicalChecksBecomeConfigErrors) {
  auto doc = reference();
  doc["circuit"]["e_j1_GHz"] = -1.0;
  EXPECT_EQ(error_of(doc).rfind("circuit: ", 0), 0u);
  doc = reference();
  doc["circuit"]["tunneling"]["r_n0_ohm"] = 1e9;  // transparent-junction logarithm
  EXPECT_EQ(error_of(doc).rfind("circuit.tunneling: ", 0), 0u);
}

TEST(Config, DriveAndSchedule) {
  auto doc = reference();
  auto cfg = parse_config(doc);
  ASSERT_TRUE(cfg.drive && cfg.schedule);
  EXPECT_FALSE(cfg.drive->omega_bar.has_value());
  EXPECT_FALSE(cfg.schedule->swap_in.has_value());
  EXPECT_EQ(cfg.schedule->model_kind, ModelKind::kRwaEffective);
  EXPECT_TRUE(cfg.schedule->retain_g2_in_hold);

  doc["drive"]["omega_bar_GHz"] = 15.5;
  doc["schedule"]["swap_in_ns"] = 100.0;
  doc["schedule"]["model_kind"] = "lab-frame";
  cfg = parse_config(doc);
  EXPECT_EQ(cfg.drive->omega_bar.value(), 15.5);
  const auto s = cfg.protocol_schedule();
  EXPECT_EQ(s.swap_in.duration.value(), 100.0);
  EXPECT_FALSE(s.swap_out.duration.has_value());
  EXPECT_EQ(s.swap_out.omega_bar.value(), 15.5);
  EXPECT_EQ(s.model_kind, ModelKind::kLabFrame);
  EXPECT_EQ(s.hold, 100.0);
}

TEST(Config, ScheduleBounds) {
  auto doc = reference();
  doc["schedule"]["hold_ns"] = 0.0;
  EXPECT_EQ(error_of(doc), "");
  doc["schedule"]["hold_ns"] = -1.0;
  EXPECT_NE(error_of(doc), "");
  doc = reference();
  doc["schedule"]["swap_out_ns"] = 0.0;
  EXPECT_NE(error_of(doc), "");
  doc = reference();
  doc["drive"]["omega_bar_GHz"] = 0.0;
  EXPECT_EQ(error_of(doc), "drive frequency non-positive");
  doc = reference();
  doc["schedule"]["model_kind"] = "rwa";
  EXPECT_NE(error_of(doc), "");
}

TEST(Config, ProtocolScheduleNeedsBlocks) {
  auto doc = reference();
  doc.erase("drive");
  EXPECT_THROW(parse_config(doc).protocol_schedule(), ConfigError);
  doc = reference();
  doc["drive"]["phi_b_static_rad"] = 0.1;
  EXPECT_THROW(parse_config(doc).protocol_schedule(), ConfigError);
}

TEST(Config, NumericBlock) {
  auto doc = reference();
  doc["numeric"] = {{"fock_dim", 6}, {"dt_ns", 0.02}, {"steps_per_period", 40},
                    {"samples_per_phase", 11}, {"adaptive", true}, {"tolerance", 1e-9},
                    {"static_shortcut", false}, {"check_convergence", true}};
  const auto cfg = parse_config(doc);
  EXPECT_EQ(cfg.numeric.fock_dim, 6);
  EXPECT_EQ(cfg.numeric.evolve.dt, 0.02);
  EXPECT_EQ(cfg.numeric.evolve.steps_per_period, 40);
  EXPECT_EQ(cfg.numeric.evolve.samples, 11);
  EXPECT_TRUE(cfg.numeric.evolve.adaptive);
  EXPECT_EQ(cfg.numeric.evolve.abs_tolerance, 1e-9);
  EXPECT_FALSE(cfg.numeric.evolve.allow_static_shortcut);
  EXPECT_TRUE(cfg.check_convergence);
  for (const auto& [key, value] : {std::pair<const char*, json>{"fock_dim", 1},
                                   {"dt_ns", 0.0},
                                   {"samples_per_phase", 1},
                                   {"steps_per_period", -1},
                                   {"tolerance", 0.0}}) {
    auto bad = reference();
    bad["numeric"] = {{key, value}};
    EXPECT_EQ(error_of(bad).rfind(std::string("field 'numeric.") + key, 0), 0u) << key;
  }
}

TEST(Config, SweepForms) {
  auto doc = reference();
  doc["sweep"] = {{"phi_grid_rad", {0.0, 0.1, -0.2}}};
  auto cfg = parse_config(doc);
  EXPECT_TRUE(cfg.has_sweep);
  EXPECT_EQ(cfg.phi_grid, (std::vector<double>{0.0, 0.1, -0.2}));

  doc["sweep"] = {{"phi_min_rad", -0.2}, {"phi_max_rad", 0.2}, {"points", 5}};
  cfg = parse_config(doc);
  ASSERT_EQ(cfg.phi_grid.size(), 5u);
  EXPECT_EQ(cfg.phi_grid.front(), -0.2);
  EXPECT_EQ(cfg.phi_grid.back(), 0.2);
  EXPECT_EQ(cfg.phi_grid[2], 0.0);

  doc["sweep"] = {{"phi_grid_rad", json::array()}};
  cfg = parse_config(doc);
  EXPECT_TRUE(cfg.has_sweep);
  EXPECT_TRUE(cfg.phi_grid.empty());

  doc["sweep"] = {{"phi_grid_rad", {0.0}}, {"points", 3}};
  EXPECT_NE(error_of(doc), "");
  doc["sweep"] = {{"phi_grid_rad", {0.0, "x"}}};
  EXPECT_NE(error_of(doc), "");
}

TEST(Config, OutputBlock) {
  auto doc = reference();
  doc["output"] = {{"path", "results/a"}, {"format", "json"}};
  const auto cfg = parse_config(doc);
  EXPECT_EQ(cfg.output_path, std::filesystem::path("results/a"));
  EXPECT_EQ(cfg.format, OutputFormat::kJson);
  doc["output"]["format"] = "xml";
  EXPECT_NE(error_of(doc), "");
  EXPECT_THROW(parse_output_format("CSV"), ConfigError);
}

TEST(Config, ResolvedRoundTrips) {
  auto doc = reference();
  doc["sweep"] = {{"phi_grid_rad", {0.0, 0.1}}};
  const json first = resolved_config(parse_config(doc));
  EXPECT_EQ(first["drive"]["omega_bar_GHz"], "auto");
  EXPECT_TRUE(first["circuit"].contains("xi_nm"));
  EXPECT_TRUE(first["circuit"].contains("x_zpf_m"));
  EXPECT_EQ(resolved_config(parse_config(first)), first);

  doc["circuit"].erase("e_c_GHz");
  doc["circuit"]["c_j_F"] = 1e-15;
  doc["circuit"]["c_b_F"] = 7e-14;
  doc.erase("sweep");
  const json second = resolved_config(parse_config(doc));
  EXPECT_FALSE(second["circuit"].contains("e_c_GHz"));
  EXPECT_FALSE(second.contains("sweep"));
  EXPECT_EQ(resolved_config(parse_config(second)), second);
}

TEST(Config, LoadFromFile) {
  const auto dir = std::filesystem::temp_directory_path() / "x2mon_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "c.json";
  {
    std::ofstream out(path);
    out << "// reference device\n" << reference().dump(2) << "\n";
  }
  EXPECT_EQ(load_config(path).circuit.e_j1, 20.0);
  {
    std::ofstream out(path);
    out << "{ \"circuit\": ";
  }
  EXPECT_THROW(load_config(path), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, ShippedConfigsParse) {
  const std::filesystem::path root = X2MON_SOURCE_DIR;
  const auto sweep = load_config(root / "configs/sweep.json");
  EXPECT_TRUE(sweep.has_sweep);
  EXPECT_EQ(sweep.phi_grid.size(), 401u);
  const auto swap = load_config(root / "configs/swap.json");
  EXPECT_NO_THROW(swap.protocol_schedule());
}

}  // namespace
}  // namespace x2mon
