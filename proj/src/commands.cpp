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

#include "x2mon/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "x2mon/errors.hpp"

#ifndef X2MON_VERSION
#define X2MON_VERSION "0.0.0"
#endif

namespace x2mon {
namespace {

using nlohmann::json;

constexpr const char* kUnitsNote =
    "units: frequencies and couplings in GHz meaning Grad/s (1e9 rad/s), hbar = 1; "
    "time in ns; flux in rad";

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A table whose rows are either numbers or an error note for one grid point.
struct Table {
  struct Row {
    std::vector<double> values;
    std::string error;  // non-empty: error entry
    double key = 0.0;   // first-column value for error rows
  };
  std::vector<std::string> columns;
  std::vector<Row> rows;
  json extra = json::object();  // JSON-only top-level fields
};

class OutputWriter {
 public:
  OutputWriter(const RunConfig& config, std::ostream& log) : config_(config), log_(log) {
    std::filesystem::create_directories(config.output_path);
    header_ = std::string("x2mon ") + version() + " config=" + resolved_config(config).dump();
  }

  std::filesystem::path write(const std::string& stem, const Table& table) const {
    const bool as_json = config_.format == OutputFormat::kJson;
    const auto path = config_.output_path / (stem + (as_json ? ".json" : ".csv"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    if (as_json) {
      write_json(out, table);
    } else {
      write_csv(out, table);
    }
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
    log_ << "wrote " << path.string() << "\n";
    return path;
  }

 private:
  void write_csv(std::ostream& out, const Table& table) const {
    out << "# " << header_ << "\n# " << kUnitsNote << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
      if (!row.error.empty()) {
        out << "# error " << table.columns.front() << "=" << format_number(row.key) << ": "
            << row.error << "\n";
        continue;
      }
      for (std::size_t i = 0; i < row.values.size(); ++i)
        out << (i ? "," : "") << format_number(row.values[i]);
      out << "\n";
    }
  }

  void write_json(std::ostream& out, const Table& table) const {
    out << "// " << header_ << "\n// " << kUnitsNote << "\n";
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r = json::object();
      if (!row.error.empty()) {
        r[table.columns.front()] = row.key;
        r["error"] = row.error;
      } else {
        for (std::size_t i = 0; i < row.values.size(); ++i) r[table.columns[i]] = row.values[i];
      }
      rows.push_back(std::move(r));
    }
    json doc = table.extra;
    doc["version"] = version();
    doc["columns"] = table.columns;
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
  }

  const RunConfig& config_;
  std::ostream& log_;
  std::string header_;
};

Table series_table(const TimeSeries& series, const std::vector<std::string>& columns) {
  Table t;
  t.columns.push_back("t_ns");
  t.columns.insert(t.columns.end(), columns.begin(), columns.end());
  for (std::size_t i = 0; i < series.size(); ++i) {
    Table::Row row;
    row.values.push_back(series.times[i]);
    for (const auto& c : columns) row.values.push_back(series.column(c)[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table key_value_table(const std::vector<std::pair<std::string, double>>& fields) {
  Table t;
  Table::Row row;
  for (const auto& [name, value] : fields) {
    t.columns.push_back(name);
    row.values.push_back(value);
  }
  t.rows.push_back(std::move(row));
  return t;
}

void emit_warnings(const RunConfig& config, std::ostream& log) {
  for (const auto& w : config.warnings) log << "warning: " << w << "\n";
}

}  // namespace

const char* version() { return X2MON_VERSION; }

int cmd_coefficients(const RunConfig& config, std::ostream& log) {
  if (!config.has_sweep) throw ConfigError("missing required block 'sweep'");
  emit_warnings(config, log);
  OutputWriter writer(config, log);
  Table t;
  t.columns = {"phi_b", "g1", "g2", "omega_q", "omega_m", "omega_p0"};
  int status = kExitOk;
  for (const SweepRow& r : flux_sweep(config.circuit, config.phi_grid)) {
    Table::Row row;
    if (r.couplings) {
      const CouplingSet& c = *r.couplings;
      row.values = {r.phi_b, c.g1, c.g2, c.omega_q, c.omega_m, c.omega_p0};
    } else {
      row.key = r.phi_b;
      row.error = r.error;
      log << "error: phi_b = " << format_number(r.phi_b) << ": " << r.error << "\n";
      status = kExitDomain;
    }
    t.rows.push_back(std::move(row));
  }
  writer.write("coefficients", t);
  return status;
}

int cmd_swap(const RunConfig& config, std::ostream& log) {
  const ProtocolSchedule schedule = config.protocol_schedule();
  emit_warnings(config, log);
  OutputWriter writer(config, log);
  const ProtocolResult result = run_swap_protocol(config.circuit, schedule, config.numeric);

  const std::vector<std::string> phase_columns = {"sz", "n_mech", "trace", "purity", "fidelity"};
  double total = 0.0;
  for (const PhaseRecord& phase : result.phases) {
    writer.write(phase.name, series_table(phase.series, phase_columns));
    total += phase.duration;
  }
  writer.write("baseline", series_table(result.baseline, {"sz", "trace", "purity", "fidelity"}));

  std::vector<std::pair<std::string, double>> fields = {
      {"g_sw", result.swap.g_sw},
      {"omega_bar", result.omega_bar},
      {"t_swap", result.t_swap},
      {"hold_ns", schedule.hold},
      {"total_ns", total},
      {"fidelity", result.fidelity},
      {"baseline_fidelity", result.baseline_fidelity},
      {"fock_dim", static_cast<double>(config.numeric.fock_dim)},
  };
  if (config.check_convergence) {
    fields.emplace_back("fock_delta",
                        fock_convergence_delta(config.circuit, schedule, config.numeric));
  }
  Table summary = key_value_table(fields);
  summary.extra["model_kind"] = to_string(schedule.model_kind);
  writer.write("summary", summary);

  log << "g_sw = " << format_number(result.swap.g_sw) << " Grad/s, t_swap = "
      << format_number(result.t_swap) << " ns\n"
      << "fidelity = " << format_number(result.fidelity)
      << ", baseline = " << format_number(result.baseline_fidelity) << "\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& config, std::ostream& log) {
  if (!config.drive) throw ConfigError("missing required block 'drive'");
  if (config.drive->phi_b_static != 0.0)
    throw ConfigError("field 'drive.phi_b_static_rad' must be 0 for validation");
  emit_warnings(config, log);
  OutputWriter writer(config, log);
  const SwapComparison c = compare_swap_models(config.circuit, config.drive->phi_b0,
                                               config.numeric, config.window_factor,
                                               config.drive->omega_bar);
  const bool ok = std::isfinite(c.population_deviation) && std::isfinite(c.time_deviation) &&
                  c.population_deviation <= config.validate_tolerance &&
                  c.time_deviation <= config.validate_tolerance;
  Table report = key_value_table({
      {"omega_bar", c.omega_bar},
      {"g_sw", c.g_sw},
      {"predicted_time", c.predicted_time},
      {"window", c.window},
      {"lab_max_population", c.lab_max_population},
      {"lab_transfer_time", c.lab_transfer_time},
      {"rwa_max_population", c.rwa_max_population},
      {"rwa_transfer_time", c.rwa_transfer_time},
      {"population_deviation", c.population_deviation},
      {"time_deviation", c.time_deviation},
      {"tolerance", config.validate_tolerance},
      {"pass", ok ? 1.0 : 0.0},
  });
  writer.write("validate", report);

  log << "max population: lab " << format_number(c.lab_max_population) << ", rwa "
      << format_number(c.rwa_max_population) << " (deviation "
      << format_number(c.population_deviation) << ")\n"
      << "transfer time: lab " << format_number(c.lab_transfer_time) << " ns, rwa "
      << format_number(c.rwa_transfer_time) << " ns (deviation "
      << format_number(c.time_deviation) << ")\n"
      << "lab-frame run took " << c.lab_seconds << " s\n"
      << (ok ? "PASS" : "FAIL") << " at tolerance " << format_number(config.validate_tolerance)
      << "\n";
  return ok ? kExitOk : kExitValidation;
}

}  // namespace x2mon
