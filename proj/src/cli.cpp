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

#include <CLI11.hpp>

#include <ostream>

#include "x2mon/commands.hpp"
#include "x2mon/errors.hpp"

namespace x2mon {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
  CLI::App app{"x2mon: shuttle-transmon coupling coefficients and swap-protocol dynamics"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  int fock_dim = 0;
  double tolerance = -1.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.path)");
    sub->add_option("--format", format, "csv or json (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--fock-dim", fock_dim, "Fock truncation N (overrides numeric.fock_dim)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", tolerance, "validation tolerance (overrides validate.tolerance)")
        ->check(CLI::NonNegativeNumber);
  };
  CLI::App* coefficients = app.add_subcommand("coefficients", "coupling ledger over a flux grid");
  CLI::App* swap = app.add_subcommand("swap", "swap-in / hold / swap-out protocol");
  CLI::App* validate = app.add_subcommand("validate", "lab-frame vs RWA swap comparison");
  for (CLI::App* sub : {coefficients, swap, validate}) add_common(sub);

  std::vector<const char*> argv;
  argv.push_back("x2mon");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, log);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, log);
    return kExitConfig;
  }

  try {
    RunConfig config = load_config(config_path);
    if (!out_dir.empty()) config.output_path = out_dir;
    if (!format.empty()) config.format = parse_output_format(format);
    if (fock_dim > 0) {
      if (fock_dim < 2) throw ConfigError("--fock-dim must be at least 2");
      config.numeric.fock_dim = fock_dim;
    }
    if (tolerance >= 0.0) config.validate_tolerance = tolerance;

    if (coefficients->parsed()) return cmd_coefficients(config, log);
    if (swap->parsed()) return cmd_swap(config, log);
    return cmd_validate(config, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IntegrationFailure& e) {
    log << "integration failure: " << e.what() << "\n";
    return kExitIntegration;
  } catch (const UnsupportedConfiguration& e) {
    log << "unsupported configuration: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    log << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    log << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace x2mon
