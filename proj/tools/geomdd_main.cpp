// Copyright 2026 The geomdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// geomdd <command> [--config FILE] [--set key=value]... [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical or other failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geomdd/config.hpp"
#include "geomdd/errors.hpp"
#include "geomdd/experiments.hpp"

namespace {

std::string read_text(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw geomdd::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric gates with dynamical decoupling: experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  const std::vector<std::string> commands{"compare-models", "gate-fidelity", "robustness-sweep",
                                          "dd-scaling", "waveguide-g", "validate"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name, name == "validate" ? "check a config and print it resolved"
                                                            : "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override one key, e.g. --set dd.periods=9");
    if (name != "validate") sub->add_option("--out", out_dir, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd != "validate") overrides.insert(overrides.begin(), "experiment=" + cmd);
    const auto cfg = geomdd::cli::load_config(read_text(config_path), overrides,
                                              config_path.empty() ? "<defaults>" : config_path);
    if (cmd == "validate") {
      std::cout << geomdd::cli::to_json(cfg).dump(2) << "\n";
      return 0;
    }
    const std::string out = out_dir.empty() ? cfg.output : out_dir;
    for (const auto& w : geomdd::cli::run_experiment(cfg, out)) std::cerr << "warning: " << w << "\n";
    return 0;
  } catch (const geomdd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const geomdd::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
