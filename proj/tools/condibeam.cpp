// Copyright 2026 The condibeam Authors
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

// condibeam <experiment> --config <path> [--out <path>] [--format csv|json-like]
// condibeam selftest [--inject-fault]
//
// Exit status: 0 success, 2 configuration error, 3 domain error, 4 selftest failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitSelftest = 4;

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "condibeam: cannot write '" << path << "'\n";
    return kExitConfig;
  }
  f << text;
  return 0;
}

int run_experiment(const std::string& name, const std::string& config_path, const std::string& out_path,
                   const std::string& format) {
  using namespace condibeam::cli;
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  Config cfg;
  try {
    cfg = Config::load(config_path);
    if (format == "csv" && name != "prob-scan" && name.find("grid") == std::string::npos) {
      throw ConfigError("--format csv is available for grid experiments and prob-scan only");
    }
    outcome = experiments().at(name)(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "condibeam: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const condibeam::Error& e) {
    std::cerr << "condibeam: " << e.what() << '\n';
    return kExitDomain;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (format == "csv") {
    return emit(outcome.grid ? grid_csv(*outcome.grid) : *outcome.table_csv, out_path);
  }
  ordered_json env;
  env["version"] = condibeam::kVersion;
  env["experiment"] = name;
  env["config"] = cfg.raw();
  env["results"] = outcome.results;
  if (outcome.grid) env["grid"] = grid_json(*outcome.grid);
  env["wall_clock_seconds"] = seconds;
  return emit(env.dump(2) + "\n", out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional beam-splitter state engineering in a truncated Fock space", "condibeam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", condibeam::kVersion);

  std::string config_path, out_path, format = "json-like";
  for (const auto& [name, runner] : condibeam::cli::experiments()) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", config_path, "Experiment configuration file")->required();
    sub->add_option("--out", out_path, "Output file (default: standard output)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json-like"}));
  }
  bool inject_fault = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in property suite");
  selftest->add_flag("--inject-fault", inject_fault, "Corrupt the closed-form operator to exercise failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (selftest->parsed()) {
    return condibeam::cli::run_selftest({inject_fault}, stdout) ? 0 : kExitSelftest;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    return run_experiment(sub->get_name(), config_path, out_path, format);
  }
  return kExitConfig;
}
