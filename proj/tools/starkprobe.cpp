// Copyright 2026 The starkprobe Authors
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

// starkprobe: run an experiment described by a config file.
//
//   starkprobe run <config> [--out DIR] [--threads N] [--seed S]
//
// Exit status: 0 success, 2 bad config or arguments, 3 numerical failure.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "stark/config.hpp"
#include "stark/errors.hpp"
#include "stark/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stark-probe sensing experiments"};
  app.set_version_flag("--version", stark::experiments::code_version());
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the experiment described by a config (or manifest) file");
  std::string config_path;
  std::string out_dir = "results";
  int threads = 0;
  long long seed = -1;
  run->add_option("config", config_path, "Config file (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--threads", threads, "Worker threads (overrides the config)")->check(CLI::Range(1, 1024));
  run->add_option("--seed", seed, "Base seed (overrides the config)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    auto cfg = stark::config::load(config_path);
    if (threads > 0) cfg.threads = threads;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    const auto summary = stark::experiments::run(cfg, out_dir);
    for (const auto& f : summary.files) std::cout << out_dir << "/" << f.name << "  " << f.rows << " rows\n";
    std::cout << out_dir << "/" << stark::experiments::kManifestName << "\n";
    return 0;
  } catch (const stark::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const stark::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const stark::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
