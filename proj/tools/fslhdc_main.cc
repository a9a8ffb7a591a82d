/**
 * Copyright 2026 The fslhdc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fslhdc/config.h"
#include "fslhdc/errors.h"
#include "fslhdc/experiment.h"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> mnist_dir;
  std::vector<std::string> overrides;
};

void AddCommon(CLI::App *cmd, CommonArgs &args) {
  cmd->add_option("-c,--config", args.config_path, "key = value config file");
  cmd->add_option("-s,--seed", args.seed, "master seed (overrides master_seed)");
  cmd->add_option("-o,--out", args.out, "output directory for metrics.csv and summary.json");
  cmd->add_option("--mnist-dir", args.mnist_dir, "directory with the MNIST IDX files");
  cmd->add_option("--set", args.overrides, "override a config key, e.g. --set fed_epochs=10")->take_all();
}

fslhdc::cli::ExperimentConfig BuildConfig(fslhdc::cli::Task task, const CommonArgs &args) {
  using fslhdc::cli::ApplySetting;
  fslhdc::cli::ExperimentConfig config;
  if (const char *env = std::getenv("FSLHDC_MNIST_DIR")) config.mnist_dir = env;
  if (!args.config_path.empty()) fslhdc::cli::ApplyConfigFile(config, args.config_path);
  for (const auto &kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw fslhdc::ConfigError(kv, "--set expects key=value");
    ApplySetting(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (args.seed) config.master_seed = *args.seed;
  if (args.out) config.output_dir = *args.out;
  if (args.mnist_dir) config.mnist_dir = *args.mnist_dir;
  config.task = task;
  fslhdc::cli::Validate(config);
  return config;
}

}  // namespace

int main(int argc, char **argv) {
  using fslhdc::cli::Task;
  CLI::App app{"Federated split learning with hyperdimensional computing, and upload-time optimization"};
  app.require_subcommand(1);
  bool list_keys = false;
  app.add_flag("--list-keys", list_keys, "print every accepted config key and exit");

  CommonArgs args;
  struct Entry {
    Task task;
    const char *help;
  };
  const Entry entries[] = {
      {Task::kFslHdc, "FSL-HDC protocol: clients, fed server, main server"},
      {Task::kFlHdc, "FL-HDC baseline: fed server trains the parity AM directly"},
      {Task::kHdcUnit, "single-model 10-class digit HDC classifier"},
      {Task::kNetOpt, "joint power/bandwidth optimization for one scenario"},
      {Task::kNetSweep, "joint vs uniform-bandwidth baseline over a bandwidth (and power) sweep"},
      {Task::kCompare, "FSL-HDC and FL-HDC on identical encodings"},
  };
  std::optional<Task> chosen;
  for (const auto &e : entries) {
    auto *cmd = app.add_subcommand(std::string(fslhdc::cli::TaskName(e.task)), e.help);
    AddCommon(cmd, args);
    cmd->callback([&chosen, task = e.task] { chosen = task; });
  }

  if (argc == 2 && std::string(argv[1]) == "--list-keys") {
    for (const auto &key : fslhdc::cli::KnownKeys()) std::cout << key << "\n";
    return 0;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto config = BuildConfig(*chosen, args);
    const auto output = fslhdc::cli::RunExperiment(config);
    fslhdc::cli::WriteOutputs(output, config.output_dir);
    std::cout << output.summary.dump(2) << "\n";
    return 0;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return fslhdc::cli::ExitCodeFor(e);
  }
}
