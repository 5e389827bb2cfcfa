//
// Copyright 2026 The swflow Authors
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
//

// Command-line driver: run a flow, evaluate sliced distances between sample
// files, project a privacy ledger without running, and export toy target
// level sets.
//
// Exit codes: 0 success, 2 configuration error, 3 precondition or input
// validation error, 4 runtime numeric failure.

#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "swflow/config_json.hpp"
#include "swflow/datagen.hpp"
#include "swflow/errors.hpp"
#include "swflow/flow.hpp"
#include "swflow/mechanism.hpp"
#include "swflow/metrics.hpp"
#include "swflow/rng.hpp"
#include "swflow/types.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumeric = 4;

constexpr swflow::Index kToyTargetSamples = 2000;
constexpr std::uint64_t kRoleToyTarget = 0x746f7973;

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

std::string hex_fingerprint(std::uint64_t value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, value);
  return buffer;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << text << '\n';
  if (!file) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// Flags shared by `run` and `privacy`; merged over a preset and config file.
struct ConfigFlags {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<double> sigma;
  std::optional<double> epsilon;
  std::vector<long long> snapshots;
  bool snapshots_given = false;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--preset", flags.preset,
                  "Built-in preset: paper-toy or paper-latent-8d");
  cmd->add_option("--seed", flags.seed, "Override the run seed");
  cmd->add_option("--sigma", flags.sigma, "Override the smoothing noise std");
  cmd->add_option("--epsilon", flags.epsilon,
                  "Set sigma from a per-event epsilon target");
  cmd->add_option("--snapshots", flags.snapshots,
                  "Snapshot iterations, comma separated")
      ->delimiter(',')
      ->each([&flags](const std::string&) { flags.snapshots_given = true; });
}

swflow::FlowConfig preset_config(const std::string& name) {
  swflow::FlowConfig config;
  if (name == "paper-toy") {
    config.dim = 2;
    config.n_particles = 1000;
    config.n_theta = 200;
    config.k_steps = 200;
    config.h = 1.0;
    config.lambda = 0.001;
    config.sigma = 0.0;
    config.variant = swflow::FlowVariant::kResampling;
    config.require_normalized = false;  // toy data lives in a 2D box
  } else if (name == "paper-latent-8d") {
    config.dim = 8;
    config.n_theta = 70;
    config.m_theta = 70;
    config.delta = 1e-5;
    config.variant = swflow::FlowVariant::kPresampled;
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected paper-toy or paper-latent-8d)");
  }
  return config;
}

// Builds the effective config. Throws ParseError / invalid_argument for
// configuration problems and UnsupportedRegimeError when --epsilon needs a
// sensitivity bound outside its regime.
swflow::FlowConfig assemble_config(const ConfigFlags& flags) {
  swflow::FlowConfig config;
  if (!flags.preset.empty()) config = preset_config(flags.preset);
  if (!flags.config_path.empty())
    config = swflow::load_flow_config(flags.config_path, config);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.sigma && flags.epsilon)
    throw std::invalid_argument("--sigma and --epsilon are mutually exclusive");
  if (flags.sigma) config.sigma = *flags.sigma;
  if (flags.epsilon)
    config.sigma = swflow::sigma_for_epsilon(*flags.epsilon, config.delta,
                                             config.n_theta, config.dim,
                                             config.norm_factor);
  if (flags.snapshots_given) {
    config.snapshots.clear();
    for (long long k : flags.snapshots)
      config.snapshots.push_back(static_cast<swflow::Index>(k));
  }
  config.validate();
  return config;
}

int report_config_error(const std::exception& e) {
  std::cerr << "configuration error: " << e.what() << '\n';
  return kExitConfig;
}

int report_precondition_error(const std::exception& e) {
  std::cerr << "validation error: " << e.what() << '\n';
  return kExitPrecondition;
}

int report_runtime_error(const std::exception& e) {
  std::cerr << "runtime failure: " << e.what() << '\n';
  return kExitNumeric;
}

int cmd_run(const ConfigFlags& flags, const std::string& data_path, bool toy,
            const std::string& out_dir) {
  swflow::FlowConfig config;
  try {
    config = assemble_config(flags);
    if (toy == !data_path.empty())
      throw std::invalid_argument(
          "run needs exactly one input: a dataset path or --toy");
    if (toy && config.dim != 2)
      throw std::invalid_argument("--toy generates 2D data; config.dim is " +
                                  std::to_string(config.dim));
  } catch (const swflow::UnsupportedRegimeError& e) {
    return report_precondition_error(e);
  } catch (const std::exception& e) {
    return report_config_error(e);
  }

  swflow::Matrix target;
  std::string source;
  try {
    if (toy) {
      source = "toy";
      target = swflow::five_gaussian_ring().sample(
          kToyTargetSamples, swflow::derive_seed(config.seed, kRoleToyTarget));
    } else {
      source = data_path;
      target = swflow::load_dataset(data_path, config.dim).rows;
    }
  } catch (const std::exception& e) {
    return report_precondition_error(e);
  }

  try {
    const fs::path out(out_dir);
    fs::create_directories(out);

    json manifest;
    manifest["config"] = swflow::flow_config_to_json(config);
    manifest["dataset"] = {
        {"source", source},
        {"fingerprint", hex_fingerprint(swflow::matrix_fingerprint(target))},
        {"rows", target.rows()},
        {"dim", target.cols()}};
    manifest["started_at"] = timestamp_utc();
    manifest["finished_at"] = nullptr;
    manifest["status"] = "running";
    write_text(out / "manifest.json", manifest.dump(2));

    swflow::FlowResult result;
    try {
      result = swflow::run_flow(target, config);
    } catch (const swflow::PreconditionError& e) {
      return report_precondition_error(e);
    } catch (const swflow::UnsupportedRegimeError& e) {
      return report_precondition_error(e);
    }

    json outputs;
    outputs["snapshots"] = json::array();
    for (const swflow::ParticleCloud& cloud : result.trajectory.snapshots) {
      const std::string name =
          "snapshot_" + std::to_string(cloud.iteration) + ".csv";
      swflow::save_dataset((out / name).string(), cloud.positions);
      outputs["snapshots"].push_back(name);
    }
    swflow::save_dataset((out / "final.csv").string(),
                         result.trajectory.last.positions);
    outputs["final"] = "final.csv";

    const json report = swflow::privacy_report(result.ledger, config);
    write_text(out / "privacy_report.json", report.dump(2));
    outputs["privacy_report"] = "privacy_report.json";

    manifest["outputs"] = outputs;
    manifest["finished_at"] = timestamp_utc();
    manifest["status"] = "complete";
    write_text(out / "manifest.json", manifest.dump(2));

    json summary = {{"status", "complete"},
                    {"out_dir", out.string()},
                    {"events", result.ledger.size()},
                    {"epsilon_total", report["epsilon_total"]}};
    std::cout << summary.dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    return report_runtime_error(e);
  }
}

int cmd_eval(const std::string& a_path, const std::string& b_path,
             swflow::Index n_theta_eval, double sigma_eval,
             std::uint64_t seed) {
  swflow::Matrix a, b;
  try {
    a = swflow::load_dataset(a_path).rows;
    b = swflow::load_dataset(b_path).rows;
    if (a.cols() != b.cols())
      throw std::invalid_argument(
          "datasets have different dimensions: " + std::to_string(a.cols()) +
          " vs " + std::to_string(b.cols()));
  } catch (const std::exception& e) {
    return report_precondition_error(e);
  }

  try {
    swflow::MetricConfig metric;
    metric.n_theta_eval = n_theta_eval;
    metric.sigma_eval = 0.0;
    metric.seed = seed;
    json out = {{"swd", swflow::sliced_w2(a, b, metric)}};
    if (sigma_eval > 0.0) {
      metric.sigma_eval = sigma_eval;
      out["smoothed_swd"] = swflow::sliced_w2(a, b, metric);
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    return report_runtime_error(e);
  }
}

int cmd_privacy(const ConfigFlags& flags) {
  try {
    const swflow::FlowConfig config = assemble_config(flags);
    const swflow::PrivacyLedger ledger = swflow::projected_ledger(config);
    std::cout << swflow::privacy_report(ledger, config).dump(2) << '\n';
    return kExitOk;
  } catch (const swflow::UnsupportedRegimeError& e) {
    return report_precondition_error(e);
  } catch (const swflow::ParseError& e) {
    return report_config_error(e);
  } catch (const std::invalid_argument& e) {
    return report_config_error(e);
  } catch (const std::exception& e) {
    return report_runtime_error(e);
  }
}

int cmd_toy_export(const std::string& out_path, double radius, double variance,
                   double lo, double hi, swflow::Index resolution, double mass,
                   swflow::Index samples, std::uint64_t seed) {
  try {
    const swflow::GaussianMixture mixture =
        swflow::five_gaussian_ring(radius, variance);
    const std::vector<swflow::GridPoint> grid =
        swflow::density_grid(mixture, lo, hi, resolution);
    json array = json::array();
    for (const swflow::GridPoint& g : grid)
      array.push_back({g.x, g.y, g.density});
    write_text(out_path, array.dump());

    const double threshold =
        swflow::level_set_threshold(mixture, mass, samples, seed);
    const json info = {{"out", out_path},
                       {"mass", mass},
                       {"threshold", threshold},
                       {"grid_points", grid.size()}};
    std::cout << info.dump(2) << '\n';
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    return report_config_error(e);
  } catch (const std::exception& e) {
    return report_runtime_error(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Differentially private generative sampling by sliced Wasserstein "
      "gradient flow"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::string run_data;
  bool run_toy = false;
  std::string run_out = "swflow-run";
  CLI::App* run = app.add_subcommand("run", "Run a particle flow");
  run->add_option("dataset", run_data, "Target dataset CSV");
  run->add_flag("--toy", run_toy, "Use the built-in 2D five-Gaussian target");
  run->add_option("--out", run_out, "Output directory");
  add_config_flags(run, run_flags);

  std::string eval_a, eval_b;
  long long eval_n_theta = 500;
  double eval_sigma = 0.0;
  std::uint64_t eval_seed = 0;
  CLI::App* eval = app.add_subcommand(
      "eval", "Sliced 2-Wasserstein distance between two sample files");
  eval->add_option("a", eval_a, "First dataset CSV")->required();
  eval->add_option("b", eval_b, "Second dataset CSV")->required();
  eval->add_option("--n-theta", eval_n_theta, "Evaluation directions");
  eval->add_option("--sigma", eval_sigma,
                   "Also report the smoothed distance at this noise std");
  eval->add_option("--seed", eval_seed, "Evaluation seed");

  ConfigFlags privacy_flags;
  CLI::App* privacy = app.add_subcommand(
      "privacy", "Project the privacy ledger for a config without running");
  add_config_flags(privacy, privacy_flags);

  std::string export_out = "level_sets.json";
  double export_radius = 6.0, export_variance = 0.25;
  double export_lo = -9.0, export_hi = 9.0;
  long long export_resolution = 121;
  double export_mass = 0.99;
  long long export_samples = 200000;
  std::uint64_t export_seed = 0;
  CLI::App* toy_export = app.add_subcommand(
      "toy-export", "Export toy target density grid and level-set threshold");
  toy_export->add_option("--out", export_out, "Grid JSON output path");
  toy_export->add_option("--radius", export_radius, "Ring radius");
  toy_export->add_option("--variance", export_variance, "Component variance");
  toy_export->add_option("--lo", export_lo, "Grid lower bound");
  toy_export->add_option("--hi", export_hi, "Grid upper bound");
  toy_export->add_option("--resolution", export_resolution, "Grid points per axis");
  toy_export->add_option("--mass", export_mass, "Level-set probability mass");
  toy_export->add_option("--samples", export_samples,
                         "Monte Carlo draws for the threshold");
  toy_export->add_option("--seed", export_seed, "Threshold sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  }

  if (run->parsed())
    return cmd_run(run_flags, run_data, run_toy, run_out);
  if (eval->parsed())
    return cmd_eval(eval_a, eval_b, static_cast<swflow::Index>(eval_n_theta),
                    eval_sigma, eval_seed);
  if (privacy->parsed()) return cmd_privacy(privacy_flags);
  if (toy_export->parsed())
    return cmd_toy_export(export_out, export_radius, export_variance,
                          export_lo, export_hi,
                          static_cast<swflow::Index>(export_resolution),
                          export_mass,
                          static_cast<swflow::Index>(export_samples),
                          export_seed);
  return kExitConfig;
}
