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

#include "swflow/config_json.hpp"

#include <fstream>
#include <set>
#include <vector>

#include "swflow/errors.hpp"

namespace swflow {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw ParseError(origin, 0, message);
}

double as_double(const json& v, const std::string& origin,
                 const std::string& key) {
  if (!v.is_number()) fail(origin, "'" + key + "' must be a number");
  return v.get<double>();
}

Index as_index(const json& v, const std::string& origin,
               const std::string& key) {
  if (!v.is_number_integer()) fail(origin, "'" + key + "' must be an integer");
  return v.get<Index>();
}

bool as_bool(const json& v, const std::string& origin, const std::string& key) {
  if (!v.is_boolean()) fail(origin, "'" + key + "' must be a boolean");
  return v.get<bool>();
}

}  // namespace

FlowConfig flow_config_from_json(const json& j, const std::string& origin,
                                 const FlowConfig& base) {
  if (!j.is_object()) fail(origin, "config root must be a JSON object");

  static const std::set<std::string> known = {
      "dim",        "n_particles", "n_theta",     "m_theta",
      "k_steps",    "h",           "lambda",      "sigma",
      "delta",      "norm_factor", "variant",     "init",
      "init_radius", "seed",       "clip_drift",  "require_normalized",
      "snapshots"};
  for (const auto& item : j.items())
    if (known.find(item.key()) == known.end())
      fail(origin, "unknown config key '" + item.key() + "'");

  FlowConfig config = base;
  if (j.contains("dim")) config.dim = as_index(j["dim"], origin, "dim");
  if (j.contains("n_particles"))
    config.n_particles = as_index(j["n_particles"], origin, "n_particles");
  if (j.contains("n_theta"))
    config.n_theta = as_index(j["n_theta"], origin, "n_theta");
  if (j.contains("m_theta"))
    config.m_theta = as_index(j["m_theta"], origin, "m_theta");
  if (j.contains("k_steps"))
    config.k_steps = as_index(j["k_steps"], origin, "k_steps");
  if (j.contains("h")) config.h = as_double(j["h"], origin, "h");
  if (j.contains("lambda"))
    config.lambda = as_double(j["lambda"], origin, "lambda");
  if (j.contains("sigma")) config.sigma = as_double(j["sigma"], origin, "sigma");
  if (j.contains("delta")) config.delta = as_double(j["delta"], origin, "delta");
  if (j.contains("norm_factor"))
    config.norm_factor = as_double(j["norm_factor"], origin, "norm_factor");
  if (j.contains("init_radius"))
    config.init_radius = as_double(j["init_radius"], origin, "init_radius");
  if (j.contains("seed")) {
    const json& v = j["seed"];
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<long long>() < 0))
      fail(origin, "'seed' must be a non-negative integer");
    config.seed = v.get<std::uint64_t>();
  }
  if (j.contains("variant")) {
    const json& v = j["variant"];
    if (!v.is_string()) fail(origin, "'variant' must be a string");
    const std::string s = v.get<std::string>();
    if (s == "resampling")
      config.variant = FlowVariant::kResampling;
    else if (s == "presampled")
      config.variant = FlowVariant::kPresampled;
    else
      fail(origin,
           "'variant' must be 'resampling' or 'presampled', got '" + s + "'");
  }
  if (j.contains("init")) {
    const json& v = j["init"];
    if (!v.is_string()) fail(origin, "'init' must be a string");
    const std::string s = v.get<std::string>();
    if (s == "standard_gaussian")
      config.init = InitKind::kStandardGaussian;
    else if (s == "uniform_ball")
      config.init = InitKind::kUniformBall;
    else
      fail(origin,
           "'init' must be 'standard_gaussian' or 'uniform_ball', got '" + s +
               "'");
  }
  if (j.contains("clip_drift"))
    config.clip_drift = as_bool(j["clip_drift"], origin, "clip_drift");
  if (j.contains("require_normalized"))
    config.require_normalized =
        as_bool(j["require_normalized"], origin, "require_normalized");
  if (j.contains("snapshots")) {
    const json& v = j["snapshots"];
    if (!v.is_array()) fail(origin, "'snapshots' must be an array of integers");
    std::vector<Index> list;
    for (const json& e : v) {
      if (!e.is_number_integer())
        fail(origin, "'snapshots' must be an array of integers");
      list.push_back(e.get<Index>());
    }
    config.snapshots = std::move(list);
  }
  return config;
}

FlowConfig load_flow_config(const std::string& path, const FlowConfig& base) {
  std::ifstream file(path);
  if (!file) throw ParseError(path, 0, "cannot open file");
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  return flow_config_from_json(j, path, base);
}

json flow_config_to_json(const FlowConfig& config) {
  json j;
  j["dim"] = config.dim;
  j["n_particles"] = config.n_particles;
  j["n_theta"] = config.n_theta;
  j["m_theta"] = config.effective_m_theta();
  j["k_steps"] = config.k_steps;
  j["h"] = config.h;
  j["lambda"] = config.lambda;
  j["sigma"] = config.sigma;
  j["delta"] = config.delta;
  j["norm_factor"] = config.norm_factor;
  j["variant"] = config.variant == FlowVariant::kResampling ? "resampling"
                                                            : "presampled";
  j["init"] = config.init == InitKind::kStandardGaussian ? "standard_gaussian"
                                                         : "uniform_ball";
  j["init_radius"] = config.init_radius;
  j["seed"] = config.seed;
  j["clip_drift"] = config.effective_clip();
  j["require_normalized"] = config.require_normalized;
  j["snapshots"] = config.snapshot_plan();
  return j;
}

json privacy_report(const PrivacyLedger& ledger, const FlowConfig& config) {
  const ComposedPrivacy composed = ledger.compose(config.delta);
  json events = json::array();
  for (const MechanismEvent& event : ledger.events()) {
    events.push_back({{"iteration", event.iteration},
                      {"sigma", event.sigma},
                      {"sensitivity", event.sensitivity},
                      {"delta_local", event.delta_local},
                      {"gamma", event.gamma}});
  }
  return json{{"events", std::move(events)},
              {"epsilon_total", composed.epsilon},
              {"delta_rdp", composed.delta_rdp},
              {"delta_amplified_sum", composed.delta_amplified_sum},
              {"config_echo", flow_config_to_json(config)}};
}

}  // namespace swflow
