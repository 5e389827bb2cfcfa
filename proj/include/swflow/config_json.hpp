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

#ifndef SWFLOW_CONFIG_JSON_HPP_
#define SWFLOW_CONFIG_JSON_HPP_

#include <string>

#include "json.hpp"

#include "swflow/accountant.hpp"
#include "swflow/flow.hpp"

namespace swflow {

// Applies the keys present in j on top of base and returns the result.
// Keys mirror FlowConfig field names. Unknown keys, wrong types, and bad
// enum strings are rejected (fail-closed: a misspelled privacy parameter
// must never be silently ignored). origin names the source in errors.
FlowConfig flow_config_from_json(const nlohmann::json& j,
                                 const std::string& origin,
                                 const FlowConfig& base = FlowConfig{});

// Reads and applies a JSON config file. Throws ParseError on I/O, syntax,
// or schema problems.
FlowConfig load_flow_config(const std::string& path,
                            const FlowConfig& base = FlowConfig{});

// Fully resolved echo of a config: optional fields are emitted with their
// effective values, so feeding the echo back reproduces the run.
nlohmann::json flow_config_to_json(const FlowConfig& config);

// Privacy report for a ledger: per-event entries, the composed epsilon at
// target delta config.delta, both delta totals, and the config echo.
nlohmann::json privacy_report(const PrivacyLedger& ledger,
                              const FlowConfig& config);

}  // namespace swflow

#endif  // SWFLOW_CONFIG_JSON_HPP_
