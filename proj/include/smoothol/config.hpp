// Copyright 2026 The Smoothol Authors.
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

#ifndef SMOOTHOL_CONFIG_HPP_
#define SMOOTHOL_CONFIG_HPP_

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

#include "smoothol/harness.hpp"
#include "smoothol/verify.hpp"

namespace smoothol {

/// Malformed or inconsistent configuration. Messages name the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json_file(const std::string& path);
nlohmann::json parse_json_text(std::string_view text, const std::string& source = "<text>");

/// Applies "a.b.0.c=value". The value is parsed as JSON when it parses,
/// otherwise taken as a string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
VerifyConfig parse_verify_config(const nlohmann::json& doc);

/// Built-in configurations used when no --config is given.
nlohmann::json default_ratio_config();
nlohmann::json default_regret_config();
nlohmann::json default_oracle_config();
nlohmann::json default_verify_config();

}  // namespace smoothol

#endif  // SMOOTHOL_CONFIG_HPP_
