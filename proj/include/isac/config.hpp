// SPDX-License-Identifier: Apache-2.0
//
// thz-isac-sim: gesture-adaptive THz integrated sensing and communication simulator
// Copyright (C) 2026 thz-isac-sim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <string>

#include "isac/runner.hpp"
#include "isac/scenario.hpp"

namespace isac {

struct AppConfig {
    ScenarioConfig scenario = ScenarioConfig::defaults();
    OptimizerConfig optimizer;
    ExperimentSpec experiment = ExperimentSpec::dynamic_defaults();
};

/// Built-in episode: over ten slots starting at slot 0, three users put the
/// device down while one picks it up; twenty slots total.
AppConfig default_dynamic_config();

/// Loads a JSON config file; missing keys keep their defaults. See the
/// README for the schema.
AppConfig load_config(const std::string& path);

}  // namespace isac
