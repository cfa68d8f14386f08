// SPDX-License-Identifier: Apache-2.0
//
// pnsec: secrecy-rate analysis of phase-noise-impaired massive MIMO downlinks
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

// Flat `key = value` experiment files. '#' starts a comment, arrays are comma
// separated, keys are exactly the SystemConfig field names. Unknown keys and
// missing required keys are errors.

#include "pnsec/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pnsec {

// Keys every config file must define, in canonical order.
const std::vector<std::string> &config_keys();

SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::filesystem::path &path);

// Sets one field from its textual form ("auto" where permitted). Also accepts
// the sweep alias `sigma_deg`, which sets both phase-noise deviations.
void set_config_value(SystemConfig &cfg, std::string_view key, std::string_view value);

// Canonical text form; parse_config(format_config(c)) == c.
std::string format_config(const SystemConfig &cfg);

}  // namespace pnsec
