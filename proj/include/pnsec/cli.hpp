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

#include <iostream>

namespace pnsec::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_numerical_error = 2;

// Entry point of the pnsec command line:
//   pnsec {analyze|simulate|validate|sweep|optimize-phi} --config PATH [--out DIR]
//         [--threads N] [--mode analytic|mc|both] [--sweep VAR=v1,v2,...]...
//         [--phi-grid start:stop:step] [--all-mts]
// Writes <out>/<subcommand>.csv and <out>/<subcommand>_summary.txt, plus plot
// data for sweeps and per-slot rates for validate.
int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr);

}  // namespace pnsec::cli
