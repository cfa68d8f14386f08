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

#include "pnsec/config.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

namespace pnsec::testing {

// N=128, K=B=4, N_E=4, 10 dB, phi=0.5, 6 deg on both oscillators.
inline SystemConfig reference_config()
{
    SystemConfig cfg;
    cfg.trials = 200;
    cfg.seed = 12345;
    return cfg;
}

inline SystemConfig small_config()
{
    SystemConfig cfg = reference_config();
    cfg.N = 16;
    cfg.K = 2;
    cfg.N_E = 2;
    cfg.T = 40;
    cfg.trials = 100;
    return cfg;
}

inline double relative_error(double value, double reference)
{
    return std::abs(value - reference) / std::abs(reference);
}

// Scratch directory removed on destruction.
class TempDir
{
public:
    explicit TempDir(const std::string &tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("pnsec_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;
    const std::filesystem::path &path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace pnsec::testing
