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

#include "pnsec/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace pnsec {

EveBound eve_capacity_upper(const ValidatedConfig &cfg)
{
    if (!cfg.eve_bound_defined())
        return {std::numeric_limits<double>::quiet_NaN(), EveBoundStatus::undefined};
    const PowerSplit split = power_split(cfg);
    if (split.q <= 0.0)
        return {std::numeric_limits<double>::infinity(), EveBoundStatus::no_artificial_noise};
    const double NE = cfg.N_E();
    return {std::log2(1.0 + split.p * NE / (split.q * (cfg.L() - NE))), EveBoundStatus::ok};
}

SecrecyBound combine_secrecy(const ValidatedConfig &cfg, const std::vector<double> &rates, const EveBound &eve)
{
    const auto &weights = cfg.slot_weights();
    SecrecyBound out;
    out.eve = eve;
    double rate_sum = 0.0;
    double secrecy_sum = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i)
    {
        rate_sum += weights[i] * rates[i];
        if (eve.status == EveBoundStatus::ok)
            secrecy_sum += weights[i] * std::max(rates[i] - eve.value, 0.0);
    }
    out.mean_rate = rate_sum / (cfg.T() - cfg.B());
    out.secrecy = secrecy_sum / cfg.T();
    return out;
}

std::vector<double> phi_grid(double start, double stop, double step)
{
    if (!(step > 0.0) || !(start <= stop))
        throw ConfigError({"phi grid needs start <= stop and step > 0"});
    std::vector<double> grid;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    for (double phi : grid)
        if (!(phi > 0.0 && phi <= 1.0))
            throw ConfigError({"phi grid values must lie in (0, 1]"});
    return grid;
}

}  // namespace pnsec
