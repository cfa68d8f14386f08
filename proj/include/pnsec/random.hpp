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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace pnsec {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
{
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round)
    {
        const std::uint64_t p0 = std::uint64_t{M0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{M1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

// Purpose of a random stream inside one Monte Carlo trial. Distinct purposes
// never share counters, so e.g. switching thermal noise off does not shift
// the channel draws.
enum class Stream : std::uint32_t
{
    channels = 0,
    phases = 1,
    uplink_noise = 2,
    eavesdropper = 3,
    symbols = 4,
    test = 0xFFFFu,
};

// Counter-based engine: key = root seed, counter = (block, stream, trial).
// Satisfies UniformRandomBitGenerator with 64-bit outputs. Two engines with
// the same (seed, trial, stream) produce identical sequences regardless of
// which thread creates them or when.
class PhiloxEngine
{
public:
    using result_type = std::uint64_t;

    PhiloxEngine(std::uint64_t seed, std::uint64_t trial, Stream stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_(trial), stream_(static_cast<std::uint32_t>(stream))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (lane_ == 2)
        {
            block_ = philox4x32({block_index_, stream_, static_cast<std::uint32_t>(trial_),
                                 static_cast<std::uint32_t>(trial_ >> 32)},
                                key_);
            ++block_index_;
            lane_ = 0;
        }
        const auto out = (std::uint64_t{block_[2 * lane_ + 1]} << 32) | block_[2 * lane_];
        ++lane_;
        return out;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t trial_;
    std::uint32_t stream_;
    std::uint32_t block_index_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int lane_ = 2;
};

// Circularly symmetric complex Gaussian sampler, CN(0, variance).
template <typename Real>
class ComplexNormal
{
public:
    explicit ComplexNormal(Real variance = Real(1)) : scale_(std::sqrt(variance / Real(2))) {}

    template <typename Engine>
    std::complex<Real> operator()(Engine &engine)
    {
        const Real re = unit_(engine);
        const Real im = unit_(engine);
        return {scale_ * re, scale_ * im};
    }

private:
    Real scale_;
    std::normal_distribution<Real> unit_;
};

}  // namespace pnsec
