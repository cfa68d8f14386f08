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


#include "catch_amalgamated.hpp"

#include "pnsec/random.hpp"

#include <set>

using namespace pnsec;

TEST_CASE("random - philox4x32-10 known answers")
{
    using Ctr = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;
    CHECK(philox4x32(Ctr{0, 0, 0, 0}, Key{0, 0}) == Ctr{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32(Ctr{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, Key{0xffffffffu, 0xffffffffu}) ==
          Ctr{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32(Ctr{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, Key{0xa4093822u, 0x299f31d0u}) ==
          Ctr{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("random - engine is a pure function of seed, trial and stream")
{
    PhiloxEngine a(7, 42, Stream::channels);
    PhiloxEngine b(7, 42, Stream::channels);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a() == b());

    std::set<std::uint64_t> firsts;
    for (std::uint64_t seed : {1ull, 2ull})
        for (std::uint64_t trial : {0ull, 1ull, 1ull << 33})
            for (Stream s : {Stream::channels, Stream::phases, Stream::uplink_noise})
                firsts.insert(PhiloxEngine(seed, trial, s)());
    CHECK(firsts.size() == 18);
}

TEST_CASE("random - engine output matches the block function")
{
    PhiloxEngine e(0x1122334455667788ull, 3, Stream::phases);
    const auto block = philox4x32({0, 1, 3, 0}, {0x55667788u, 0x11223344u});
    CHECK(e() == ((std::uint64_t{block[1]} << 32) | block[0]));
    CHECK(e() == ((std::uint64_t{block[3]} << 32) | block[2]));
    const auto next = philox4x32({1, 1, 3, 0}, {0x55667788u, 0x11223344u});
    CHECK(e() == ((std::uint64_t{next[1]} << 32) | next[0]));
}

TEST_CASE("random - complex normal moments")
{
    PhiloxEngine e(99, 0, Stream::test);
    ComplexNormal<double> draw(2.0);
    const int n = 200000;
    std::complex<double> mean = 0.0;
    double power = 0.0;
    std::complex<double> pseudo = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto z = draw(e);
        mean += z;
        power += std::norm(z);
        pseudo += z * z;
    }
    mean /= n;
    power /= n;
    pseudo /= n;
    // stderr of the power estimate is 2 / sqrt(n) ~ 0.0045
    CHECK(std::abs(mean) < 0.02);
    CHECK(power == Catch::Approx(2.0).margin(0.02));
    CHECK(std::abs(pseudo) < 0.03);

    ComplexNormal<double> zero(0.0);
    CHECK(zero(e) == std::complex<double>(0.0, 0.0));
}
