// SPDX-License-Identifier: Apache-2.0
//
// lia: layered interference alignment simulator for MIMO X channels
// Copyright (C) 2026 The lia authors
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

#include "lia/constellation.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <stdexcept>

using namespace lia;
using Catch::Matchers::WithinAbs;

TEST_CASE("constellation points and power", "[constellation]")
{
    const auto c = build_constellation(2, 1.5);
    REQUIRE(c.size() == 5);
    CHECK(c.points.front() == -3.0);
    CHECK(c.points[2] == 0.0);
    CHECK(c.points.back() == 3.0);
    CHECK(c.max_power() == 9.0);
    CHECK_THROWS_AS(build_constellation(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(2, 0.0), std::invalid_argument);
}

TEST_CASE("layered antenna encoding", "[constellation]")
{
    // integer layering with b = 2Q + 1 is the textbook uniquely decodable pair
    const EncodingPair stacked{1.0, 5.0};
    CHECK(encode_antenna(-2, 1, stacked, 2.0, 2) == 6.0);
    CHECK(unique_decomposition_check(stacked, 2));
    CHECK_FALSE(unique_decomposition_check({1.0, 1.0}, 2));
    CHECK_FALSE(unique_decomposition_check({1.0, 4.0}, 2));
    CHECK_THROWS_AS(encode_antenna(3, 0, stacked, 1.0, 2), std::out_of_range);
}

TEST_CASE("irrational weight ratios decompose uniquely", "[constellation][property]")
{
    Rng rng(derive_seed(0x7E57, 1));
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int it = 0; it < 200; ++it)
    {
        const EncodingPair p{1.0, u(rng)};
        const int Q = 1 + static_cast<int>(rng() % 6);
        // an exact collision needs b = -du/dv with |du|, |dv| <= 2Q; random b avoids it
        CHECK(unique_decomposition_check(p, Q, 1e-12));
    }
}

TEST_CASE("amplitude scaling law", "[constellation]")
{
    const ScalingLaw law{2.0};
    CHECK(law.amplitude(3) == 9.0);
    CHECK_THAT(law.power(3), WithinAbs(729.0, 1e-9));
    CHECK(symbol_cardinality(3, Field::Real) == 7.0);
    CHECK(symbol_cardinality(3, Field::Complex) == 49.0);
}

TEST_CASE("symbol draws stay in range and cover it", "[constellation][property]")
{
    for (int Q : {1, 2, 5})
    {
        Rng rng(derive_seed(0x5E, static_cast<std::uint64_t>(Q)));
        std::map<int, int> hits;
        for (int i = 0; i < 4000; ++i)
        {
            const cplx s = draw_symbol(rng, Q, Field::Complex);
            REQUIRE(std::abs(s.real()) <= Q);
            REQUIRE(std::abs(s.imag()) <= Q);
            ++hits[static_cast<int>(s.real())];
            const cplx r = draw_symbol(rng, Q, Field::Real);
            REQUIRE(r.imag() == 0.0);
        }
        CHECK(hits.size() == static_cast<std::size_t>(2 * Q + 1));
    }
}
