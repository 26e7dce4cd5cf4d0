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

// OpenMP kernels against their serial references.

#include "lia/decoder.hpp"
#include "lia/diophantine.hpp"
#include "lia/xchannel.hpp"

#include <benchmark/benchmark.h>

namespace
{
    using namespace lia;

    LatticeModel mac_lattice(int Q)
    {
        const auto topo = sample_topology(TopologyKind::SimoMac, 3, 1, Field::Real, 3);
        CMatrix g(2, 3);
        for (int u = 0; u < 3; ++u)
            g.col(u) = topo.H(u, 0).col(0);
        return make_lattice(g, 0, 1.0, {Q, Q, Q}, Field::Real);
    }

    LatticeModel kx2_lattice(int Q)
    {
        // one antenna, desired symbol plus two interference sums of range 2Q
        CMatrix g(1, 3);
        g << 1.0, 0.6180339887, -1.4142135623;
        return make_lattice(g, 0, 1.0, {Q, 2 * Q, 2 * Q}, Field::Complex);
    }

    void BM_MinDistance(benchmark::State &st)
    {
        const auto lat = st.range(1) ? kx2_lattice(static_cast<int>(st.range(0))) : mac_lattice(static_cast<int>(st.range(0)));
        for (auto _ : st)
            benchmark::DoNotOptimize(min_distance(lat));
    }

    void BM_MinDistanceSerial(benchmark::State &st)
    {
        const auto lat = st.range(1) ? kx2_lattice(static_cast<int>(st.range(0))) : mac_lattice(static_cast<int>(st.range(0)));
        for (auto _ : st)
            benchmark::DoNotOptimize(min_distance_serial(lat));
    }

    LinearFormsPoint forms_point(int m, int n)
    {
        Rng rng(derive_seed(0xBE, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)));
        return sample_forms_point(m, n, Field::Real, rng);
    }

    void BM_FormDistance(benchmark::State &st)
    {
        const auto X = forms_point(static_cast<int>(st.range(0)), 2);
        for (auto _ : st)
            benchmark::DoNotOptimize(min_form_distance(X, static_cast<int>(st.range(1)), FormMode::Hybrid));
    }

    void BM_FormDistanceSerial(benchmark::State &st)
    {
        const auto X = forms_point(static_cast<int>(st.range(0)), 2);
        for (auto _ : st)
            benchmark::DoNotOptimize(min_form_distance_serial(X, static_cast<int>(st.range(1)), FormMode::Hybrid));
    }
} // namespace

BENCHMARK(BM_MinDistance)->ArgsProduct({{8, 32, 128}, {0}})->Args({4, 1})->Args({8, 1})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinDistanceSerial)->ArgsProduct({{8, 32, 128}, {0}})->Args({4, 1})->Args({8, 1})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FormDistance)->Args({2, 20})->Args({3, 12})->Args({3, 24})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FormDistanceSerial)->Args({2, 20})->Args({3, 12})->Args({3, 24})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
