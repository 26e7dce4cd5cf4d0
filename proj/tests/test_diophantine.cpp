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

#include "lia/diophantine.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace lia;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    LinearFormsPoint point(int m, int n, std::initializer_list<double> v)
    {
        LinearFormsPoint X;
        X.X.resize(m, n);
        auto it = v.begin();
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i)
                X.X(k, i) = *it++;
        return X;
    }

    std::vector<double> reals(const std::vector<cplx> &v)
    {
        std::vector<double> out;
        for (cplx c : v)
            out.push_back(c.real());
        return out;
    }
} // namespace

// Frozen values from tools/derive_oracles.py.
TEST_CASE("form distance oracle values", "[diophantine][oracle]")
{
    const auto X21 = point(2, 1, {0.3141, -0.2718});
    for (FormMode mode : {FormMode::Classical, FormMode::Hybrid})
    {
        const auto w = min_form_distance(X21, 5, mode);
        CHECK_THAT(w.error, WithinAbs(0.012799999999999923, 1e-14));
        CHECK(reals(w.q) == std::vector<double>{-2, 5});
        CHECK(reals(w.p) == std::vector<double>{-2});
        CHECK(w.norm == 5.0);
    }

    const auto X22 = point(2, 2, {0.11, 0.37, -0.29, 0.43});
    const auto c = min_form_distance(X22, 4, FormMode::Classical);
    CHECK_THAT(c.error, WithinAbs(0.07999999999999996, 1e-14));
    CHECK(reals(c.q) == std::vector<double>{-1, 3});
    CHECK(reals(c.p) == std::vector<double>{-1, 1});
    const auto h = min_form_distance(X22, 4, FormMode::Hybrid);
    CHECK_THAT(h.error, WithinAbs(0.27000000000000002, 1e-14));
    CHECK(reals(h.q) == std::vector<double>{-4, 1});
    CHECK(reals(h.p) == std::vector<double>{-1, -1});
}

TEST_CASE("census oracle values", "[diophantine][oracle]")
{
    const auto rows = gaussian_lattice_census(4);
    REQUIRE(rows.size() == 4);
    const std::int64_t disc[] = {5, 13, 29, 49}, shell[] = {144, 672, 1560, 4160},
                       resonant[] = {1072, 12800, 56504, 256096};
    for (int i = 0; i < 4; ++i)
    {
        CHECK(rows[static_cast<std::size_t>(i)].disc == disc[i]);
        CHECK(rows[static_cast<std::size_t>(i)].pair_shell == shell[i]);
        CHECK(rows[static_cast<std::size_t>(i)].resonant == resonant[i]);
    }
    CHECK(gaussian_lattice_census(100).back().disc == 31417);
}

TEST_CASE("parallel, serial and reference searches agree", "[diophantine][property]")
{
    Rng rng(derive_seed(0xF0E5));
    for (int it = 0; it < 120; ++it)
    {
        const int m = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 2);
        const Field f = it % 4 == 3 ? Field::Complex : Field::Real;
        const int N = 1 + static_cast<int>(rng() % (f == Field::Complex ? 4 : 9));
        const auto X = sample_forms_point(m, n, f, rng);
        for (FormMode mode : {FormMode::Classical, FormMode::Hybrid})
        {
            if (mode == FormMode::Hybrid && m + 1 <= n)
                continue;
            const auto a = min_form_distance(X, N, mode);
            const auto b = min_form_distance_serial(X, N, mode);
            const auto r = min_form_distance_reference(X, N, mode);
            CHECK(a.error == b.error);
            CHECK(a.q == b.q);
            CHECK(a.error == r.error);
            CHECK(a.q == r.q);
            CHECK(a.p == r.p);
            CHECK(a.norm <= N);
        }
    }
}

TEST_CASE("witness error never exceeds one half in classical mode", "[diophantine][property]")
{
    Rng rng(derive_seed(0x11A1F));
    for (int it = 0; it < 100; ++it)
    {
        const auto X = sample_forms_point(2, 2, Field::Real, rng);
        const auto w = min_form_distance(X, 3, FormMode::Classical);
        CHECK(w.error <= 0.5);
        // more candidates can only help
        CHECK(min_form_distance(X, 6, FormMode::Classical).error <= w.error);
    }
}

TEST_CASE("hybrid mode needs m + 1 > n; budgets are enforced", "[diophantine]")
{
    Rng rng(1);
    const auto X = sample_forms_point(1, 2, Field::Real, rng);
    CHECK_THROWS_AS(min_form_distance(X, 5, FormMode::Hybrid), ConfigError);
    const auto Y = sample_forms_point(3, 1, Field::Real, rng);
    CHECK_THROWS_AS(min_form_distance(Y, 50, FormMode::Classical, 1000), BudgetExceeded);
}

TEST_CASE("Dirichlet checks", "[diophantine][property]")
{
    for (std::uint64_t s = 0; s < 50; ++s)
    {
        Rng rng(derive_seed(0xD1, s));
        const auto r = dirichlet_hybrid_check(sample_forms_point(2, 1, Field::Real, rng), 10);
        CHECK(r.holds);
        CHECK_THAT(r.bound, WithinRel(4.0 * 2.0 * std::pow(10.0, -2.0), 1e-15));
    }
}

TEST_CASE("complex Dirichlet constant reproduces from its calibration census", "[diophantine][calibration]")
{
    std::vector<double> v;
    for (std::uint64_t s = 0; s < 2000; ++s)
    {
        Rng rng(derive_seed(0xCA11B, s));
        const auto X = sample_forms_point(2, 1, Field::Complex, rng);
        v.push_back(min_form_distance(X, 10, FormMode::Classical).error * 100.0);
    }
    std::sort(v.begin(), v.end());
    const double p99 = v[1979];
    CHECK(p99 <= kComplexDirichletConstant);
    CHECK(kComplexDirichletConstant - p99 < 1e-3);
}

TEST_CASE("approximating functions", "[diophantine]")
{
    CHECK_THAT(ApproxFunction::power_law(-2.0)(4.0), WithinRel(1.0 / 16, 1e-15));
    CHECK_THAT(ApproxFunction::power_law(-2.0, 0.5, 3.0)(4.0), WithinRel(3.0 / 32, 1e-15));
    CHECK(ApproxFunction::log_power(1.0, 1.0)(1.0) == ApproxFunction::log_power(1.0, 1.0)(2.0));
    const auto t = ApproxFunction::tabulated({0.5, 0.25, 0.125});
    CHECK(t(2.0) == 0.25);
    CHECK(t(9.0) == 0.125);
}

TEST_CASE("series verdicts", "[diophantine]")
{
    const auto conv = kg_series(ApproxFunction::power_law(-2.5), 2, 1, 3, SeriesVariant::Hybrid);
    CHECK_THAT(conv.partial_sums.back(), WithinRel(1.546003480323149, 1e-14));
    CHECK(conv.convergent);
    CHECK(conv.exact_verdict);
    CHECK(conv.exponent == -1.5);

    CHECK_FALSE(kg_series(ApproxFunction::power_law(-1.5), 2, 1, 100, SeriesVariant::Hybrid).convergent);
    // psi = r^-1 in classical (1, 1): harmonic series
    CHECK_FALSE(kg_series(ApproxFunction::power_law(-1.0), 1, 1, 100, SeriesVariant::Classical).convergent);
    // r^-1 (ln r)^-2 converges
    const auto lp = kg_series(ApproxFunction::log_power(1.0, 2.0), 1, 1, 100, SeriesVariant::Classical);
    CHECK(lp.convergent);
    CHECK(lp.log_exponent == -2.0);
    // complex classical doubles the exponents: r^(2m-1) psi^(2n) with psi = r^-1.5, m = n = 1
    CHECK(kg_series(ApproxFunction::power_law(-1.5), 1, 1, 10, SeriesVariant::ComplexClassical).exponent == -2.0);
}

TEST_CASE("approximable fraction is monotone in the search floor", "[diophantine][property]")
{
    const auto psi = ApproxFunction::power_law(-2.5);
    double prev = 1.0;
    for (int N0 : {1, 4, 10, 25})
    {
        const double f = estimate_approximable_measure(psi, 2, 1, FormMode::Hybrid, Field::Real, 120, N0, 30, 17);
        CHECK(f <= prev);
        CHECK(f >= 0.0);
        prev = f;
    }
}

TEST_CASE("badly approximable profile is non-increasing", "[diophantine][property]")
{
    Rng rng(derive_seed(0xBAD));
    for (int it = 0; it < 20; ++it)
    {
        const auto X = sample_forms_point(2, 1, Field::Real, rng);
        const auto prof = badly_approximable_profile(X, 40, FormMode::Hybrid);
        REQUIRE(prof.size() == 40);
        for (std::size_t i = 1; i < prof.size(); ++i)
            CHECK(prof[i] <= prof[i - 1]);
        CHECK(badly_approximable_constant(X, 40, FormMode::Hybrid) == prof.back());
    }
}
