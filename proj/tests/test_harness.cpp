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

#include "lia/harness.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace lia;
using Catch::Matchers::WithinAbs;

namespace
{
    ExperimentConfig small(Scenario s)
    {
        ExperimentConfig c;
        c.scenario = s;
        c.trials = 4;
        c.symbols_per_trial = 40;
        c.Q_list = {2, 3, 4};
        c.seed = 5;
        return c;
    }

    std::string csv(const std::vector<TrialRecord> &r)
    {
        std::ostringstream os;
        write_csv(os, r);
        return os.str();
    }
} // namespace

TEST_CASE("config JSON round trip and strictness", "[harness]")
{
    ExperimentConfig c = small(Scenario::TwoByK);
    c.K = 3;
    c.field = Field::Complex;
    const auto back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));

    auto j = to_json(c);
    j["trails"] = 3;
    CHECK_THROWS_AS(config_from_json(j), ConfigError);

    auto k = to_json(c);
    k["scenario"] = "ring";
    CHECK_THROWS_AS(config_from_json(k), ConfigError);
}

TEST_CASE("validation", "[harness]")
{
    auto c = small(Scenario::Kx2);
    CHECK_NOTHROW(validate(c));
    c.Q_list = {2, 3};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small(Scenario::Kx2);
    c.K = 1;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small(Scenario::Dioph);
    c.dioph.cells = {{1, 2, FormMode::Hybrid, Field::Real}};
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("DoF axis and slope estimator", "[harness]")
{
    CHECK(dof_axis(16, Field::Real) == 2.0);
    CHECK(dof_axis(16, Field::Complex) == 4.0);

    // synthetic records on an exact line rate = 0.4 * axis - 1
    std::vector<TrialRecord> recs;
    for (int Q : {2, 4, 8, 16})
        for (int t = 0; t < 3; ++t)
        {
            TrialRecord r;
            r.Q = Q;
            r.P = std::pow(Q, 6.0);
            r.rate_bound = 0.4 * dof_axis(r.P, Field::Real) - 1.0;
            recs.push_back(r);
        }
    CHECK_THAT(estimate_dof_slope(recs), WithinAbs(0.4, 1e-12));
    recs.resize(6);
    CHECK_THROWS_AS(estimate_dof_slope(recs), std::invalid_argument);
}

TEST_CASE("accounting columns follow the amplitude law", "[harness]")
{
    const auto res = run_kx2(small(Scenario::Kx2));
    REQUIRE_FALSE(res.records.empty());
    for (const auto &r : res.records)
    {
        // K = 2: A = Q^2, P = 2 A^2 Q^2
        CHECK_THAT(r.A, WithinAbs(std::pow(r.Q, 2.0), 1e-9));
        CHECK_THAT(r.P, WithinAbs(2.0 * r.A * r.A * r.Q * r.Q, 1e-6));
        CHECK(r.err_rate >= 0.0);
        CHECK(r.err_rate <= 1.0);
        CHECK(r.d_min > 0.0);
    }
    CHECK(res.summary.at("targets").at("per_message_dof") == Catch::Approx(1.0 / 3));
}

TEST_CASE("runs are reproducible and independent of the thread count", "[harness]")
{
    for (Scenario s : {Scenario::Kx2, Scenario::TwoByK, Scenario::Mac})
    {
        auto c = small(s);
        c.threads = 1;
        const std::string a = csv(run(c).records);
        c.threads = 3;
        CHECK(csv(run(c).records) == a);
        c.seed = 6;
        CHECK(csv(run(c).records) != a);
    }
}

TEST_CASE("noiseless runs decode perfectly", "[harness]")
{
    auto c = small(Scenario::Mac);
    c.noise_variance = 0.0;
    for (const auto &r : run_mac(c).records)
        CHECK(r.errors == 0);
}

TEST_CASE("CSV formatting", "[harness]")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3) == "0.333333333333");
    CHECK(format_number(INFINITY) == "inf");
    std::ostringstream os;
    write_csv(os, std::vector<TrialRecord>{});
    CHECK(os.str() == std::string(kSimulationCsvHeader) + "\n");

    std::ostringstream ds;
    write_csv(ds, std::vector<DiophRow>{{2, 1, "hybrid", "real", 10, "dirichlet_rate", 1.0, 3}});
    CHECK(ds.str() == std::string(kDiophCsvHeader) + "\n2,1,hybrid,real,10,dirichlet_rate,1,3\n");
}

TEST_CASE("Diophantine rows cover every statistic", "[harness]")
{
    auto c = small(Scenario::Dioph);
    c.dioph.cells = {{2, 1, FormMode::Hybrid, Field::Real}, {2, 1, FormMode::Classical, Field::Complex}};
    c.dioph.dirichlet_samples = 10;
    c.dioph.measure_samples = 10;
    c.dioph.bad_samples = 4;
    c.dioph.census_r_max = 30;
    c.dioph.N_list = {3, 5, 8};
    c.dioph.N0_list = {2, 5};
    c.dioph.N_max = 10;
    c.dioph.bad_N_max = 8;
    const auto rows = run_dioph(c);
    int dirichlet = 0, census = 0;
    for (const auto &r : rows)
    {
        dirichlet += r.statistic == "dirichlet_rate";
        census += r.statistic.rfind("census_", 0) == 0;
    }
    CHECK(dirichlet == 6);
    CHECK(census == 2);
}
