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

#ifndef LIA_HARNESS_HPP
#define LIA_HARNESS_HPP

#include "lia/diophantine.hpp"
#include "lia/xchannel.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lia
{
    enum class Scenario
    {
        Kx2,
        TwoByK,
        Mac,
        Dioph,
        AlignCensus
    };

    std::string_view to_string(Scenario s);
    Scenario scenario_from_string(std::string_view s);

    struct Tolerances
    {
        double alignment = 1e-9; // relative alignment residual
        double gamma = 1e-9;     // d_min / A below this counts as a property-Gamma violation
    };

    struct DiophCell
    {
        int m = 2;
        int n = 1;
        FormMode mode = FormMode::Hybrid;
        Field field = Field::Real;
    };

    struct DiophConfig
    {
        std::vector<DiophCell> cells{{2, 1, FormMode::Hybrid, Field::Real}, {2, 2, FormMode::Hybrid, Field::Real}};
        std::vector<int> N_list{5, 10, 20};
        int dirichlet_samples = 200;
        int measure_samples = 500;
        std::vector<int> N0_list{2, 20};
        int N_max = 60;
        double psi_convergent = -2.5;
        double psi_divergent = -1.5;
        int bad_N_max = 100;
        int bad_samples = 50;
        int census_r_max = 120;
    };

    struct ExperimentConfig
    {
        Scenario scenario = Scenario::Kx2;
        int K = 2;
        int M = 1;
        Field field = Field::Real;
        std::vector<int> Q_list{2, 3, 4, 6, 8};
        std::optional<double> A_exponent;     // default: K (kx2, 2xk)
        double mac_per_antenna_exponent = 2.0;
        double mac_joint_exponent = 0.5;
        std::optional<double> noise_variance; // per real dimension; default per scenario
        int trials = 20;
        int symbols_per_trial = 200;
        std::uint64_t seed = 1;
        std::string output;
        int threads = 0;                      // 0: runtime default
        Tolerances tolerances;
        double cond_ceiling = 1e6;
        int max_resamples = 20;
        DiophConfig dioph;

        double amplitude_exponent() const;
        double noise() const;
    };

    // Pinned default noise variances per real dimension.
    double default_noise_variance(Scenario s, Field f);

    // Strict parse: unknown keys and out-of-range values raise ConfigError.
    ExperimentConfig config_from_json(const nlohmann::json &j);
    nlohmann::json to_json(const ExperimentConfig &c);
    ExperimentConfig load_config(const std::string &path);
    void validate(const ExperimentConfig &c);

    struct TrialRecord
    {
        std::string scenario;
        std::uint64_t seed = 0;
        int trial = 0;
        int K = 0;
        int M = 0;
        Field field = Field::Real;
        int Q = 0;
        double A = 0;
        double P = 0;
        double d_min = 0;
        double err_rate = 0;
        double rate_bound = 0;
        double dof_estimate = 0;
        // not serialized
        std::int64_t errors = 0;
        std::int64_t decisions = 0;
        int symbols = 0;
        double sigma = 1.0;
        double error_bound = 1.0;
    };

    struct RunResult
    {
        std::vector<TrialRecord> records;
        nlohmann::json summary;
    };

    // Per-axis value used in slope fits: 0.5 log2 P (real) or log2 P (complex).
    double dof_axis(double P, Field field);

    // Least-squares slope of mean per-message rate against dof_axis; needs >= 3 distinct Q.
    double estimate_dof_slope(const std::vector<TrialRecord> &records);

    RunResult run_kx2(const ExperimentConfig &c);
    RunResult run_2xk(const ExperimentConfig &c);
    RunResult run_mac(const ExperimentConfig &c);
    RunResult run_align_census(const ExperimentConfig &c);
    RunResult run(const ExperimentConfig &c);

    struct DiophRow
    {
        int m = 0;
        int n = 0;
        std::string mode;
        std::string field;
        int N = 0;
        std::string statistic;
        double value = 0;
        std::uint64_t seed = 0;
    };

    std::vector<DiophRow> run_dioph(const ExperimentConfig &c);

    inline constexpr const char *kSimulationCsvHeader =
        "scenario,seed,trial,K,M,field,Q,A,P,d_min,err_rate,rate_bound,dof_estimate";
    inline constexpr const char *kDiophCsvHeader = "m,n,mode,field,N,statistic,value,seed";

    void write_csv(std::ostream &os, const std::vector<TrialRecord> &records);
    void write_csv(std::ostream &os, const std::vector<DiophRow> &rows);
    std::string format_number(double v);
} // namespace lia

#endif
