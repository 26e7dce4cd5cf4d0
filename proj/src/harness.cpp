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

#include "lia/alignment.hpp"
#include "lia/constellation.hpp"
#include "lia/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lia
{
    std::string_view to_string(Scenario s)
    {
        switch (s)
        {
        case Scenario::Kx2:
            return "kx2";
        case Scenario::TwoByK:
            return "2xk";
        case Scenario::Mac:
            return "mac";
        case Scenario::Dioph:
            return "dioph";
        case Scenario::AlignCensus:
            return "align-census";
        }
        return "?";
    }

    Scenario scenario_from_string(std::string_view s)
    {
        for (auto sc : {Scenario::Kx2, Scenario::TwoByK, Scenario::Mac, Scenario::Dioph, Scenario::AlignCensus})
            if (s == to_string(sc))
                return sc;
        throw ConfigError("unknown scenario '" + std::string(s) + "'");
    }

    double default_noise_variance(Scenario s, Field f)
    {
        // With A = Q^k the realized d_min constants sit near 0.02..0.06 for K = 2 and the MAC;
        // sigma ~ 3e-3 keeps d_min / sigma near 10 so the error rate stays small at every Q.
        (void)s;
        (void)f;
        return 1e-5;
    }

    double ExperimentConfig::amplitude_exponent() const { return A_exponent ? *A_exponent : static_cast<double>(K); }
    double ExperimentConfig::noise() const { return noise_variance ? *noise_variance : default_noise_variance(scenario, field); }

    // ---------------------------------------------------------------------------------------
    // Config

    namespace
    {
        template <typename T>
        T get_as(const nlohmann::json &j, const char *key)
        {
            try
            {
                return j.get<T>();
            }
            catch (const nlohmann::json::exception &)
            {
                throw ConfigError(std::string("config: bad value for '") + key + "'");
            }
        }

        DiophConfig dioph_from_json(const nlohmann::json &j)
        {
            DiophConfig d;
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                const std::string &k = it.key();
                const auto &v = it.value();
                if (k == "cells")
                {
                    d.cells.clear();
                    for (const auto &cj : v)
                    {
                        DiophCell cell;
                        for (auto ci = cj.begin(); ci != cj.end(); ++ci)
                        {
                            if (ci.key() == "m")
                                cell.m = get_as<int>(ci.value(), "m");
                            else if (ci.key() == "n")
                                cell.n = get_as<int>(ci.value(), "n");
                            else if (ci.key() == "mode")
                                cell.mode = form_mode_from_string(get_as<std::string>(ci.value(), "mode"));
                            else if (ci.key() == "field")
                                cell.field = field_from_string(get_as<std::string>(ci.value(), "field"));
                            else
                                throw ConfigError("config: unknown key 'dioph.cells." + ci.key() + "'");
                        }
                        d.cells.push_back(cell);
                    }
                }
                else if (k == "N_list")
                    d.N_list = get_as<std::vector<int>>(v, "N_list");
                else if (k == "dirichlet_samples")
                    d.dirichlet_samples = get_as<int>(v, "dirichlet_samples");
                else if (k == "measure_samples")
                    d.measure_samples = get_as<int>(v, "measure_samples");
                else if (k == "N0_list")
                    d.N0_list = get_as<std::vector<int>>(v, "N0_list");
                else if (k == "N_max")
                    d.N_max = get_as<int>(v, "N_max");
                else if (k == "psi_convergent")
                    d.psi_convergent = get_as<double>(v, "psi_convergent");
                else if (k == "psi_divergent")
                    d.psi_divergent = get_as<double>(v, "psi_divergent");
                else if (k == "bad_N_max")
                    d.bad_N_max = get_as<int>(v, "bad_N_max");
                else if (k == "bad_samples")
                    d.bad_samples = get_as<int>(v, "bad_samples");
                else if (k == "census_r_max")
                    d.census_r_max = get_as<int>(v, "census_r_max");
                else
                    throw ConfigError("config: unknown key 'dioph." + k + "'");
            }
            return d;
        }
    } // namespace

    ExperimentConfig config_from_json(const nlohmann::json &j)
    {
        if (!j.is_object())
            throw ConfigError("config: expected a JSON object");
        ExperimentConfig c;
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            const std::string &k = it.key();
            const auto &v = it.value();
            if (k == "scenario")
                c.scenario = scenario_from_string(get_as<std::string>(v, "scenario"));
            else if (k == "K")
                c.K = get_as<int>(v, "K");
            else if (k == "M")
                c.M = get_as<int>(v, "M");
            else if (k == "field")
                c.field = field_from_string(get_as<std::string>(v, "field"));
            else if (k == "Q_list")
                c.Q_list = get_as<std::vector<int>>(v, "Q_list");
            else if (k == "A_exponent")
                c.A_exponent = get_as<double>(v, "A_exponent");
            else if (k == "mac_per_antenna_exponent")
                c.mac_per_antenna_exponent = get_as<double>(v, "mac_per_antenna_exponent");
            else if (k == "mac_joint_exponent")
                c.mac_joint_exponent = get_as<double>(v, "mac_joint_exponent");
            else if (k == "noise_variance")
                c.noise_variance = get_as<double>(v, "noise_variance");
            else if (k == "trials")
                c.trials = get_as<int>(v, "trials");
            else if (k == "symbols_per_trial")
                c.symbols_per_trial = get_as<int>(v, "symbols_per_trial");
            else if (k == "seed")
                c.seed = get_as<std::uint64_t>(v, "seed");
            else if (k == "output")
                c.output = get_as<std::string>(v, "output");
            else if (k == "threads")
                c.threads = get_as<int>(v, "threads");
            else if (k == "cond_ceiling")
                c.cond_ceiling = get_as<double>(v, "cond_ceiling");
            else if (k == "max_resamples")
                c.max_resamples = get_as<int>(v, "max_resamples");
            else if (k == "tolerances")
            {
                for (auto ti = v.begin(); ti != v.end(); ++ti)
                {
                    if (ti.key() == "alignment")
                        c.tolerances.alignment = get_as<double>(ti.value(), "alignment");
                    else if (ti.key() == "gamma")
                        c.tolerances.gamma = get_as<double>(ti.value(), "gamma");
                    else
                        throw ConfigError("config: unknown key 'tolerances." + ti.key() + "'");
                }
            }
            else if (k == "dioph")
                c.dioph = dioph_from_json(v);
            else
                throw ConfigError("config: unknown key '" + k + "'");
        }
        validate(c);
        return c;
    }

    nlohmann::json to_json(const ExperimentConfig &c)
    {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto &cell : c.dioph.cells)
            cells.push_back({{"m", cell.m}, {"n", cell.n}, {"mode", to_string(cell.mode)}, {"field", to_string(cell.field)}});
        nlohmann::json j = {{"scenario", to_string(c.scenario)},
                            {"K", c.K},
                            {"M", c.M},
                            {"field", to_string(c.field)},
                            {"Q_list", c.Q_list},
                            {"A_exponent", c.amplitude_exponent()},
                            {"mac_per_antenna_exponent", c.mac_per_antenna_exponent},
                            {"mac_joint_exponent", c.mac_joint_exponent},
                            {"noise_variance", c.noise()},
                            {"trials", c.trials},
                            {"symbols_per_trial", c.symbols_per_trial},
                            {"seed", c.seed},
                            {"output", c.output},
                            {"threads", c.threads},
                            {"cond_ceiling", c.cond_ceiling},
                            {"max_resamples", c.max_resamples},
                            {"tolerances", {{"alignment", c.tolerances.alignment}, {"gamma", c.tolerances.gamma}}},
                            {"dioph",
                             {{"cells", cells},
                              {"N_list", c.dioph.N_list},
                              {"dirichlet_samples", c.dioph.dirichlet_samples},
                              {"measure_samples", c.dioph.measure_samples},
                              {"N0_list", c.dioph.N0_list},
                              {"N_max", c.dioph.N_max},
                              {"psi_convergent", c.dioph.psi_convergent},
                              {"psi_divergent", c.dioph.psi_divergent},
                              {"bad_N_max", c.dioph.bad_N_max},
                              {"bad_samples", c.dioph.bad_samples},
                              {"census_r_max", c.dioph.census_r_max}}}};
        return j;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("config: cannot open '" + path + "'");
        try
        {
            return config_from_json(nlohmann::json::parse(in));
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    void validate(const ExperimentConfig &c)
    {
        auto fail = [](const std::string &m) { throw ConfigError("config: " + m); };
        if (c.trials < 1)
            fail("trials must be >= 1");
        if (c.threads < 0)
            fail("threads must be >= 0");
        if (c.tolerances.alignment <= 0 || c.tolerances.gamma <= 0)
            fail("tolerances must be positive");

        if (c.scenario == Scenario::Dioph)
        {
            const auto &d = c.dioph;
            if (d.cells.empty())
                fail("dioph.cells must not be empty");
            for (const auto &cell : d.cells)
            {
                if (cell.m < 1 || cell.n < 1)
                    fail("dioph cell needs m, n >= 1");
                if (cell.mode == FormMode::Hybrid && cell.m + 1 <= cell.n)
                    fail("hybrid cells require m + 1 > n");
            }
            if (d.N_list.empty() || std::any_of(d.N_list.begin(), d.N_list.end(), [](int n) { return n < 1; }))
                fail("dioph.N_list needs positive entries");
            if (d.N0_list.empty() || std::any_of(d.N0_list.begin(), d.N0_list.end(),
                                                 [&d](int n) { return n < 0 || n >= d.N_max; }))
                fail("dioph.N0_list entries must lie in [0, N_max)");
            if (d.dirichlet_samples < 1 || d.measure_samples < 1 || d.bad_samples < 1 || d.bad_N_max < 1 ||
                d.census_r_max < 1)
                fail("dioph budgets must be positive");
            return;
        }

        if (c.scenario != Scenario::Mac)
        {
            if (c.K < 2)
                fail("K must be >= 2");
            if (c.M < 1)
                fail("M must be >= 1");
        }
        if (c.cond_ceiling < 1)
            fail("cond_ceiling must be >= 1");
        if (c.max_resamples < 0)
            fail("max_resamples must be >= 0");
        if (c.scenario == Scenario::AlignCensus)
            return;

        if (c.symbols_per_trial < 1)
            fail("symbols_per_trial must be >= 1");
        if (c.noise() < 0)
            fail("noise_variance must be >= 0");
        if (c.Q_list.empty() || std::any_of(c.Q_list.begin(), c.Q_list.end(), [](int q) { return q < 1; }))
            fail("Q_list needs entries >= 1");
        const std::set<int> distinct(c.Q_list.begin(), c.Q_list.end());
        if (distinct.size() != c.Q_list.size())
            fail("Q_list entries must be distinct");
        if (distinct.size() < 3)
            fail("at least 3 distinct Q values are needed for a slope fit");
        if (c.amplitude_exponent() < 0 || c.mac_joint_exponent < 0 || c.mac_per_antenna_exponent < 0)
            fail("amplitude exponents must be >= 0");
    }

    // ---------------------------------------------------------------------------------------
    // Slope

    double dof_axis(double P, Field field)
    {
        return field == Field::Complex ? std::log2(P) : 0.5 * std::log2(P);
    }

    double estimate_dof_slope(const std::vector<TrialRecord> &records)
    {
        std::map<int, std::pair<double, double>> by_q; // Q -> (sum rate, count)
        std::map<int, double> axis;
        for (const auto &r : records)
        {
            auto &acc = by_q[r.Q];
            acc.first += r.rate_bound;
            acc.second += 1;
            axis[r.Q] = dof_axis(r.P, r.field);
        }
        if (by_q.size() < 3)
            throw std::invalid_argument("estimate_dof_slope: need records at >= 3 distinct Q values");
        std::vector<double> x, y;
        for (const auto &[q, acc] : by_q)
        {
            x.push_back(axis[q]);
            y.push_back(acc.first / acc.second);
        }
        return least_squares_slope(x, y);
    }

    // ---------------------------------------------------------------------------------------
    // Monte Carlo

    namespace
    {
        constexpr std::uint64_t kChannelStream = 0xC11A;
        constexpr std::uint64_t kSymbolStream = 0x5E1B;

        // Decoding problem at one receiver, unit amplitude.
        struct Link
        {
            CMatrix coeffs;
            std::vector<int> half;    // per variable, in units of Q
            std::vector<int> desired; // variable indices carrying messages for this receiver
        };

        struct LinkAtQ
        {
            LatticeModel decode;
            double d_min = 0;
        };

        std::vector<int> scaled(const std::vector<int> &half, int Q)
        {
            std::vector<int> out;
            for (int h : half)
                out.push_back(h * Q);
            return out;
        }

        LinkAtQ prepare(const Link &l, int Q, double A, double noise, Field field)
        {
            const CMatrix raw = A * l.coeffs;
            const auto half = scaled(l.half, Q);
            LinkAtQ out;
            out.decode = make_lattice(raw, 0, noise, half, field);
            out.d_min = std::numeric_limits<double>::infinity();
            for (int t : l.desired)
            {
                const LatticeModel lat = make_lattice(raw, t, noise, half, field);
                if (min_distance_cost(lat) > 5e9)
                    throw BudgetExceeded("minimum-distance search exceeds the desk-scale budget");
                out.d_min = std::min(out.d_min, min_distance(lat));
            }
            if (nearest_point_cost(out.decode) > 5e8)
                throw BudgetExceeded("nearest-point search exceeds the desk-scale budget");
            return out;
        }

        // Stacks per-variable values into one vector.
        CVector stack(const std::vector<CVector> &parts)
        {
            Eigen::Index n = 0;
            for (const auto &p : parts)
                n += p.size();
            CVector v(n);
            n = 0;
            for (const auto &p : parts)
            {
                v.segment(n, p.size()) = p;
                n += p.size();
            }
            return v;
        }

        CVector draw_vector(Rng &rng, int Q, int M, Field field)
        {
            CVector v(M);
            for (int l = 0; l < M; ++l)
                v(l) = draw_symbol(rng, Q, field);
            return v;
        }

        // Number of desired-symbol errors in one receive vector.
        int count_errors(const LinkAtQ &lq, const Link &l, const CVector &y, const CVector &truth, Field field)
        {
            const NearestPoint np = nearest_point(lq.decode, real_embedding(y, field));
            const int rd = real_dims(field);
            int errors = 0;
            for (int t : l.desired)
            {
                bool ok = true;
                for (int d = 0; d < rd; ++d)
                {
                    const double want = d == 0 ? truth(t).real() : truth(t).imag();
                    ok = ok && np.coords[static_cast<std::size_t>(t * rd + d)] == static_cast<int>(std::lround(want));
                }
                errors += ok ? 0 : 1;
            }
            return errors;
        }

        struct Realization
        {
            std::vector<Link> links;
            // Fills per-receiver signals and variable truths for one symbol draw.
            std::function<void(Rng &, int Q, double A, double noise, std::vector<CVector> &y,
                               std::vector<CVector> &truth)>
                draw;
        };

        struct TrialOutcome
        {
            std::vector<TrialRecord> records;
            int attempts = 0;
            int rejected = 0;
            std::string last_rejection;
        };

        struct ScenarioSpec
        {
            std::string name;
            double exponent = 1.0;
            double streams = 1.0; // scalar streams per transmit antenna
            int receive_antennas = -1; // -1: all
        };

        TrialRecord make_record(const ExperimentConfig &c, const std::string &name, int trial, int Q, double A,
                                double streams, double noise)
        {
            TrialRecord r;
            r.scenario = name;
            r.seed = c.seed;
            r.trial = trial;
            r.K = c.scenario == Scenario::Mac ? 3 : c.K;
            r.M = c.scenario == Scenario::Mac ? 1 : c.M;
            r.field = c.field;
            r.Q = Q;
            r.A = A;
            r.P = A * A * Q * Q * streams;
            r.sigma = std::sqrt(noise);
            return r;
        }

        // Runs every Q of one realization; returns false with a reason on a Gamma violation.
        bool simulate_realization(const ExperimentConfig &c, int trial, const ScenarioSpec &spec,
                                  const Realization &real, std::vector<TrialRecord> &out, std::string &why)
        {
            const double noise = c.noise();
            std::vector<std::vector<LinkAtQ>> prepared;
            std::vector<double> amps;
            for (int Q : c.Q_list)
            {
                const double A = std::pow(static_cast<double>(Q), spec.exponent);
                std::vector<LinkAtQ> lq;
                for (const auto &l : real.links)
                {
                    lq.push_back(prepare(l, Q, A, noise, c.field));
                    if (!(lq.back().d_min > c.tolerances.gamma * A))
                    {
                        why = "property Gamma violated at Q=" + std::to_string(Q);
                        return false;
                    }
                }
                prepared.push_back(std::move(lq));
                amps.push_back(A);
            }

            for (std::size_t qi = 0; qi < c.Q_list.size(); ++qi)
            {
                const int Q = c.Q_list[qi];
                const double A = amps[qi];
                TrialRecord rec = make_record(c, spec.name, trial, Q, A, spec.streams, noise);
                rec.d_min = std::numeric_limits<double>::infinity();
                for (const auto &lq : prepared[qi])
                    rec.d_min = std::min(rec.d_min, lq.d_min);

                Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(Q),
                                    kSymbolStream));
                std::vector<CVector> y, truth;
                std::int64_t errors = 0, decisions = 0;
                for (int s = 0; s < c.symbols_per_trial; ++s)
                {
                    real.draw(rng, Q, A, noise, y, truth);
                    for (std::size_t l = 0; l < real.links.size(); ++l)
                    {
                        errors += count_errors(prepared[qi][l], real.links[l], y[l], truth[l], c.field);
                        decisions += static_cast<std::int64_t>(real.links[l].desired.size());
                    }
                }
                rec.errors = errors;
                rec.decisions = decisions;
                rec.symbols = c.symbols_per_trial;
                rec.err_rate = static_cast<double>(errors) / static_cast<double>(decisions);
                rec.error_bound = noise > 0 ? error_probability_bound(rec.d_min, rec.sigma).exponential : 0.0;
                rec.rate_bound = reported_rate(symbol_cardinality(Q, c.field), rec.err_rate);
                rec.dof_estimate = rec.rate_bound / dof_axis(rec.P, c.field);
                out.push_back(rec);
            }
            return true;
        }

        template <typename Builder>
        std::vector<TrialOutcome> run_trials(const ExperimentConfig &c, Builder &&build)
        {
#ifdef _OPENMP
            if (c.threads > 0)
                omp_set_num_threads(c.threads);
#endif
            std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(c.trials));
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(c.trials));
#pragma omp parallel for schedule(dynamic, 1)
            for (int t = 0; t < c.trials; ++t)
            {
                try
                {
                    outcomes[static_cast<std::size_t>(t)] = build(t);
                }
                catch (...)
                {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            }
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
            return outcomes;
        }

        nlohmann::json per_q_summary(const std::vector<TrialRecord> &recs)
        {
            std::map<int, std::vector<const TrialRecord *>> by_q;
            for (const auto &r : recs)
                by_q[r.Q].push_back(&r);
            nlohmann::json out = nlohmann::json::array();
            for (const auto &[q, rs] : by_q)
            {
                double dm = 0, er = 0, rb = 0;
                for (const auto *r : rs)
                {
                    dm += r->d_min;
                    er += r->err_rate;
                    rb += r->rate_bound;
                }
                const double n = static_cast<double>(rs.size());
                out.push_back({{"Q", q},
                               {"A", rs.front()->A},
                               {"P", rs.front()->P},
                               {"records", rs.size()},
                               {"mean_d_min", dm / n},
                               {"mean_err_rate", er / n},
                               {"mean_rate_bound", rb / n}});
            }
            return out;
        }

        nlohmann::json slope_or_null(const std::vector<TrialRecord> &recs)
        {
            std::set<int> qs;
            for (const auto &r : recs)
                qs.insert(r.Q);
            if (qs.size() < 3)
                return nullptr;
            return estimate_dof_slope(recs);
        }

        nlohmann::json rejection_summary(const std::vector<TrialOutcome> &outs)
        {
            int attempts = 0, rejected = 0, empty = 0;
            std::string last;
            for (const auto &o : outs)
            {
                attempts += o.attempts;
                rejected += o.rejected;
                empty += o.records.empty() ? 1 : 0;
                if (!o.last_rejection.empty())
                    last = o.last_rejection;
            }
            nlohmann::json j = {{"attempts", attempts},
                                {"rejected", rejected},
                                {"rate", attempts > 0 ? static_cast<double>(rejected) / attempts : 0.0},
                                {"trials_without_valid_realization", empty}};
            if (!last.empty())
                j["last_reason"] = last;
            return j;
        }

        std::vector<TrialRecord> collect(const std::vector<TrialOutcome> &outs, const std::string &name = "")
        {
            std::vector<TrialRecord> recs;
            for (const auto &o : outs)
                for (const auto &r : o.records)
                    if (name.empty() || r.scenario == name)
                        recs.push_back(r);
            return recs;
        }

        template <typename Attempt>
        TrialOutcome resample_loop(const ExperimentConfig &c, int trial, Attempt &&attempt)
        {
            TrialOutcome out;
            for (int a = 0; a <= c.max_resamples; ++a)
            {
                ++out.attempts;
                const std::uint64_t seed =
                    derive_seed(c.seed, static_cast<std::uint64_t>(trial), kChannelStream, static_cast<std::uint64_t>(a));
                std::string why;
                std::vector<TrialRecord> recs;
                bool ok = false;
                try
                {
                    ok = attempt(seed, recs, why);
                }
                catch (const InfeasibleError &e)
                {
                    why = e.what();
                }
                if (ok)
                {
                    out.records = std::move(recs);
                    return out;
                }
                ++out.rejected;
                out.last_rejection = "trial " + std::to_string(trial) + ": " + why;
            }
            return out;
        }

        nlohmann::json base_summary(const ExperimentConfig &c)
        {
            return {{"scenario", to_string(c.scenario)},
                    {"K", c.scenario == Scenario::Mac ? 3 : c.K},
                    {"M", c.scenario == Scenario::Mac ? 1 : c.M},
                    {"field", to_string(c.field)},
                    {"seed", c.seed},
                    {"trials", c.trials},
                    {"symbols_per_trial", c.symbols_per_trial},
                    {"noise_variance", c.noise()},
                    {"Q_list", c.Q_list}};
        }

        RunResult finish_x(const ExperimentConfig &c, const std::vector<TrialOutcome> &outs, double exponent)
        {
            RunResult res;
            res.records = collect(outs);
            const double msgs = 2.0 * c.K * c.M;
            const double per = 1.0 / (c.K + 1.0);
            nlohmann::json s = base_summary(c);
            s["A_exponent"] = exponent;
            s["targets"] = {{"per_message_dof", per},
                            {"total_dof", msgs * per},
                            {"total_dof_real_dimensions", c.field == Field::Complex ? 2 * msgs * per : msgs * per},
                            {"messages", msgs}};
            const auto slope = slope_or_null(res.records);
            s["measured"] = {{"per_message_slope", slope},
                             {"total_dof_estimate", slope.is_null() ? nlohmann::json() : nlohmann::json(msgs * slope.get<double>())}};
            s["rejection"] = rejection_summary(outs);
            s["per_Q"] = per_q_summary(res.records);
            res.summary = std::move(s);
            return res;
        }
    } // namespace

    RunResult run_kx2(const ExperimentConfig &c)
    {
        validate(c);
        const int K = c.K, M = c.M;
        const double exponent = c.amplitude_exponent();
        const ScenarioSpec spec{"kx2", exponent, 2.0};

        auto outs = run_trials(c, [&](int trial) {
            return resample_loop(c, trial, [&](std::uint64_t seed, std::vector<TrialRecord> &recs, std::string &why) {
                const XTopology topo = sample_topology(TopologyKind::KbyTwo, K, M, c.field, seed, c.cond_ceiling);
                const DirectionSetKx2 dirs = DirectionSetKx2::identity(M);
                const PrecodersKx2 pre = make_precoders_kx2(topo, dirs);
                const AlignmentReport rep = verify_alignment_kx2(topo, dirs, pre);
                if (!(rep.max_residual <= c.tolerances.alignment))
                {
                    why = "alignment residual above tolerance";
                    return false;
                }

                Realization real;
                for (int r = 0; r < 2; ++r)
                {
                    Link l;
                    l.coeffs.resize(M, (K + 1) * M);
                    for (int i = 0; i < K; ++i)
                        l.coeffs.middleCols(i * M, M) =
                            topo.H(i, r) * (r == 0 ? pre.pu[static_cast<std::size_t>(i)] : pre.pv[static_cast<std::size_t>(i)]);
                    l.coeffs.middleCols(K * M, M) = r == 0 ? dirs.I1 : dirs.I2;
                    for (int i = 0; i < K * M; ++i)
                    {
                        l.half.push_back(1);
                        l.desired.push_back(i);
                    }
                    for (int i = 0; i < M; ++i)
                        l.half.push_back(K);
                    real.links.push_back(std::move(l));
                }
                real.draw = [&topo, &pre, &c, K, M](Rng &rng, int Q, double A, double noise, std::vector<CVector> &y,
                                                   std::vector<CVector> &truth) {
                    std::vector<CVector> u, v;
                    for (int i = 0; i < K; ++i)
                        u.push_back(draw_vector(rng, Q, M, c.field));
                    for (int i = 0; i < K; ++i)
                        v.push_back(draw_vector(rng, Q, M, c.field));
                    y = transmit(topo, precode_kx2(pre, u, v, A), NoiseModel{noise}, rng);
                    CVector sv = CVector::Zero(M), su = CVector::Zero(M);
                    for (int i = 0; i < K; ++i)
                    {
                        su += u[static_cast<std::size_t>(i)];
                        sv += v[static_cast<std::size_t>(i)];
                    }
                    auto tu = u, tv = v;
                    tu.push_back(sv);
                    tv.push_back(su);
                    truth = {stack(tu), stack(tv)};
                };
                return simulate_realization(c, trial, spec, real, recs, why);
            });
        });
        return finish_x(c, outs, exponent);
    }

    RunResult run_2xk(const ExperimentConfig &c)
    {
        validate(c);
        const int K = c.K, M = c.M;
        const double exponent = c.amplitude_exponent();
        const ScenarioSpec spec{"2xk", exponent, static_cast<double>(K)};

        auto outs = run_trials(c, [&](int trial) {
            return resample_loop(c, trial, [&](std::uint64_t seed, std::vector<TrialRecord> &recs, std::string &why) {
                const XTopology topo = sample_topology(TopologyKind::TwoByK, K, M, c.field, seed, c.cond_ceiling);
                const ChainSolution sol = solve_direction_chain(topo);
                if (!sol.real_spectrum)
                {
                    why = "direction chain has no real eigen-direction";
                    return false;
                }
                if (!(sol.report.max_residual <= c.tolerances.alignment))
                {
                    why = "direction chain residual above tolerance";
                    return false;
                }
                const auto models = received_model_2xk(topo, sol.dirs);
                const DirectionSet2xK &dirs = sol.dirs;

                Realization real;
                for (const auto &rm : models)
                {
                    Link l;
                    l.coeffs.resize(M, (K + 1) * M);
                    l.coeffs.middleCols(0, M) = rm.desired_u;
                    l.coeffs.middleCols(M, M) = rm.desired_v;
                    for (std::size_t b = 0; b < rm.bundles.size(); ++b)
                        l.coeffs.middleCols(static_cast<Eigen::Index>(2 + b) * M, M) = rm.bundles[b].gain;
                    for (int i = 0; i < 2 * M; ++i)
                    {
                        l.half.push_back(1);
                        l.desired.push_back(i);
                    }
                    for (int i = 0; i < (K - 1) * M; ++i)
                        l.half.push_back(2);
                    real.links.push_back(std::move(l));
                }
                real.draw = [&topo, &dirs, &models, &c, K, M](Rng &rng, int Q, double A, double noise,
                                                             std::vector<CVector> &y, std::vector<CVector> &truth) {
                    std::vector<CVector> u, v;
                    for (int i = 0; i < K; ++i)
                        u.push_back(draw_vector(rng, Q, M, c.field));
                    for (int i = 0; i < K; ++i)
                        v.push_back(draw_vector(rng, Q, M, c.field));
                    y = transmit(topo, precode_2xk(dirs, u, v, A), NoiseModel{noise}, rng);
                    truth.clear();
                    for (const auto &rm : models)
                    {
                        std::vector<CVector> parts{u[static_cast<std::size_t>(rm.receiver)],
                                                   v[static_cast<std::size_t>(rm.receiver)]};
                        for (auto &b : rm.bundle_values(u, v))
                            parts.push_back(std::move(b));
                        truth.push_back(stack(parts));
                    }
                };
                return simulate_realization(c, trial, spec, real, recs, why);
            });
        });
        return finish_x(c, outs, exponent);
    }

    RunResult run_mac(const ExperimentConfig &c)
    {
        validate(c);
        const ScenarioSpec per_antenna{"mac-per-antenna", c.mac_per_antenna_exponent, 1.0};
        const ScenarioSpec joint{"mac-joint", c.mac_joint_exponent, 1.0};

        auto outs = run_trials(c, [&](int trial) {
            return resample_loop(c, trial, [&](std::uint64_t seed, std::vector<TrialRecord> &recs, std::string &why) {
                const XTopology topo = sample_topology(TopologyKind::SimoMac, 3, 1, c.field, seed, c.cond_ceiling);
                CMatrix g(2, 3);
                for (int u = 0; u < 3; ++u)
                    g.col(u) = topo.H(u, 0).col(0);

                auto make = [&](bool both) {
                    Realization real;
                    Link l;
                    l.coeffs = both ? g : CMatrix(g.topRows(1));
                    l.half = {1, 1, 1};
                    l.desired = {0, 1, 2};
                    real.links.push_back(std::move(l));
                    real.draw = [&topo, &c, both](Rng &rng, int Q, double A, double noise, std::vector<CVector> &y,
                                                  std::vector<CVector> &truth) {
                        std::vector<cplx> s(3);
                        for (auto &v : s)
                            v = draw_symbol(rng, Q, c.field);
                        const auto yy = transmit(topo, build_mac_streams(topo, s, Q, A), NoiseModel{noise}, rng);
                        y = {both ? yy[0] : CVector(yy[0].head(1))};
                        CVector t(3);
                        for (int u = 0; u < 3; ++u)
                            t(u) = s[static_cast<std::size_t>(u)];
                        truth = {t};
                    };
                    return real;
                };
                std::vector<TrialRecord> a, b;
                if (!simulate_realization(c, trial, per_antenna, make(false), a, why))
                {
                    why = "per-antenna: " + why;
                    return false;
                }
                if (!simulate_realization(c, trial, joint, make(true), b, why))
                {
                    why = "joint: " + why;
                    return false;
                }
                recs = std::move(a);
                recs.insert(recs.end(), b.begin(), b.end());
                return true;
            });
        });

        RunResult res;
        res.records = collect(outs);
        nlohmann::json s = base_summary(c);
        const auto pa = collect(outs, per_antenna.name), jt = collect(outs, joint.name);
        const auto spa = slope_or_null(pa), sjt = slope_or_null(jt);
        s["strategies"] = {
            {"per_antenna",
             {{"A_exponent", per_antenna.exponent}, {"target_dof", 1.0 / 3.0}, {"measured_slope", spa}, {"per_Q", per_q_summary(pa)}}},
            {"joint", {{"A_exponent", joint.exponent}, {"target_dof", 2.0 / 3.0}, {"measured_slope", sjt}, {"per_Q", per_q_summary(jt)}}}};
        s["separation"] = (spa.is_null() || sjt.is_null()) ? nlohmann::json() : nlohmann::json(sjt.get<double>() - spa.get<double>());
        s["targets"] = {{"per_antenna_total_dof", 1.0}, {"joint_total_dof", 2.0}};
        s["rejection"] = rejection_summary(outs);
        res.summary = std::move(s);
        return res;
    }

    RunResult run_align_census(const ExperimentConfig &c)
    {
        validate(c);
#ifdef _OPENMP
        if (c.threads > 0)
            omp_set_num_threads(c.threads);
#endif
        struct Row
        {
            double kx2_residual = 0;
            std::vector<int> kx2_rank;
            double chain_residual = 0;
            bool chain_real = true;
            std::string failure;
        };
        std::vector<Row> rows(static_cast<std::size_t>(c.trials));
        std::vector<std::exception_ptr> errs(static_cast<std::size_t>(c.trials));
#pragma omp parallel for schedule(dynamic, 1)
        for (int t = 0; t < c.trials; ++t)
        {
            try
            {
                auto &row = rows[static_cast<std::size_t>(t)];
                const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(t), kChannelStream);
                const XTopology kx2 = sample_topology(TopologyKind::KbyTwo, c.K, c.M, c.field, seed, c.cond_ceiling);
                const auto rep = verify_alignment_kx2(kx2, DirectionSetKx2::identity(c.M));
                row.kx2_residual = rep.max_residual;
                row.kx2_rank = rep.per_receiver_interference_rank;
                const XTopology two = sample_topology(TopologyKind::TwoByK, c.K, c.M, c.field, seed, c.cond_ceiling);
                try
                {
                    design_directions_2xk(two, c.tolerances.alignment);
                }
                catch (const InfeasibleError &e)
                {
                    row.failure = e.what();
                }
                const auto sol = solve_direction_chain(two);
                row.chain_residual = sol.report.max_residual;
                row.chain_real = sol.real_spectrum;
            }
            catch (...)
            {
                errs[static_cast<std::size_t>(t)] = std::current_exception();
            }
        }
        for (auto &e : errs)
            if (e)
                std::rethrow_exception(e);

        RunResult res;
        nlohmann::json s = base_summary(c);
        double kx2_max = 0, chain_max = 0;
        int feasible = 0, complex_spectrum = 0;
        nlohmann::json trials = nlohmann::json::array(), failures = nlohmann::json::array();
        for (std::size_t t = 0; t < rows.size(); ++t)
        {
            const auto &r = rows[t];
            kx2_max = std::max(kx2_max, r.kx2_residual);
            chain_max = std::max(chain_max, r.chain_residual);
            feasible += r.failure.empty() ? 1 : 0;
            complex_spectrum += r.chain_real ? 0 : 1;
            trials.push_back({{"trial", t},
                              {"kx2_residual", r.kx2_residual},
                              {"kx2_interference_rank", r.kx2_rank},
                              {"2xk_residual", r.chain_residual},
                              {"2xk_feasible", r.failure.empty()}});
            if (!r.failure.empty() && failures.size() < 5)
                failures.push_back({{"trial", t}, {"reason", r.failure}});
        }
        s["kx2"] = {{"max_residual", kx2_max}};
        s["2xk"] = {{"feasible", feasible},
                    {"feasibility_rate", static_cast<double>(feasible) / c.trials},
                    {"complex_spectrum", complex_spectrum},
                    {"max_residual", chain_max},
                    {"pairing", to_json(AlignmentReport{0, {}, {}, pairing_table_2xk(c.K)})["pairing"]},
                    {"example_failures", failures}};
        s["per_trial"] = trials;
        res.summary = std::move(s);
        return res;
    }

    RunResult run(const ExperimentConfig &c)
    {
        switch (c.scenario)
        {
        case Scenario::Kx2:
            return run_kx2(c);
        case Scenario::TwoByK:
            return run_2xk(c);
        case Scenario::Mac:
            return run_mac(c);
        case Scenario::AlignCensus:
            return run_align_census(c);
        case Scenario::Dioph:
            break;
        }
        throw ConfigError("run: the dioph scenario produces Diophantine rows; use run_dioph");
    }

    // ---------------------------------------------------------------------------------------
    // Diophantine sweep

    std::vector<DiophRow> run_dioph(const ExperimentConfig &c)
    {
        validate(c);
#ifdef _OPENMP
        if (c.threads > 0)
            omp_set_num_threads(c.threads);
#endif
        const DiophConfig &d = c.dioph;
        std::vector<DiophRow> rows;
        for (std::size_t ci = 0; ci < d.cells.size(); ++ci)
        {
            const DiophCell &cell = d.cells[ci];
            const std::string mode(to_string(cell.mode)), field(to_string(cell.field));
            auto emit = [&](int N, const std::string &stat, double v) {
                rows.push_back({cell.m, cell.n, mode, field, N, stat, v, c.seed});
            };
            const bool cx = cell.field == Field::Complex;
            const SeriesVariant variant = cx ? (cell.mode == FormMode::Hybrid ? SeriesVariant::ComplexHybrid
                                                                               : SeriesVariant::ComplexClassical)
                                             : (cell.mode == FormMode::Hybrid ? SeriesVariant::Hybrid
                                                                               : SeriesVariant::Classical);
            const std::size_t before = rows.size();
            try
            {
                // Dirichlet-type existence
                for (int N : d.N_list)
                {
                    int holds = 0;
                    std::vector<double> errs;
                    for (int s = 0; s < d.dirichlet_samples; ++s)
                    {
                        Rng rng(derive_seed(c.seed, ci, 0xD1u, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(s)));
                        const auto X = sample_forms_point(cell.m, cell.n, cell.field, rng);
                        const auto w = min_form_distance(X, N, cell.mode);
                        errs.push_back(w.error);
                        double bound;
                        if (cx)
                            bound = kComplexDirichletConstant * std::pow(N, -static_cast<double>(cell.m) / cell.n);
                        else if (cell.mode == FormMode::Hybrid)
                            bound = (cell.m + 2) * 2.0 * std::pow(N, 1.0 - static_cast<double>(cell.m + 1) / cell.n);
                        else
                            bound = std::pow(N, -static_cast<double>(cell.m) / cell.n);
                        holds += w.error < bound ? 1 : 0;
                    }
                    emit(N, "dirichlet_rate", static_cast<double>(holds) / d.dirichlet_samples);
                    emit(N, "median_error", median(errs));
                }

                // series verdicts next to Monte Carlo fractions
                for (double e : {d.psi_convergent, d.psi_divergent})
                {
                    char tag[32];
                    std::snprintf(tag, sizeof tag, "%g", e);
                    const auto psi = ApproxFunction::power_law(e);
                    const auto series = kg_series(psi, cell.m, cell.n, 10000, variant);
                    emit(d.N_max, std::string("series_convergent_psi=") + tag, series.convergent ? 1.0 : 0.0);
                    emit(d.N_max, std::string("series_exponent_psi=") + tag, series.exponent);
                    for (int N0 : d.N0_list)
                    {
                        const double f = estimate_approximable_measure(
                            psi, cell.m, cell.n, cell.mode, cell.field, d.measure_samples, N0, d.N_max,
                            derive_seed(c.seed, ci, 0xAEu, static_cast<std::uint64_t>(std::lround(e * 100))));
                        emit(N0, std::string("fraction_psi=") + tag, f);
                    }
                }

                // empirical badly-approximable constants
                std::vector<double> consts;
                for (int s = 0; s < d.bad_samples; ++s)
                {
                    Rng rng(derive_seed(c.seed, ci, 0xBAu, static_cast<std::uint64_t>(s)));
                    const auto X = sample_forms_point(cell.m, cell.n, cell.field, rng);
                    consts.push_back(badly_approximable_constant(X, d.bad_N_max, cell.mode));
                }
                emit(d.bad_N_max, "bad_constant_median", median(consts));

                if (cx)
                {
                    const auto census = gaussian_lattice_census(d.census_r_max);
                    std::vector<double> x, y;
                    for (const auto &row : census)
                        if (row.r >= 20)
                        {
                            x.push_back(row.r);
                            y.push_back(static_cast<double>(row.resonant));
                        }
                    if (x.size() >= 2)
                        emit(d.census_r_max, "census_resonant_slope", loglog_slope(x, y));
                    const int rr = std::min(100, d.census_r_max);
                    emit(rr, "census_disc_ratio",
                         static_cast<double>(census[static_cast<std::size_t>(rr - 1)].disc) /
                             (std::numbers::pi * rr * rr));
                }
            }
            catch (const BudgetExceeded &)
            {
                rows.resize(before);
                emit(0, "skipped", 1.0);
            }
        }
        return rows;
    }

    // ---------------------------------------------------------------------------------------
    // Output

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    void write_csv(std::ostream &os, const std::vector<TrialRecord> &records)
    {
        os << kSimulationCsvHeader << '\n';
        for (const auto &r : records)
            os << r.scenario << ',' << r.seed << ',' << r.trial << ',' << r.K << ',' << r.M << ',' << to_string(r.field)
               << ',' << r.Q << ',' << format_number(r.A) << ',' << format_number(r.P) << ','
               << format_number(r.d_min) << ',' << format_number(r.err_rate) << ',' << format_number(r.rate_bound)
               << ',' << format_number(r.dof_estimate) << '\n';
    }

    void write_csv(std::ostream &os, const std::vector<DiophRow> &rows)
    {
        os << kDiophCsvHeader << '\n';
        for (const auto &r : rows)
            os << r.m << ',' << r.n << ',' << r.mode << ',' << r.field << ',' << r.N << ',' << r.statistic << ','
               << format_number(r.value) << ',' << r.seed << '\n';
    }
} // namespace lia
