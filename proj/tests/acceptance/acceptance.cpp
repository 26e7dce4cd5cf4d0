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

// Acceptance runner. Prints one PASS/FAIL line per criterion; exit status is nonzero when any
// selected criterion fails.

#include "lia/alignment.hpp"
#include "lia/decoder.hpp"
#include "lia/diophantine.hpp"
#include "lia/harness.hpp"
#include "lia/xchannel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace
{
    using namespace lia;

    // pinned tolerances
    constexpr double kKx2Residual = 1e-10;
    constexpr double k2xKResidual = 1e-9;
    constexpr int kNoiselessDraws = 10'000;
    constexpr double kSingleSlopeLo = -2.4, kSingleSlopeHi = -1.6;
    constexpr double kJointSlopeLo = -0.9, kJointSlopeHi = -0.2;
    constexpr double kMacSeparation = 0.2;
    constexpr double kMacJointLo = 0.5, kMacJointHi = 0.85;
    constexpr double kXSlopeLo = 0.22, kXSlopeHi = 0.45;
    constexpr double kXAgreement = 0.15;
    constexpr double kBoundSigmas = 3.0;
    constexpr int kComplexDirichletMin = 195;
    constexpr double kMeasureRatio = 0.5;
    constexpr double kDivergentFloor = 0.95;
    constexpr double kDiscTolerance = 0.05;
    constexpr double kResonantLo = 4.6, kResonantHi = 5.4;
    constexpr double kFieldAgreement = 0.1;

    struct Verdict
    {
        bool pass = false;
        std::string detail;
        double budget_s = 0; // wall-clock limit; 0 means none
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    ExperimentConfig x_config(Scenario s, Field f, int trials, int symbols)
    {
        ExperimentConfig c;
        c.scenario = s;
        c.K = 2;
        c.M = 1;
        c.field = f;
        c.trials = trials;
        c.symbols_per_trial = symbols;
        c.seed = 1;
        return c;
    }

    ExperimentConfig mac_config() { return x_config(Scenario::Mac, Field::Real, 40, 200); }
    ExperimentConfig kx2_config() { return x_config(Scenario::Kx2, Field::Real, 40, 200); }
    ExperimentConfig twok_config() { return x_config(Scenario::TwoByK, Field::Real, 40, 200); }
    ExperimentConfig complex_config() { return x_config(Scenario::Kx2, Field::Complex, 20, 100); }
    ExperimentConfig real_pair_config() { return x_config(Scenario::Kx2, Field::Real, 20, 100); }

    double summary_slope(const RunResult &r)
    {
        return r.summary.at("measured").at("per_message_slope").get<double>();
    }

    Verdict c1()
    {
        double worst = 0;
        int count = 0;
        for (Field f : {Field::Real, Field::Complex})
            for (int K : {2, 3})
                for (int M : {1, 2})
                    for (int s = 0; s < 100; ++s)
                    {
                        const auto topo = sample_topology(TopologyKind::KbyTwo, K, M, f,
                                                          derive_seed(0xA1, static_cast<std::uint64_t>(s)), 1e6);
                        const auto rep = verify_alignment_kx2(topo, DirectionSetKx2::identity(M));
                        worst = std::max(worst, rep.max_residual);
                        ++count;
                    }
        return {worst <= kKx2Residual, fmt("max relative residual %.3g over %d topologies (limit %g)", worst, count, kKx2Residual), 10};
    }

    Verdict c2()
    {
        int ok = 0, real_ok = 0, real_complex_spectrum = 0;
        std::vector<double> residuals;
        for (int s = 0; s < 100; ++s)
        {
            const std::uint64_t seed = derive_seed(0xA2, static_cast<std::uint64_t>(s));
            const auto topo = sample_topology(TopologyKind::TwoByK, 3, 2, Field::Complex, seed, 1e6);
            const auto sol = solve_direction_chain(topo);
            residuals.push_back(sol.report.max_residual);
            ok += sol.report.max_residual <= k2xKResidual ? 1 : 0;
            const auto rt = sample_topology(TopologyKind::TwoByK, 3, 2, Field::Real, seed, 1e6);
            const auto rs = solve_direction_chain(rt);
            real_ok += (rs.report.max_residual <= k2xKResidual && rs.real_spectrum) ? 1 : 0;
            real_complex_spectrum += rs.real_spectrum ? 0 : 1;
        }
        return {ok == 100,
                fmt("complex K=3 M=2: %d/100 within %g (median residual %.3g); real mode: %d/100 feasible, "
                    "%d/100 with non-real cycle spectrum",
                    ok, k2xKResidual, median(residuals), real_ok, real_complex_spectrum),
                10};
    }

    Verdict c3()
    {
        std::int64_t errors = 0, decisions = 0;
        auto add = [&](const RunResult &r) {
            for (const auto &rec : r.records)
            {
                errors += rec.errors;
                decisions += rec.decisions;
            }
        };
        ExperimentConfig mac = x_config(Scenario::Mac, Field::Real, 10, kNoiselessDraws / 10);
        mac.Q_list = {2, 3, 4};
        mac.noise_variance = 0.0;
        add(run_mac(mac));
        ExperimentConfig kx2 = x_config(Scenario::Kx2, Field::Real, 10, kNoiselessDraws / 10);
        kx2.Q_list = {2, 3, 4};
        kx2.noise_variance = 0.0;
        add(run_kx2(kx2));
        return {errors == 0 && decisions > 0,
                fmt("%lld decoding errors in %lld noiseless decisions (%d draws per scenario and Q)",
                    static_cast<long long>(errors), static_cast<long long>(decisions), kNoiselessDraws),
                0};
    }

    Verdict c4()
    {
        std::vector<double> single, joint;
        std::vector<double> qs;
        for (int Q = 2; Q <= 12; ++Q)
            qs.push_back(Q);
        for (int s = 0; s < 50; ++s)
        {
            const auto topo = sample_topology(TopologyKind::SimoMac, 3, 1, Field::Real,
                                              derive_seed(0xA4, static_cast<std::uint64_t>(s)), 1e6);
            CMatrix g(2, 3);
            for (int u = 0; u < 3; ++u)
                g.col(u) = topo.H(u, 0).col(0);
            std::vector<double> d1, d2;
            for (int Q = 2; Q <= 12; ++Q)
            {
                double a = INFINITY, b = INFINITY;
                for (int t = 0; t < 3; ++t)
                {
                    a = std::min(a, min_distance(make_lattice(CMatrix(g.topRows(1)), t, 1.0, {Q, Q, Q}, Field::Real)));
                    b = std::min(b, min_distance(make_lattice(g, t, 1.0, {Q, Q, Q}, Field::Real)));
                }
                d1.push_back(a);
                d2.push_back(b);
            }
            single.push_back(loglog_slope(qs, d1));
            joint.push_back(loglog_slope(qs, d2));
        }
        const double ms = median(single), mj = median(joint);
        const bool pass = ms >= kSingleSlopeLo && ms <= kSingleSlopeHi && mj >= kJointSlopeLo && mj <= kJointSlopeHi;
        return {pass,
                fmt("median d_min slope vs Q at A=1: single antenna %.3f in [%g, %g], joint %.3f in [%g, %g] (50 draws)",
                    ms, kSingleSlopeLo, kSingleSlopeHi, mj, kJointSlopeLo, kJointSlopeHi),
                0};
    }

    Verdict c5()
    {
        const auto r = run_mac(mac_config());
        const auto &st = r.summary.at("strategies");
        const double pa = st.at("per_antenna").at("measured_slope").get<double>();
        const double jt = st.at("joint").at("measured_slope").get<double>();
        const bool pass = jt - pa >= kMacSeparation && jt >= kMacJointLo && jt <= kMacJointHi;
        return {pass,
                fmt("joint slope %.3f in [%g, %g], per-antenna %.3f, separation %.3f (>= %g)", jt, kMacJointLo,
                    kMacJointHi, pa, jt - pa, kMacSeparation),
                0};
    }

    Verdict c6()
    {
        const double a = summary_slope(run_kx2(kx2_config()));
        const double b = summary_slope(run_2xk(twok_config()));
        const bool pass = a >= kXSlopeLo && a <= kXSlopeHi && b >= kXSlopeLo && b <= kXSlopeHi &&
                          std::abs(a - b) <= kXAgreement;
        return {pass,
                fmt("per-message slope kx2 %.3f, 2xk %.3f in [%g, %g]; gap %.3f (<= %g)", a, b, kXSlopeLo, kXSlopeHi,
                    std::abs(a - b), kXAgreement),
                0};
    }

    Verdict c7()
    {
        std::vector<TrialRecord> recs;
        for (const auto &r : {run_mac(mac_config()), run_kx2(kx2_config()), run_2xk(twok_config())})
            recs.insert(recs.end(), r.records.begin(), r.records.end());
        int bad = 0, noisy = 0;
        double worst = -INFINITY;
        for (const auto &r : recs)
        {
            const double b = std::min(1.0, r.error_bound);
            const double slack = kBoundSigmas * std::sqrt(b * (1 - b) / static_cast<double>(r.decisions));
            const double margin = r.err_rate - (b + slack);
            worst = std::max(worst, margin);
            bad += margin > 0 ? 1 : 0;
            noisy += r.errors > 0 ? 1 : 0;
        }
        return {bad == 0 && !recs.empty(),
                fmt("%d of %zu cells exceed bound + %g sigma (%d cells with errors); worst excess %.3g", bad, recs.size(),
                    kBoundSigmas, noisy, worst),
                0};
    }

    Verdict c8()
    {
        const int shapes[4][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};
        int agree = 0, total = 0;
        std::string first_miss;
        for (const auto &sh : shapes)
            for (int s = 0; s < 100; ++s)
            {
                Rng rng(derive_seed(0xA8, static_cast<std::uint64_t>(sh[0]), static_cast<std::uint64_t>(sh[1]),
                                    static_cast<std::uint64_t>(s)));
                const auto X = sample_forms_point(sh[0], sh[1], Field::Real, rng);
                const int N = 1 + static_cast<int>(rng() % 20);
                for (FormMode mode : {FormMode::Classical, FormMode::Hybrid})
                {
                    const auto a = min_form_distance(X, N, mode);
                    const auto b = min_form_distance_reference(X, N, mode);
                    ++total;
                    if (a.error == b.error && a.q == b.q && a.p == b.p)
                        ++agree;
                    else if (first_miss.empty())
                        first_miss = fmt(" first mismatch m=%d n=%d N=%d %s", sh[0], sh[1], N, std::string(to_string(mode)).c_str());
                }
            }
        return {agree == total, fmt("%d/%d instances agree exactly (N <= 20)%s", agree, total, first_miss.c_str()), 0};
    }

    Verdict c9()
    {
        std::string detail;
        bool pass = true;
        for (const auto &sh : {std::pair{2, 1}, std::pair{3, 2}})
            for (int N : {5, 10, 20})
            {
                int ok = 0;
                for (int s = 0; s < 200; ++s)
                {
                    Rng rng(derive_seed(0xA9, static_cast<std::uint64_t>(sh.first), static_cast<std::uint64_t>(N),
                                        static_cast<std::uint64_t>(s)));
                    ok += dirichlet_hybrid_check(sample_forms_point(sh.first, sh.second, Field::Real, rng), N).holds;
                }
                pass = pass && ok == 200;
                detail += fmt("(%d,%d) N=%d %d/200; ", sh.first, sh.second, N, ok);
            }
        int ok = 0;
        for (int s = 0; s < 200; ++s)
        {
            Rng rng(derive_seed(0xA9C, static_cast<std::uint64_t>(s)));
            ok += dirichlet_complex_check(sample_forms_point(2, 1, Field::Complex, rng), 10).holds;
        }
        pass = pass && ok >= kComplexDirichletMin;
        detail += fmt("complex (2,1) N=10 c=%.3f %d/200 (>= %d)", kComplexDirichletConstant, ok, kComplexDirichletMin);
        return {pass, detail, 0};
    }

    Verdict c10()
    {
        const auto conv = ApproxFunction::power_law(-2.5);
        const auto div = ApproxFunction::power_law(-1.5);
        const std::uint64_t seed = 0xA10;
        const double f2 = estimate_approximable_measure(conv, 2, 1, FormMode::Hybrid, Field::Real, 500, 2, 60, seed);
        const double f20 = estimate_approximable_measure(conv, 2, 1, FormMode::Hybrid, Field::Real, 500, 20, 60, seed);
        const double d20 = estimate_approximable_measure(div, 2, 1, FormMode::Hybrid, Field::Real, 500, 20, 60, seed);
        const bool pass = f20 <= kMeasureRatio * f2 && d20 >= kDivergentFloor;
        return {pass,
                fmt("psi=r^-2.5: fraction %.3f at N0=2, %.3f at N0=20 (need <= %g x); psi=r^-1.5: %.3f at N0=20 (>= %g)",
                    f2, f20, kMeasureRatio, d20, kDivergentFloor),
                0};
    }

    Verdict c11()
    {
        const auto census = gaussian_lattice_census(120);
        const double disc = static_cast<double>(census[99].disc);
        const double ratio = disc / (std::numbers::pi * 1e4);
        std::vector<double> x, y;
        for (const auto &row : census)
            if (row.r >= 20)
            {
                x.push_back(row.r);
                y.push_back(static_cast<double>(row.resonant));
            }
        const double slope = loglog_slope(x, y);
        const bool pass = std::abs(ratio - 1) <= kDiscTolerance && slope >= kResonantLo && slope <= kResonantHi;
        return {pass,
                fmt("disc count at r=100 %.0f (ratio to pi r^2 %.4f, tol %g); resonant slope over r in [20,120] %.3f in [%g, %g]",
                    disc, ratio, kDiscTolerance, slope, kResonantLo, kResonantHi),
                0};
    }

    Verdict c12()
    {
        const double cx = summary_slope(run_kx2(complex_config()));
        const double re = summary_slope(run_kx2(real_pair_config()));
        return {std::abs(cx - re) <= kFieldAgreement,
                fmt("per-message slope per real dimension: complex %.3f, real %.3f, gap %.3f (<= %g)", cx, re,
                    std::abs(cx - re), kFieldAgreement),
                0};
    }

    Verdict c13()
    {
        int procs = 4;
#ifdef _OPENMP
        procs = std::max(2, omp_get_num_procs());
#endif
        auto csv = [](const auto &rows) {
            std::ostringstream os;
            write_csv(os, rows);
            return os.str();
        };
        std::vector<std::pair<std::string, std::function<std::string(int)>>> runs = {
            {"mac", [&](int t) { auto c = mac_config(); c.trials = 12; c.threads = t; return csv(run_mac(c).records); }},
            {"kx2", [&](int t) { auto c = kx2_config(); c.trials = 12; c.threads = t; return csv(run_kx2(c).records); }},
            {"2xk", [&](int t) { auto c = twok_config(); c.trials = 12; c.threads = t; return csv(run_2xk(c).records); }},
            {"kx2-complex",
             [&](int t) {
                 auto c = complex_config();
                 c.trials = 4;
                 c.symbols_per_trial = 20;
                 c.threads = t;
                 return csv(run_kx2(c).records);
             }},
            {"dioph", [&](int t) {
                 auto c = x_config(Scenario::Dioph, Field::Real, 1, 1);
                 c.dioph.dirichlet_samples = 40;
                 c.dioph.measure_samples = 60;
                 c.dioph.bad_samples = 10;
                 c.dioph.cells.push_back({2, 1, FormMode::Classical, Field::Complex});
                 c.threads = t;
                 return csv(run_dioph(c));
             }}};
        std::string detail;
        bool pass = true;
        for (const auto &[name, fn] : runs)
        {
            const std::string a = fn(1), b = fn(procs), c = fn(1);
            const bool same = a == b && a == c;
            pass = pass && same;
            detail += fmt("%s %s (%zu bytes); ", name.c_str(), same ? "identical" : "DIFFERS", a.size());
        }
        detail += fmt("threads 1 vs %d", procs);
        return {pass, detail, 0};
    }

    const std::vector<std::pair<std::string, Verdict (*)()>> kCriteria = {
        {"kx2 alignment exactness", c1},
        {"2xK chain alignment, complex K=3 M=2", c2},
        {"noiseless decoding", c3},
        {"MAC minimum-distance scaling at A=1", c4},
        {"MAC joint vs per-antenna DoF", c5},
        {"X-network DoF slope", c6},
        {"error rate vs union bound", c7},
        {"Diophantine oracle equivalence", c8},
        {"Dirichlet-type existence", c9},
        {"approximable-set measure", c10},
        {"Gaussian-integer census", c11},
        {"complex vs real per-dimension slope", c12},
        {"thread-count reproducibility", c13},
    };
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> selected;
    app.add_option("--criterion,-c", selected, "criterion numbers (default: all)")
        ->check(CLI::Range(1, static_cast<int>(kCriteria.size())));
    CLI11_PARSE(app, argc, argv);
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i)
            selected.push_back(i);

    int failures = 0;
    for (int id : selected)
    {
        const auto &[name, fn] = kCriteria[static_cast<std::size_t>(id - 1)];
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = fn();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what(), 0};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = v.pass;
        std::string timing = fmt("%.1f s", secs);
        if (v.budget_s > 0)
        {
            timing += fmt(" (limit %g s)", v.budget_s);
            pass = pass && secs < v.budget_s;
        }
        std::printf("%s C%d %s: %s [%s]\n", pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(), timing.c_str());
        std::fflush(stdout);
        failures += pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
