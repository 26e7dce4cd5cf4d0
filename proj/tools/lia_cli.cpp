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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace
{
    struct CommonOptions
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::string out;
        std::optional<int> trials;
        std::optional<int> threads;
    };

    void add_common(CLI::App *app, CommonOptions &o)
    {
        app->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
        app->add_option("--seed", o.seed, "Master seed");
        app->add_option("--out", o.out, "Output path (CSV or JSON); stdout if omitted");
        app->add_option("--trials", o.trials, "Number of trials / channel realizations");
        app->add_option("--threads", o.threads, "Worker threads (0 = runtime default)");
    }

    lia::ExperimentConfig resolve(const CommonOptions &o, lia::Scenario scenario)
    {
        lia::ExperimentConfig c;
        if (!o.config.empty())
            c = lia::load_config(o.config);
        c.scenario = scenario;
        if (o.seed)
            c.seed = *o.seed;
        if (o.trials)
            c.trials = *o.trials;
        if (o.threads)
            c.threads = *o.threads;
        if (!o.out.empty())
            c.output = o.out;
        lia::validate(c);
        return c;
    }

    std::ofstream open_out(const std::string &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw lia::ConfigError("cannot write '" + path + "'");
        return f;
    }

    void emit_simulation(const lia::ExperimentConfig &c, const lia::RunResult &r)
    {
        if (c.output.empty())
        {
            lia::write_csv(std::cout, r.records);
            std::cerr << r.summary.dump(2) << '\n';
            return;
        }
        auto f = open_out(c.output);
        lia::write_csv(f, r.records);
        auto s = open_out(c.output + ".summary.json");
        s << r.summary.dump(2) << '\n';
    }

    void emit_json(const lia::ExperimentConfig &c, const nlohmann::json &j)
    {
        if (c.output.empty())
        {
            std::cout << j.dump(2) << '\n';
            return;
        }
        auto f = open_out(c.output);
        f << j.dump(2) << '\n';
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"lia: layered interference alignment simulator for MIMO X channels"};
    app.require_subcommand(1);

    CommonOptions xo, mo, ao, dopt;
    std::string x_kind = "kx2", a_kind = "both";

    auto *sx = app.add_subcommand("simulate-x", "Monte Carlo run of the K x 2 or 2 x K X channel");
    add_common(sx, xo);
    sx->add_option("--kind", x_kind, "kx2 or 2xk")->check(CLI::IsMember({"kx2", "2xk"}));

    auto *sm = app.add_subcommand("simulate-mac", "Per-antenna vs joint decoding on the 3-user SIMO MAC");
    add_common(sm, mo);

    auto *sa = app.add_subcommand("align-check", "Alignment residual and 2 x K feasibility census");
    add_common(sa, ao);
    sa->add_option("--kind", a_kind, "kx2, 2xk or both")->check(CLI::IsMember({"kx2", "2xk", "both"}));

    auto *sd = app.add_subcommand("diophantine", "Diophantine oracle sweep");
    add_common(sd, dopt);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        if (sx->parsed())
        {
            const auto c = resolve(xo, x_kind == "kx2" ? lia::Scenario::Kx2 : lia::Scenario::TwoByK);
            emit_simulation(c, lia::run(c));
        }
        else if (sm->parsed())
        {
            const auto c = resolve(mo, lia::Scenario::Mac);
            emit_simulation(c, lia::run(c));
        }
        else if (sa->parsed())
        {
            const auto c = resolve(ao, lia::Scenario::AlignCensus);
            auto s = lia::run(c).summary;
            if (a_kind == "kx2")
                s.erase("2xk");
            else if (a_kind == "2xk")
                s.erase("kx2");
            emit_json(c, s);
        }
        else if (sd->parsed())
        {
            const auto c = resolve(dopt, lia::Scenario::Dioph);
            const auto rows = lia::run_dioph(c);
            if (c.output.empty())
                lia::write_csv(std::cout, rows);
            else
            {
                auto f = open_out(c.output);
                lia::write_csv(f, rows);
            }
        }
    }
    catch (const lia::Error &e)
    {
        std::cerr << "lia: " << e.what() << '\n';
        return e.exit_code();
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "lia: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "lia: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
