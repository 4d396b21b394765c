// SPDX-License-Identifier: Apache-2.0
//
// irs-paratuck: semi-blind receivers for IRS-assisted MIMO links
// Copyright (C) 2026 The irs-paratuck authors
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

// irs_sim: Monte Carlo runs, expected-CRB curves and identifiability checks.

#include "irs/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace
{
    struct ConfigSource
    {
        std::string config_path;
        std::string preset_name;
        std::vector<std::string> settings;
        std::optional<int> runs;
        std::optional<std::uint64_t> seed;
        std::optional<int> threads;
    };

    void add_source_options(CLI::App &cmd, ConfigSource &src)
    {
        auto *cfg = cmd.add_option("--config", src.config_path, "Config file (key = value)")->check(CLI::ExistingFile);
        auto *pre = cmd.add_option("--preset", src.preset_name, "Named preset");
        cfg->excludes(pre);
        cmd.add_option("--set", src.settings, "Override one key, e.g. --set N=32 (repeatable)");
        cmd.add_option("--runs", src.runs, "Monte Carlo runs per SNR point");
        cmd.add_option("--seed", src.seed, "Base seed");
        cmd.add_option("--threads", src.threads, "Worker threads (0 = all cores)");
    }

    irs::SystemConfig resolve(const ConfigSource &src)
    {
        irs::SystemConfig c;
        if (!src.config_path.empty())
            c = irs::load_config(src.config_path);
        else if (!src.preset_name.empty())
            c = irs::preset(src.preset_name);

        std::vector<std::string> problems;
        for (const auto &s : src.settings)
        {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
            {
                problems.push_back("--set '" + s + "': expected key=value");
                continue;
            }
            try
            {
                irs::apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
            }
            catch (const irs::ConfigError &e)
            {
                problems.insert(problems.end(), e.problems().begin(), e.problems().end());
            }
        }
        if (!problems.empty())
            throw irs::ConfigError(problems);

        if (src.runs)
            c.runs = *src.runs;
        if (src.seed)
            c.seed = *src.seed;
        if (src.threads)
            c.threads = *src.threads;
        return c;
    }

    template <typename Writer>
    void emit(const std::string &path, Writer &&write)
    {
        if (path.empty() || path == "-")
        {
            write(std::cout);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write '" + path + "'");
        write(out);
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Semi-blind channel and symbol estimation for IRS-assisted MIMO"};
    app.require_subcommand(1);

    ConfigSource run_src;
    std::string run_out, run_summary, run_plot;
    auto *run = app.add_subcommand("run", "Run a Monte Carlo experiment");
    add_source_options(*run, run_src);
    run->add_option("--out", run_out, "Per-run CSV (default: stdout)");
    run->add_option("--summary", run_summary, "Per-SNR summary CSV");
    run->add_option("--plot", run_plot, "gnuplot script for the summary CSV (needs --summary)");

    ConfigSource crb_src;
    std::string crb_out;
    int crb_draws = 200;
    auto *crb = app.add_subcommand("crb", "Expected CRB curves for H and G");
    add_source_options(*crb, crb_src);
    crb->add_option("--draws", crb_draws, "Channel/symbol draws to average over")->check(CLI::PositiveNumber);
    crb->add_option("--out", crb_out, "CSV output (default: stdout)");

    ConfigSource check_src;
    auto *check = app.add_subcommand("check", "Validate a config and report identifiability");
    add_source_options(*check, check_src);

    ConfigSource show_src;
    auto *show = app.add_subcommand("show", "Print the resolved config");
    add_source_options(*show, show_src);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            const irs::SystemConfig c = resolve(run_src);
            const irs::ExperimentResult result = irs::run_experiment(c);
            for (const auto &w : result.warnings)
                std::cerr << "warning: " << w << '\n';
            emit(run_out, [&](std::ostream &os) { irs::write_records_csv(os, result.records); });
            if (!run_summary.empty())
                emit(run_summary, [&](std::ostream &os) { irs::write_summary_csv(os, result.summary); });
            if (!run_plot.empty())
            {
                if (run_summary.empty())
                    throw std::runtime_error("--plot needs --summary");
                const std::string title = run_src.preset_name.empty() ? "irs_sim" : run_src.preset_name;
                emit(run_plot, [&](std::ostream &os) { os << irs::gnuplot_script(run_summary, title); });
            }
        }
        else if (*crb)
        {
            const irs::SystemConfig c = resolve(crb_src);
            const auto problems = irs::validate(c);
            if (!problems.empty())
                throw irs::ConfigError(problems);
            irs::Rng rng(c.seed);
            const auto points = irs::expected_crb(irs::crb_scenario(c), c.snr_grid, crb_draws, rng);
            emit(crb_out, [&](std::ostream &os) { irs::write_crb_csv(os, points); });
        }
        else if (*check)
        {
            const irs::SystemConfig c = resolve(check_src);
            const auto problems = irs::validate(c);
            if (problems.empty())
            {
                const bool two_stage = c.receiver != irs::ReceiverKind::tals;
                const auto report = two_stage ? irs::identifiability_check(c.M, c.L, c.N, c.T, c.K2, c.K1)
                                              : irs::identifiability_check(c.M, c.L, c.N, c.T, c.K);
                std::cout << report.summary() << '\n' << "ok\n";
                return 0;
            }
            for (const auto &p : problems)
                std::cout << p << '\n';
            return 2;
        }
        else if (*show)
        {
            std::cout << irs::to_config_text(resolve(show_src));
        }
    }
    catch (const irs::ConfigError &e)
    {
        for (const auto &p : e.problems())
            std::cerr << "config error: " << p << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
