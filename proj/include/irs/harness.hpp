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

#ifndef IRS_HARNESS_HPP
#define IRS_HARNESS_HPP

#include "irs/channel_models.hpp"
#include "irs/code_design.hpp"
#include "irs/crb.hpp"
#include "irs/receivers.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace irs
{
    enum class ReceiverKind
    {
        tals,
        etals,
        etals_no_refine
    };

    struct SystemConfig
    {
        Eigen::Index M = 5;  // BS antennas
        Eigen::Index L = 2;  // UT antennas / data streams
        Eigen::Index N = 16; // IRS elements
        Eigen::Index T = 5;  // symbol periods per block
        Eigen::Index K = 32; // blocks (K1 + K2 for E-TALS)
        Eigen::Index K1 = 0;
        Eigen::Index K2 = 0;

        std::vector<double> snr_grid{0, 5, 10, 15, 20, 25, 30};
        double alpha_db = 0.0;

        ChannelModel channel = ChannelModel::rayleigh;
        int paths_h = 1;
        int paths_g = 1;
        int paths_direct = 1;

        DesignKind design = DesignKind::dft_vandermonde;
        ReceiverKind receiver = ReceiverKind::tals;

        int runs = 200;
        std::uint64_t seed = 1;
        double delta = 1e-5;
        int max_iters = 1000;
        int restarts = 0;

        int threads = 0;     // 0 = hardware concurrency
        bool timing = false; // wall_ms is written as 0 unless enabled
        CrbAveraging crb_averaging = CrbAveraging::random_symbols;
    };

    /// Carries every problem found, one per line in what().
    class ConfigError : public std::invalid_argument
    {
    public:
        explicit ConfigError(std::vector<std::string> problems);
        const std::vector<std::string> &problems() const { return problems_; }

    private:
        std::vector<std::string> problems_;
    };

    /// All validation failures, including identifiability, in a stable order.
    std::vector<std::string> validate(const SystemConfig &config);

    /// Sets one field from its config-file key. Throws ConfigError for an unknown key or bad value.
    void apply_setting(SystemConfig &config, const std::string &key, const std::string &value);

    /// Flat "key = value" text; '#' starts a comment; lists are comma separated.
    /// Unknown keys and malformed values are collected and thrown together.
    SystemConfig parse_config(const std::string &text);
    SystemConfig load_config(const std::string &path);
    std::string to_config_text(const SystemConfig &config);

    const std::vector<std::string> &preset_names();

    /// Named set-ups at desk scale (runs = 200). Throws ConfigError naming the valid presets.
    SystemConfig preset(const std::string &name);

    /// ||truth - estimate||_F^2 / ||truth||_F^2.
    double nmse(const ComplexMatrix &truth, const ComplexMatrix &estimate);

    /// Fraction of mismatched constellation indices, optionally skipping the pilot row.
    double ser(const Eigen::MatrixXi &tx, const Eigen::MatrixXi &rx, bool exclude_pilot_row);

    /// splitmix64 finaliser.
    std::uint64_t mix64(std::uint64_t x);

    /// Per-job seed: mix64(base ^ mix64((snr_index << 32) | run_index)).
    std::uint64_t job_seed(std::uint64_t base, std::size_t snr_index, std::size_t run_index);

    struct ExperimentRecord
    {
        double snr_db = 0.0;
        int run = 0;
        std::uint64_t seed = 0;
        double nmse_h = 0.0;
        double nmse_g = 0.0;
        std::optional<double> nmse_hd;
        double ser = 0.0;
        int iters = 0;
        bool converged = false;
        double wall_ms = 0.0;

        // E-TALS diagnostics (summary output only).
        std::optional<double> nmse_hd_stage1;
        std::optional<double> ser_stage1;
        std::optional<double> effective_snr_db; // assisted signal vs noise + stage-I residual after subtraction
    };

    struct SnrSummary
    {
        double snr_db = 0.0;
        int runs = 0;
        double nmse_h = 0.0;
        double nmse_g = 0.0;
        std::optional<double> nmse_hd;
        double ser = 0.0;
        double iters_mean = 0.0;
        double iters_median = 0.0;
        double converged_fraction = 0.0;
        std::optional<double> nmse_hd_stage1;
        std::optional<double> ser_stage1;
        std::optional<double> effective_snr_db;
        double wall_ms = 0.0;
    };

    struct ExperimentResult
    {
        std::vector<ExperimentRecord> records; // ordered by (snr index, run)
        std::vector<SnrSummary> summary;
        std::vector<std::string> warnings;
    };

    /// One Monte Carlo realisation: channels, symbols, design, noise, receiver, metrics.
    ExperimentRecord run_single(const SystemConfig &config, std::size_t snr_index, std::size_t run_index);

    /// Validates, then runs every (snr, run) job on a worker pool. Throws ConfigError before any run.
    ExperimentResult run_experiment(const SystemConfig &config);

    std::vector<SnrSummary> summarize(const SystemConfig &config, const std::vector<ExperimentRecord> &records);

    inline constexpr const char *kRecordCsvHeader =
        "snr_db,run,seed,nmse_h,nmse_g,nmse_hd,ser,iters,converged,wall_ms";

    /// Shortest decimal that parses back to the same double.
    std::string format_double(double v);

    void write_records_csv(std::ostream &os, const std::vector<ExperimentRecord> &records);
    void write_summary_csv(std::ostream &os, const std::vector<SnrSummary> &summary);
    void write_crb_csv(std::ostream &os, const std::vector<CrbPoint> &points);

    /// gnuplot script plotting NMSE and SER against SNR from a summary CSV.
    std::string gnuplot_script(const std::string &summary_csv, const std::string &title);

    CrbScenario crb_scenario(const SystemConfig &config);

} // namespace irs

#endif
