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

#include "irs/harness.hpp"

#include "irs/signal_gen.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace irs
{
    namespace
    {
        std::string join_lines(const std::vector<std::string> &lines)
        {
            std::string out;
            for (const auto &l : lines)
            {
                if (!out.empty())
                    out += '\n';
                out += l;
            }
            return out;
        }

        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        template <typename T>
        bool parse_number(const std::string &text, T &out)
        {
            const std::string t = trim(text);
            if (t.empty())
                return false;
            const char *begin = t.data();
            if (*begin == '+')
                ++begin;
            const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), out);
            return ec == std::errc() && ptr == t.data() + t.size();
        }

        const char *to_string(ChannelModel m) { return m == ChannelModel::rayleigh ? "rayleigh" : "geometric"; }
        const char *to_string(DesignKind d) { return d == DesignKind::dft_vandermonde ? "dft" : "random_phase"; }
        const char *to_string(CrbAveraging a)
        {
            return a == CrbAveraging::random_symbols ? "random_symbols" : "fixed_symbols";
        }
        const char *to_string(ReceiverKind r)
        {
            switch (r)
            {
            case ReceiverKind::tals: return "tals";
            case ReceiverKind::etals: return "etals";
            case ReceiverKind::etals_no_refine: return "etals_no_refine";
            }
            return "?";
        }

        bool uses_direct_link(const SystemConfig &c) { return c.receiver != ReceiverKind::tals; }
    } // namespace

    ConfigError::ConfigError(std::vector<std::string> problems)
        : std::invalid_argument(join_lines(problems)), problems_(std::move(problems))
    {
    }

    void apply_setting(SystemConfig &c, const std::string &raw_key, const std::string &raw_value)
    {
        const std::string key = trim(raw_key);
        const std::string value = trim(raw_value);
        auto bad = [&](const std::string &expect) {
            throw ConfigError({"key '" + key + "': expected " + expect + ", got '" + value + "'"});
        };
        auto set_index = [&](Eigen::Index &field) {
            long long v = 0;
            if (!parse_number(value, v))
                bad("an integer");
            field = static_cast<Eigen::Index>(v);
        };
        auto set_int = [&](int &field) {
            if (!parse_number(value, field))
                bad("an integer");
        };
        auto set_double = [&](double &field) {
            if (!parse_number(value, field))
                bad("a number");
        };

        static const std::map<std::string, int> keys = {
            {"M", 0},         {"L", 1},         {"N", 2},         {"T", 3},          {"K", 4},
            {"K1", 5},        {"K2", 6},        {"snr_db", 7},    {"alpha_db", 8},   {"channel", 9},
            {"paths_h", 10},  {"paths_g", 11},  {"paths_direct", 12}, {"design", 13}, {"receiver", 14},
            {"runs", 15},     {"seed", 16},     {"delta", 17},    {"max_iters", 18}, {"restarts", 19},
            {"threads", 20},  {"timing", 21},   {"crb_averaging", 22}};
        const auto it = keys.find(key);
        if (it == keys.end())
            throw ConfigError({"unknown key '" + key + "'"});

        switch (it->second)
        {
        case 0: set_index(c.M); break;
        case 1: set_index(c.L); break;
        case 2: set_index(c.N); break;
        case 3: set_index(c.T); break;
        case 4: set_index(c.K); break;
        case 5: set_index(c.K1); break;
        case 6: set_index(c.K2); break;
        case 7:
        {
            std::vector<double> grid;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                double v = 0;
                if (!parse_number(item, v))
                    bad("a comma-separated list of numbers");
                grid.push_back(v);
            }
            if (grid.empty())
                bad("a comma-separated list of numbers");
            c.snr_grid = std::move(grid);
            break;
        }
        case 8: set_double(c.alpha_db); break;
        case 9:
            if (value == "rayleigh")
                c.channel = ChannelModel::rayleigh;
            else if (value == "geometric")
                c.channel = ChannelModel::geometric;
            else
                bad("rayleigh | geometric");
            break;
        case 10: set_int(c.paths_h); break;
        case 11: set_int(c.paths_g); break;
        case 12: set_int(c.paths_direct); break;
        case 13:
            if (value == "dft")
                c.design = DesignKind::dft_vandermonde;
            else if (value == "random_phase")
                c.design = DesignKind::random_phase;
            else
                bad("dft | random_phase");
            break;
        case 14:
            if (value == "tals")
                c.receiver = ReceiverKind::tals;
            else if (value == "etals")
                c.receiver = ReceiverKind::etals;
            else if (value == "etals_no_refine")
                c.receiver = ReceiverKind::etals_no_refine;
            else
                bad("tals | etals | etals_no_refine");
            break;
        case 15: set_int(c.runs); break;
        case 16:
            if (!parse_number(value, c.seed))
                bad("an unsigned 64-bit integer");
            break;
        case 17: set_double(c.delta); break;
        case 18: set_int(c.max_iters); break;
        case 19: set_int(c.restarts); break;
        case 20: set_int(c.threads); break;
        case 21:
            if (value == "true" || value == "1")
                c.timing = true;
            else if (value == "false" || value == "0")
                c.timing = false;
            else
                bad("true | false");
            break;
        case 22:
            if (value == "random_symbols")
                c.crb_averaging = CrbAveraging::random_symbols;
            else if (value == "fixed_symbols")
                c.crb_averaging = CrbAveraging::fixed_symbols;
            else
                bad("random_symbols | fixed_symbols");
            break;
        }
    }

    SystemConfig parse_config(const std::string &text)
    {
        SystemConfig c;
        std::vector<std::string> problems;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            if (trim(line).empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
            {
                problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
                continue;
            }
            try
            {
                apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
            }
            catch (const ConfigError &e)
            {
                for (const auto &p : e.problems())
                    problems.push_back("line " + std::to_string(line_no) + ": " + p);
            }
        }
        if (!problems.empty())
            throw ConfigError(std::move(problems));
        return c;
    }

    SystemConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError({"cannot open config file '" + path + "'"});
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str());
    }

    std::string to_config_text(const SystemConfig &c)
    {
        std::ostringstream os;
        os << "M = " << c.M << "\nL = " << c.L << "\nN = " << c.N << "\nT = " << c.T << "\nK = " << c.K
           << "\nK1 = " << c.K1 << "\nK2 = " << c.K2 << "\nsnr_db = ";
        for (std::size_t i = 0; i < c.snr_grid.size(); ++i)
            os << (i ? ", " : "") << format_double(c.snr_grid[i]);
        os << "\nalpha_db = " << format_double(c.alpha_db) << "\nchannel = " << to_string(c.channel)
           << "\npaths_h = " << c.paths_h << "\npaths_g = " << c.paths_g << "\npaths_direct = " << c.paths_direct
           << "\ndesign = " << to_string(c.design) << "\nreceiver = " << to_string(c.receiver)
           << "\nruns = " << c.runs << "\nseed = " << c.seed << "\ndelta = " << format_double(c.delta)
           << "\nmax_iters = " << c.max_iters << "\nrestarts = " << c.restarts << "\nthreads = " << c.threads
           << "\ntiming = " << (c.timing ? "true" : "false") << "\ncrb_averaging = " << to_string(c.crb_averaging)
           << '\n';
        return os.str();
    }

    std::vector<std::string> validate(const SystemConfig &c)
    {
        std::vector<std::string> p;
        auto need = [&](bool ok, const std::string &msg) {
            if (!ok)
                p.push_back(msg);
        };
        need(c.M >= 1, "M must be >= 1");
        need(c.L >= 1, "L must be >= 1");
        need(c.N >= 1, "N must be >= 1");
        need(c.T >= 2, "T must be >= 2 (row 1 carries the pilots)");
        need(c.K >= 1, "K must be >= 1");
        need(!c.snr_grid.empty(), "snr_db must list at least one value");
        for (double s : c.snr_grid)
            need(std::isfinite(s), "snr_db values must be finite");
        need(c.runs >= 1, "runs must be >= 1");
        need(c.delta > 0.0, "delta must be > 0");
        need(c.max_iters >= 1, "max_iters must be >= 1");
        need(c.restarts >= 0, "restarts must be >= 0");
        need(c.threads >= 0, "threads must be >= 0");
        if (c.channel == ChannelModel::geometric)
        {
            need(c.paths_h >= 1, "paths_h must be >= 1");
            need(c.paths_g >= 1, "paths_g must be >= 1");
            if (uses_direct_link(c))
                need(c.paths_direct >= 1, "paths_direct must be >= 1");
        }

        if (c.M < 1 || c.L < 1 || c.N < 1 || c.T < 1 || c.K < 1)
            return p;

        if (uses_direct_link(c))
        {
            need(std::isfinite(c.alpha_db) && c.alpha_db >= 0.0, "alpha_db must be finite and >= 0");
            need(c.K1 >= 1 && c.K2 >= 1, "E-TALS needs K1 >= 1 and K2 >= 1");
            need(c.K1 + c.K2 == c.K, "E-TALS needs K1 + K2 = K (" + std::to_string(c.K1) + " + " +
                                         std::to_string(c.K2) + " != " + std::to_string(c.K) + ")");
            if (c.K2 >= 1)
            {
                const auto report = identifiability_check(c.M, c.L, c.N, c.T, c.K2, c.K1);
                for (const auto &v : report.violations)
                    p.push_back("identifiability (stage II, K2 blocks): " + v);
            }
        }
        else
        {
            const auto report = identifiability_check(c.M, c.L, c.N, c.T, c.K);
            for (const auto &v : report.violations)
                p.push_back("identifiability: " + v);
        }
        return p;
    }

    const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names = {"fig4", "fig5", "fig7", "fig8", "fig11", "fig12", "fig13"};
        return names;
    }

    SystemConfig preset(const std::string &name)
    {
        SystemConfig c;
        c.runs = 200;
        c.snr_grid = {0, 5, 10, 15, 20, 25, 30};

        auto tals_base = [&](Eigen::Index N, Eigen::Index T) {
            c.M = 5;
            c.L = 2;
            c.N = N;
            c.T = T;
            c.K = 128;
            c.channel = ChannelModel::geometric;
            c.paths_h = c.paths_g = 1;
            c.receiver = ReceiverKind::tals;
        };
        auto etals_base = [&](Eigen::Index N, double alpha) {
            c.M = 10;
            c.L = 2;
            c.N = N;
            c.T = 5;
            c.K1 = 10;
            c.K2 = 140;
            c.K = 150;
            c.alpha_db = alpha;
            c.channel = ChannelModel::rayleigh;
            c.receiver = ReceiverKind::etals;
        };

        if (name == "fig4")
            tals_base(64, 5);
        else if (name == "fig5")
            tals_base(64, 2);
        else if (name == "fig7")
        {
            c.M = 5;
            c.L = 2;
            c.N = 50;
            c.T = 5;
            c.K = 80;
            c.K1 = 16;
            c.K2 = 64;
            c.alpha_db = 0.0;
            c.channel = ChannelModel::geometric;
            c.paths_h = 3;
            c.paths_g = 2;
            c.paths_direct = 3;
            c.receiver = ReceiverKind::etals_no_refine;
        }
        else if (name == "fig8")
            etals_base(70, 0.0);
        else if (name == "fig11")
            etals_base(50, 20.0);
        else if (name == "fig12")
            etals_base(50, 0.0);
        else if (name == "fig13")
        {
            tals_base(64, 5);
            c.design = DesignKind::random_phase;
        }
        else
        {
            std::string valid;
            for (const auto &n : preset_names())
                valid += (valid.empty() ? "" : ", ") + n;
            throw ConfigError({"unknown preset '" + name + "' (valid: " + valid + ")"});
        }
        return c;
    }

    double nmse(const ComplexMatrix &truth, const ComplexMatrix &estimate)
    {
        if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
            throw std::invalid_argument("nmse: shape mismatch");
        const double ref = truth.squaredNorm();
        if (!(ref > 0.0))
            throw std::invalid_argument("nmse: reference matrix has zero norm");
        return (truth - estimate).squaredNorm() / ref;
    }

    double ser(const Eigen::MatrixXi &tx, const Eigen::MatrixXi &rx, bool exclude_pilot_row)
    {
        if (tx.rows() != rx.rows() || tx.cols() != rx.cols())
            throw std::invalid_argument("ser: shape mismatch");
        const Eigen::Index first = exclude_pilot_row ? 1 : 0;
        const Eigen::Index counted = (tx.rows() - first) * tx.cols();
        if (counted <= 0)
            return 0.0;
        Eigen::Index errors = 0;
        for (Eigen::Index j = 0; j < tx.cols(); ++j)
            for (Eigen::Index i = first; i < tx.rows(); ++i)
                errors += tx(i, j) != rx(i, j);
        return static_cast<double>(errors) / static_cast<double>(counted);
    }

    std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t job_seed(std::uint64_t base, std::size_t snr_index, std::size_t run_index)
    {
        const std::uint64_t key = (static_cast<std::uint64_t>(snr_index) << 32) | static_cast<std::uint32_t>(run_index);
        return mix64(base ^ mix64(key));
    }

    ExperimentRecord run_single(const SystemConfig &c, std::size_t snr_index, std::size_t run_index)
    {
        const auto start = std::chrono::steady_clock::now();
        ExperimentRecord rec;
        rec.snr_db = c.snr_grid.at(snr_index);
        rec.run = static_cast<int>(run_index);
        rec.seed = job_seed(c.seed, snr_index, run_index);
        Rng rng(rec.seed);

        const ChannelDims dims{c.M, c.L, c.N};
        const bool direct = uses_direct_link(c);
        ChannelSet ch = draw_channels(dims, c.channel, c.paths_h, c.paths_g, direct, c.paths_direct, rng);
        const SymbolMatrix sym = draw_symbols(c.T, c.L, rng, true);

        TalsOptions opts;
        opts.delta = c.delta;
        opts.max_iters = c.max_iters;
        opts.restarts = c.restarts;

        ReceiverResult res;
        if (!direct)
        {
            const CodingDesign design = build_design(c.design, c.L, c.N, c.K, rng);
            const ComplexTensor3 clean = paratuck_tensor(ch.H, ch.G, sym.X, design.S, design.W);
            const NoisyTensor y = add_noise(clean, rec.snr_db, rng);
            opts.fast_g_step = design.semi_unitary;
            opts.init_seed = rng();
            res = tals(y.noisy, design.S, design.W, opts);
        }
        else
        {
            const SplitDesign split = split_design(c.design, c.L, c.N, c.K, c.K1, c.K2, rng);
            const CompositeSignal stage2 = composite_tensor(ch, sym.X, split.stage2.W, split.stage2.S, c.alpha_db);
            ch.H_direct = stage2.direct_scale * *ch.H_direct;
            const ComplexTensor3 stage1 = parafac_direct_tensor(*ch.H_direct, sym.X, split.W1);

            std::vector<ComplexMatrix> all;
            for (Eigen::Index k = 0; k < stage1.slices(); ++k)
                all.push_back(stage1.slice(k));
            for (Eigen::Index k = 0; k < stage2.tensor.slices(); ++k)
                all.push_back(stage2.tensor.slice(k));
            const NoisyTensor y = add_noise(ComplexTensor3(std::move(all)), rec.snr_db, rng);

            std::vector<ComplexMatrix> s1, s2;
            for (Eigen::Index k = 0; k < y.noisy.slices(); ++k)
                (k < c.K1 ? s1 : s2).push_back(y.noisy.slice(k));
            const ComplexTensor3 y1(std::move(s1)), y2(std::move(s2));

            opts.fast_g_step = split.stage2.semi_unitary;
            opts.refine_symbols = c.receiver == ReceiverKind::etals;
            opts.init_seed = rng();
            res = etals(y1, y2, split.W1, split.stage2.W, split.stage2.S, opts);

            rec.nmse_hd = nmse(*ch.H_direct, *res.H_direct_hat);
            rec.nmse_hd_stage1 = nmse(*ch.H_direct, *res.H_direct_stage1);
            rec.ser_stage1 = ser(sym.indices, demodulate(*res.X_stage1).indices, true);

            const ComplexTensor3 assisted = paratuck_tensor(ch.H, ch.G, sym.X, split.stage2.S, split.stage2.W);
            double residual = 0.0;
            const ComplexMatrix Xt1 = res.X_stage1->transpose();
            for (Eigen::Index k = 0; k < y2.slices(); ++k)
            {
                const ComplexMatrix q = y2.slice(k) -
                                        *res.H_direct_stage1 * split.stage2.W.row(k).transpose().asDiagonal() * Xt1;
                residual += (q - assisted.slice(k)).squaredNorm();
            }
            rec.effective_snr_db = 10.0 * std::log10(assisted.squared_norm() / residual);
        }

        const AlignedEstimates aligned = remove_ambiguity(res.H_hat, res.G_hat, res.X_hat, ch.H);
        rec.nmse_h = nmse(ch.H, aligned.H);
        rec.nmse_g = nmse(ch.G, aligned.G);
        rec.ser = ser(sym.indices, demodulate(aligned.X).indices, true);
        rec.iters = res.iterations;
        rec.converged = res.converged;
        if (c.timing)
            rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return rec;
    }

    std::vector<SnrSummary> summarize(const SystemConfig &c, const std::vector<ExperimentRecord> &records)
    {
        std::vector<SnrSummary> out(c.snr_grid.size());
        std::vector<std::vector<int>> iters(c.snr_grid.size());
        std::vector<int> hd_count(c.snr_grid.size(), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i].snr_db = c.snr_grid[i];

        auto index_of = [&](double snr) {
            return static_cast<std::size_t>(std::find(c.snr_grid.begin(), c.snr_grid.end(), snr) - c.snr_grid.begin());
        };
        auto add = [](std::optional<double> &acc, const std::optional<double> &v) {
            if (v)
                acc = acc.value_or(0.0) + *v;
        };

        for (const auto &r : records)
        {
            const std::size_t i = index_of(r.snr_db);
            SnrSummary &s = out.at(i);
            s.runs += 1;
            s.nmse_h += r.nmse_h;
            s.nmse_g += r.nmse_g;
            s.ser += r.ser;
            s.iters_mean += r.iters;
            s.converged_fraction += r.converged ? 1.0 : 0.0;
            s.wall_ms += r.wall_ms;
            add(s.nmse_hd, r.nmse_hd);
            add(s.nmse_hd_stage1, r.nmse_hd_stage1);
            add(s.ser_stage1, r.ser_stage1);
            add(s.effective_snr_db, r.effective_snr_db);
            iters[i].push_back(r.iters);
        }

        for (std::size_t i = 0; i < out.size(); ++i)
        {
            SnrSummary &s = out[i];
            if (s.runs == 0)
                continue;
            const double n = s.runs;
            s.nmse_h /= n;
            s.nmse_g /= n;
            s.ser /= n;
            s.iters_mean /= n;
            s.converged_fraction /= n;
            s.wall_ms /= n;
            for (auto *opt : {&s.nmse_hd, &s.nmse_hd_stage1, &s.ser_stage1, &s.effective_snr_db})
                if (*opt)
                    **opt /= n;
            auto &v = iters[i];
            std::sort(v.begin(), v.end());
            const std::size_t m = v.size();
            s.iters_median = m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
        }
        return out;
    }

    ExperimentResult run_experiment(const SystemConfig &c)
    {
        const auto problems = validate(c);
        if (!problems.empty())
            throw ConfigError(problems);

        ExperimentResult result;
        {
            Rng probe(c.seed);
            const Eigen::Index K = uses_direct_link(c) ? c.K2 : c.K;
            const CodingDesign d = build_design(c.design, c.L, c.N, K, probe);
            if (!d.warning.empty())
                result.warnings.push_back(d.warning);
        }

        const std::size_t runs = static_cast<std::size_t>(c.runs);
        const std::size_t jobs = c.snr_grid.size() * runs;
        result.records.resize(jobs);

        unsigned workers = c.threads > 0 ? static_cast<unsigned>(c.threads) : std::thread::hardware_concurrency();
        workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs)));

        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        auto worker = [&](unsigned id) {
            try
            {
                for (std::size_t j = next++; j < jobs; j = next++)
                    result.records[j] = run_single(c, j / runs, j % runs);
            }
            catch (...)
            {
                errors[id] = std::current_exception();
                next = jobs;
            }
        };

        if (workers == 1)
            worker(0);
        else
        {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(worker, w);
            for (auto &t : pool)
                t.join();
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        result.summary = summarize(c, result.records);
        return result;
    }

    std::string format_double(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    }

    namespace
    {
        std::string format_optional(const std::optional<double> &v) { return v ? format_double(*v) : std::string(); }
    } // namespace

    void write_records_csv(std::ostream &os, const std::vector<ExperimentRecord> &records)
    {
        os << kRecordCsvHeader << '\n';
        for (const auto &r : records)
            os << format_double(r.snr_db) << ',' << r.run << ',' << r.seed << ',' << format_double(r.nmse_h) << ','
               << format_double(r.nmse_g) << ',' << format_optional(r.nmse_hd) << ',' << format_double(r.ser) << ','
               << r.iters << ',' << (r.converged ? 1 : 0) << ',' << format_double(r.wall_ms) << '\n';
    }

    void write_summary_csv(std::ostream &os, const std::vector<SnrSummary> &summary)
    {
        os << "snr_db,runs,nmse_h,nmse_g,nmse_hd,ser,iters_mean,iters_median,converged_fraction,"
              "nmse_hd_stage1,ser_stage1,effective_snr_db,wall_ms\n";
        for (const auto &s : summary)
            os << format_double(s.snr_db) << ',' << s.runs << ',' << format_double(s.nmse_h) << ','
               << format_double(s.nmse_g) << ',' << format_optional(s.nmse_hd) << ',' << format_double(s.ser) << ','
               << format_double(s.iters_mean) << ',' << format_double(s.iters_median) << ','
               << format_double(s.converged_fraction) << ',' << format_optional(s.nmse_hd_stage1) << ','
               << format_optional(s.ser_stage1) << ',' << format_optional(s.effective_snr_db) << ','
               << format_double(s.wall_ms) << '\n';
    }

    void write_crb_csv(std::ostream &os, const std::vector<CrbPoint> &points)
    {
        os << "snr_db,crb_h,crb_g,trace_crb_h,trace_crb_g\n";
        for (const auto &p : points)
            os << format_double(p.snr_db) << ',' << format_double(p.crb_H) << ',' << format_double(p.crb_G) << ','
               << format_double(p.trace_crb_H) << ',' << format_double(p.trace_crb_G) << '\n';
    }

    std::string gnuplot_script(const std::string &summary_csv, const std::string &title)
    {
        std::ostringstream os;
        os << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set logscale y\n"
           << "set grid\n"
           << "set xlabel 'SNR [dB]'\n"
           << "set title '" << title << "'\n"
           << "set terminal pngcairo size 900,600\n"
           << "set output '" << summary_csv << ".nmse.png'\n"
           << "set ylabel 'NMSE'\n"
           << "plot '" << summary_csv << "' using 1:3 with linespoints title 'H', \\\n"
           << "     '' using 1:4 with linespoints title 'G'\n"
           << "set output '" << summary_csv << ".ser.png'\n"
           << "set ylabel 'SER'\n"
           << "plot '" << summary_csv << "' using 1:6 with linespoints title 'SER'\n";
        return os.str();
    }

    CrbScenario crb_scenario(const SystemConfig &c)
    {
        CrbScenario s;
        s.M = c.M;
        s.L = c.L;
        s.N = c.N;
        s.T = c.T;
        s.K = uses_direct_link(c) ? c.K2 : c.K;
        s.channel = c.channel;
        s.paths_h = c.paths_h;
        s.paths_g = c.paths_g;
        s.design = c.design;
        s.averaging = c.crb_averaging;
        return s;
    }

} // namespace irs
