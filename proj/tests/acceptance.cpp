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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
// Usage: irs_acceptance [path-to-irs_sim]

#include "irs/harness.hpp"
#include "irs/signal_gen.hpp"
#include "irs/tensor_core.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace irs;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    double rel_diff(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        const double ref = std::max(a.norm(), b.norm());
        return ref > 0.0 ? (a - b).norm() / ref : 0.0;
    }

    double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }

    // -- 1 -------------------------------------------------------------------
    Outcome scalar_oracle()
    {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(101);
        std::uniform_int_distribution<Eigen::Index> dim(1, 6);
        double worst = 0.0;
        for (int draw = 0; draw < 50; ++draw)
        {
            const Eigen::Index M = dim(rng), L = dim(rng), N = dim(rng), T = dim(rng), K = dim(rng);
            const ComplexMatrix H = complex_gaussian_matrix(M, N, rng), G = complex_gaussian_matrix(N, L, rng);
            const ComplexMatrix X = complex_gaussian_matrix(T, L, rng), S = complex_gaussian_matrix(K, N, rng);
            const ComplexMatrix W = complex_gaussian_matrix(K, L, rng);
            const ComplexTensor3 Y = paratuck_tensor(H, G, X, S, W);
            for (Eigen::Index m = 0; m < M; ++m)
                for (Eigen::Index t = 0; t < T; ++t)
                    for (Eigen::Index k = 0; k < K; ++k)
                    {
                        cx acc = 0.0;
                        for (Eigen::Index n = 0; n < N; ++n)
                            for (Eigen::Index l = 0; l < L; ++l)
                                acc += H(m, n) * S(k, n) * G(n, l) * W(k, l) * X(t, l);
                        worst = std::max(worst, std::abs(acc - Y(m, t, k)));
                    }
        }
        const double secs = seconds_since(t0);
        return {worst <= 1e-12 && secs < 5.0, "max |err| " + fmt("%.2e", worst) + ", " + fmt("%.2f s", secs)};
    }

    // -- 2 -------------------------------------------------------------------
    Outcome unfolding_identities()
    {
        Rng rng(202);
        std::uniform_int_distribution<Eigen::Index> dim(1, 6);
        double worst = 0.0;
        for (int draw = 0; draw < 50; ++draw)
        {
            const Eigen::Index M = dim(rng), L = dim(rng), N = dim(rng), T = dim(rng), K = dim(rng);
            const ComplexMatrix H = complex_gaussian_matrix(M, N, rng), G = complex_gaussian_matrix(N, L, rng);
            const ComplexMatrix X = complex_gaussian_matrix(T, L, rng);
            const CodingDesign d = build_random_phase(L, N, K, rng);
            const ComplexTensor3 Y = paratuck_tensor(H, G, X, d.S, d.W);

            const ComplexMatrix F = build_F(X, G, d.S, d.W);
            const ComplexMatrix E = build_E(H, G, d.S, d.W);
            const ComplexMatrix Y3 = kronecker(X, H) * vec(G).asDiagonal() * d.Psi;
            worst = std::max({worst, rel_diff(unfold1(Y), H * F.transpose()), rel_diff(unfold2(Y), X * E.transpose()),
                              rel_diff(unfold3(Y), Y3)});
        }
        return {worst <= 1e-10, "max relative err " + fmt("%.2e", worst)};
    }

    // -- 3 -------------------------------------------------------------------
    Outcome dft_design_exactness()
    {
        double worst_kr = 0.0, worst_orth = 0.0;
        bool ok = true;
        for (auto [L, N, K] : {std::array<Eigen::Index, 3>{2, 2, 8}, {2, 4, 16}, {3, 4, 24}})
        {
            const DesignFactors f = factor_psi(L, N, K);
            const ComplexMatrix Psi = build_psi_dft(L, N, K);
            const double kr = (khatri_rao(f.W.transpose(), f.S.transpose()) - Psi).cwiseAbs().maxCoeff();
            const ComplexMatrix gram = Psi.conjugate() * Psi.transpose();
            const double orth =
                (gram - static_cast<double>(K) * ComplexMatrix::Identity(L * N, L * N)).cwiseAbs().maxCoeff();
            worst_kr = std::max(worst_kr, kr);
            worst_orth = std::max(worst_orth, orth / static_cast<double>(K));
            ok = ok && kr <= 1e-12 && orth <= 1e-10 * static_cast<double>(K);
        }
        return {ok, "KR residual " + fmt("%.2e", worst_kr) + ", orthogonality residual/K " + fmt("%.2e", worst_orth)};
    }

    // -- 4 -------------------------------------------------------------------
    Outcome noiseless_tals()
    {
        const auto t0 = std::chrono::steady_clock::now();
        const Eigen::Index M = 4, L = 2, N = 8, T = 4, K = 32;
        const CodingDesign d = build_dft_design(L, N, K);
        int good = 0;
        double worst_ok = 0.0;
        for (int run = 0; run < 100; ++run)
        {
            Rng rng(job_seed(404, 0, static_cast<std::size_t>(run)));
            const ComplexMatrix H = rayleigh_channel(M, N, rng), G = rayleigh_channel(N, L, rng);
            const SymbolMatrix sym = draw_symbols(T, L, rng, true);
            const ComplexTensor3 Y = paratuck_tensor(H, G, sym.X, d.S, d.W);

            TalsOptions opts;
            opts.fast_g_step = true;
            opts.init_seed = rng();
            const ReceiverResult r = tals(Y, d.S, d.W, opts);
            const AlignedEstimates a = remove_ambiguity(r.H_hat, r.G_hat, r.X_hat, H);
            const double nh = nmse(H, a.H), ng = nmse(G, a.G);
            const double s = ser(sym.indices, demodulate(a.X).indices, true);
            if (nh < 1e-8 && ng < 1e-8 && s == 0.0)
            {
                ++good;
                worst_ok = std::max({worst_ok, nh, ng});
            }
        }
        const double secs = seconds_since(t0);
        return {good >= 95 && secs < 60.0, std::to_string(good) + "/100 exact (worst passing NMSE " +
                                                 fmt("%.1e", worst_ok) + "), " + fmt("%.2f s", secs)};
    }

    // -- 5 -------------------------------------------------------------------
    Outcome fast_g_step()
    {
        Rng rng(505);
        std::uniform_int_distribution<Eigen::Index> dim(1, 5);
        double worst = 0.0;
        for (int draw = 0; draw < 50; ++draw)
        {
            const Eigen::Index M = dim(rng), L = dim(rng), N = dim(rng), T = dim(rng);
            const Eigen::Index K = L * N + dim(rng) - 1;
            const ComplexMatrix H = complex_gaussian_matrix(M, N, rng), X = complex_gaussian_matrix(T, L, rng);
            const ComplexMatrix Psi = build_psi_dft(L, N, K);
            const ComplexMatrix Y3 = complex_gaussian_matrix(T * M, K, rng);
            worst = std::max(worst, rel_diff(step_G(Y3, X, H, Psi, true), step_G(Y3, X, H, Psi, false)));
        }
        return {worst <= 1e-10, "max relative difference " + fmt("%.2e", worst)};
    }

    // -- 6 -------------------------------------------------------------------
    double loglog_slope(const std::vector<double> &snr_db, const std::vector<double> &value)
    {
        // Least-squares slope of log10(value) against SNR in decades (snr_db / 10).
        const double n = static_cast<double>(snr_db.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < snr_db.size(); ++i)
        {
            const double x = snr_db[i] / 10.0, y = std::log10(value[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    Outcome nmse_slope_and_crb()
    {
        const auto t0 = std::chrono::steady_clock::now();
        SystemConfig c;
        c.M = 5;
        c.L = 2;
        c.N = 16;
        c.T = 5;
        c.K = 32;
        c.runs = 200;
        c.seed = 606;
        c.snr_grid = {0, 5, 10, 15, 20, 25, 30};
        const ExperimentResult res = run_experiment(c);

        Rng rng(6060);
        const std::vector<CrbPoint> crb = expected_crb(crb_scenario(c), c.snr_grid, 200, rng);

        std::vector<double> nh, ng;
        bool above = true;
        double min_gap_db = INFINITY;
        for (std::size_t i = 0; i < res.summary.size(); ++i)
        {
            nh.push_back(res.summary[i].nmse_h);
            ng.push_back(res.summary[i].nmse_g);
            above = above && nh.back() >= crb[i].crb_H && ng.back() >= crb[i].crb_G;
            min_gap_db = std::min({min_gap_db, 10 * std::log10(nh.back() / crb[i].crb_H),
                                   10 * std::log10(ng.back() / crb[i].crb_G)});
        }
        const double slope_h = loglog_slope(c.snr_grid, nh), slope_g = loglog_slope(c.snr_grid, ng);
        auto in_band = [](double s) { return s >= -1.15 && s <= -0.85; };
        const double secs = seconds_since(t0);
        std::string detail = "slope H " + fmt("%.3f", slope_h) + ", slope G " + fmt("%.3f", slope_g) +
                             ", min gap to CRB " + fmt("%.2f dB", min_gap_db) + ", " + fmt("%.1f s", secs);
        if (!above)
            detail += "; NMSE(H) sits near (M-1)/M of the bound: the per-column scaling fit against the true H "
                      "removes one of M complex error dimensions per column, the bound does not";
        return {in_band(slope_h) && in_band(slope_g) && above && secs < 600.0, detail};
    }

    // -- 7 -------------------------------------------------------------------
    Outcome krf_exactness()
    {
        const Eigen::Index M = 4, L = 2, T = 8, K1 = 8;
        const ComplexMatrix W1 = build_stage1_coding(K1, L);
        int failures = 0;
        double worst = 0.0;
        for (int run = 0; run < 100; ++run)
        {
            Rng rng(job_seed(707, 0, static_cast<std::size_t>(run)));
            const ComplexMatrix Hd = rayleigh_channel(M, L, rng);
            const SymbolMatrix sym = draw_symbols(T, L, rng, true);
            const KrfEstimate est = krf(unfold3(parafac_direct_tensor(Hd, sym.X, W1)), W1, M);
            const double err = std::max(rel_diff(est.X, sym.X), rel_diff(est.H_direct, Hd));
            worst = std::max(worst, err);
            failures += err > 1e-10;
        }
        return {failures == 0, std::to_string(failures) + " failures, worst relative err " + fmt("%.2e", worst)};
    }

    // -- 8 -------------------------------------------------------------------
    Outcome warm_start_advantage()
    {
        const Eigen::Index M = 10, L = 2, N = 20, T = 5, K1 = 10, K2 = 40;
        const double snr = 20.0;
        std::vector<double> it_etals, it_tals;
        for (int run = 0; run < 200; ++run)
        {
            Rng rng(job_seed(808, 0, static_cast<std::size_t>(run)));
            ChannelSet ch = draw_channels({M, L, N}, ChannelModel::rayleigh, 1, 1, true, 1, rng);
            const SymbolMatrix sym = draw_symbols(T, L, rng, true);
            const SplitDesign split = split_design(DesignKind::dft_vandermonde, L, N, K1 + K2, K1, K2, rng);

            const CompositeSignal comp = composite_tensor(ch, sym.X, split.stage2.W, split.stage2.S, 0.0);
            const ComplexTensor3 stage1 =
                parafac_direct_tensor(comp.direct_scale * *ch.H_direct, sym.X, split.W1);
            std::vector<ComplexMatrix> all;
            for (Eigen::Index k = 0; k < K1; ++k)
                all.push_back(stage1.slice(k));
            for (Eigen::Index k = 0; k < K2; ++k)
                all.push_back(comp.tensor.slice(k));
            const ComplexTensor3 y = add_noise(ComplexTensor3(std::move(all)), snr, rng).noisy;
            std::vector<ComplexMatrix> s1, s2;
            for (Eigen::Index k = 0; k < K1 + K2; ++k)
                (k < K1 ? s1 : s2).push_back(y.slice(k));

            TalsOptions opts;
            opts.fast_g_step = true;
            opts.init_seed = rng();
            const ReceiverResult e = etals(ComplexTensor3(s1), ComplexTensor3(s2), split.W1, split.stage2.W,
                                           split.stage2.S, opts);
            it_etals.push_back(e.iterations);

            const ComplexTensor3 assisted = paratuck_tensor(ch.H, ch.G, sym.X, split.stage2.S, split.stage2.W);
            const ComplexTensor3 ya = add_noise(assisted, snr, rng).noisy;
            const ReceiverResult t = tals(ya, split.stage2.S, split.stage2.W, opts);
            it_tals.push_back(t.iterations);
        }
        const double me = median(it_etals), mt = median(it_tals);
        return {me <= mt, "median iterations E-TALS " + fmt("%.1f", me) + " vs TALS " + fmt("%.1f", mt)};
    }

    // -- 9 -------------------------------------------------------------------
    Outcome direct_refinement()
    {
        SystemConfig c = preset("fig12");
        c.snr_grid = {20.0};
        c.runs = 200;
        c.seed = 909;
        const ExperimentResult res = run_experiment(c);
        int better = 0;
        for (const auto &r : res.records)
            better += *r.nmse_hd <= *r.nmse_hd_stage1;
        const double frac = static_cast<double>(better) / static_cast<double>(res.records.size());
        return {frac >= 0.8, fmt("%.1f%%", 100.0 * frac) + " of runs refined (mean NMSE " +
                                 fmt("%.2e", *res.summary[0].nmse_hd) + " vs stage I " +
                                 fmt("%.2e", *res.summary[0].nmse_hd_stage1) + ")"};
    }

    // -- 10 ------------------------------------------------------------------
    Outcome ser_trends()
    {
        SystemConfig c;
        c.M = 4;
        c.L = 2;
        c.T = 4;
        c.K = 16;
        c.runs = 200;
        c.seed = 1010;
        c.snr_grid = {15.0};
        std::vector<double> ser_n;
        std::string detail = "TALS SER";
        for (Eigen::Index N : {8, 16, 32})
        {
            c.N = N;
            ser_n.push_back(run_experiment(c).summary[0].ser);
            detail += " N=" + std::to_string(N) + ":" + fmt("%.4f", ser_n.back());
        }
        const bool monotone = ser_n[0] <= ser_n[1] && ser_n[1] <= ser_n[2];

        SystemConfig e = preset("fig11");
        e.snr_grid = {15.0};
        e.runs = 200;
        e.seed = 1011;
        const SnrSummary s = run_experiment(e).summary[0];
        detail += "; E-TALS N=50 stage II " + fmt("%.4f", s.ser) + " vs stage I " + fmt("%.4f", *s.ser_stage1);
        return {monotone && s.ser < *s.ser_stage1, detail};
    }

    // -- 11 ------------------------------------------------------------------
    Outcome crb_closed_form()
    {
        const Eigen::Index L = 2, N = 4, K = 16, T = 3, M = 5;
        const ComplexMatrix X = ComplexMatrix::Identity(T, L), H = ComplexMatrix::Identity(M, N);
        const double trivial = crb_G(X, H, build_psi_dft(L, N, K), 1.0);
        const double expect = static_cast<double>(L * N) / static_cast<double>(K);

        Rng rng(1111);
        double worst = 0.0;
        for (int draw = 0; draw < 50; ++draw)
        {
            const ComplexMatrix Xr = complex_gaussian_matrix(T, L, rng), Hr = complex_gaussian_matrix(M, N, rng);
            const double sigma2 = 0.1 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const ComplexMatrix Psi = build_psi_dft(L, N, K);
            const double a = crb_G_diagonal(Xr, Hr, K, sigma2), b = crb_G_general(Xr, Hr, Psi, sigma2);
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
        return {trivial == expect && worst <= 1e-10,
                "trivial " + fmt("%.17g", trivial) + " (LN/K = " + fmt("%.17g", expect) + "), diagonal vs general " +
                    fmt("%.2e", worst)};
    }

    // -- 12 ------------------------------------------------------------------
    std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    Outcome determinism(const std::string &cli)
    {
        std::string detail;
        bool ok = true;
        for (const auto &name : preset_names())
        {
            SystemConfig c = preset(name);
            c.runs = 1;
            std::ostringstream a, b;
            write_records_csv(a, run_experiment(c).records);
            write_records_csv(b, run_experiment(c).records);
            ok = ok && a.str() == b.str() && !a.str().empty();
        }
        detail = std::to_string(preset_names().size()) + " presets in-process";

        if (!cli.empty())
        {
            const std::string base = "irs_acceptance_determinism";
            const std::string cmd = cli + " run --preset fig8 --runs 3 --out " + base;
            const int ra = std::system((cmd + "_a.csv").c_str());
            const int rb = std::system((cmd + "_b.csv").c_str());
            const std::string fa = slurp(base + "_a.csv"), fb = slurp(base + "_b.csv");
            ok = ok && ra == 0 && rb == 0 && !fa.empty() && fa == fb;
            std::remove((base + "_a.csv").c_str());
            std::remove((base + "_b.csv").c_str());
            detail += ", CLI fig8 byte-identical: " + std::string(fa == fb && !fa.empty() ? "yes" : "no");
        }
        return {ok, detail};
    }
} // namespace

int main(int argc, char **argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"scalar-oracle equivalence", scalar_oracle},
        {"unfolding identities", unfolding_identities},
        {"DFT design exactness", dft_design_exactness},
        {"noiseless TALS recovery", noiseless_tals},
        {"fast G-step equivalence", fast_g_step},
        {"NMSE slope and CRB bound", nmse_slope_and_crb},
        {"KRF exactness", krf_exactness},
        {"E-TALS warm-start advantage", warm_start_advantage},
        {"direct-channel refinement", direct_refinement},
        {"SER trends", ser_trends},
        {"CRB closed form", crb_closed_form},
        {"determinism", [&] { return determinism(cli); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1 << ". "
                  << criteria[i].first << " -- " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
