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

#include "irs/crb.hpp"

#include "irs/receivers.hpp"
#include "irs/signal_gen.hpp"

#include <stdexcept>

namespace irs
{
    RealMatrix FimBlocks::assembled() const
    {
        const Eigen::Index n = M_bar.rows();
        RealMatrix F(2 * n, 2 * n);
        F << M_bar, -M_tilde, M_tilde, M_bar;
        return 2.0 * F;
    }

    FimBlocks fim_blocks(const ComplexMatrix &J)
    {
        if (J.rows() != J.cols())
            throw std::invalid_argument("fim_blocks: J must be square");
        const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
        if ((J - J.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw std::invalid_argument("fim_blocks: J is not Hermitian");
        return {J.real(), J.imag()};
    }

    CrbTrace crb_trace(const RealMatrix &M_bar, const RealMatrix &M_tilde)
    {
        Eigen::FullPivLU<RealMatrix> lu(M_bar);
        if (!lu.isInvertible())
            throw std::domain_error("crb_trace: FIM singular, check identifiability");
        const RealMatrix M_bar_inv = lu.inverse();

        const RealMatrix schur = M_bar + M_tilde * M_bar_inv * M_tilde;
        Eigen::FullPivLU<RealMatrix> schur_lu(schur);
        if (!schur_lu.isInvertible())
            throw std::domain_error("crb_trace: FIM singular, check identifiability");
        const RealMatrix schur_inv = schur_lu.inverse();

        CrbTrace out;
        out.real_part = 0.5 * schur_inv.trace();
        out.imag_part = 0.5 * (M_bar_inv - M_bar_inv * M_tilde * schur_inv * M_tilde * M_bar_inv).trace();
        return out;
    }

    double crb_G_diagonal(const ComplexMatrix &X, const ComplexMatrix &H, Eigen::Index K, double sigma2)
    {
        // [X^H X (x) H^H H]_rr with r = (l, n) is ||x_l||^2 ||h_n||^2.
        const Eigen::VectorXd x_energy = X.colwise().squaredNorm().transpose();
        const Eigen::VectorXd h_energy = H.colwise().squaredNorm().transpose();
        double acc = 0.0;
        for (Eigen::Index l = 0; l < x_energy.size(); ++l)
            for (Eigen::Index n = 0; n < h_energy.size(); ++n)
            {
                const double d = x_energy(l) * h_energy(n);
                if (!(d > 0.0))
                    throw std::domain_error("crb_G: zero diagonal in X^H X (x) H^H H, G not identifiable");
                acc += 1.0 / d;
            }
        return sigma2 / static_cast<double>(K) * acc;
    }

    double crb_G_general(const ComplexMatrix &X, const ComplexMatrix &H, const ComplexMatrix &Psi, double sigma2)
    {
        const ComplexMatrix C = khatri_rao(Psi.transpose(), kronecker(X, H));
        ComplexMatrix J = C.adjoint() * C / sigma2;
        J = 0.5 * (J + J.adjoint()).eval();
        const FimBlocks b = fim_blocks(J);
        return crb_trace(b.M_bar, b.M_tilde).total();
    }

    double crb_G(const ComplexMatrix &X, const ComplexMatrix &H, const ComplexMatrix &Psi, double sigma2)
    {
        if (is_semi_unitary(Psi))
            return crb_G_diagonal(X, H, Psi.cols(), sigma2);
        return crb_G_general(X, H, Psi, sigma2);
    }

    double crb_H(const ComplexMatrix &F, double sigma2, Eigen::Index M)
    {
        ComplexMatrix J = F.adjoint() * F / sigma2;
        J = 0.5 * (J + J.adjoint()).eval();
        const FimBlocks b = fim_blocks(J);
        return static_cast<double>(M) * crb_trace(b.M_bar, b.M_tilde).total();
    }

    double crb_H_full(const ComplexMatrix &F, double sigma2, Eigen::Index M)
    {
        const ComplexMatrix P = kronecker(F, ComplexMatrix::Identity(M, M));
        ComplexMatrix J = P.adjoint() * P / sigma2;
        J = 0.5 * (J + J.adjoint()).eval();
        const FimBlocks b = fim_blocks(J);
        return crb_trace(b.M_bar, b.M_tilde).total();
    }

    std::vector<CrbPoint> expected_crb(const CrbScenario &sc, const std::vector<double> &snr_grid, int n_draws,
                                       Rng &rng)
    {
        if (n_draws < 1)
            throw std::invalid_argument("expected_crb: n_draws must be >= 1");

        std::vector<CrbPoint> points(snr_grid.size());
        for (std::size_t i = 0; i < snr_grid.size(); ++i)
            points[i].snr_db = snr_grid[i];

        const ChannelDims dims{sc.M, sc.L, sc.N};
        std::optional<ComplexMatrix> fixed_x;
        if (sc.averaging == CrbAveraging::fixed_symbols)
            fixed_x = draw_symbols(sc.T, sc.L, rng, true).X;

        double energy_G = 0.0, energy_H = 0.0;
        for (int d = 0; d < n_draws; ++d)
        {
            const ChannelSet ch = draw_channels(dims, sc.channel, sc.paths_h, sc.paths_g, false, 1, rng);
            const ComplexMatrix X = fixed_x ? *fixed_x : draw_symbols(sc.T, sc.L, rng, true).X;
            const CodingDesign design = build_design(sc.design, sc.L, sc.N, sc.K, rng);

            energy_G += ch.G.squaredNorm();
            energy_H += ch.H.squaredNorm();

            const double signal = paratuck_tensor(ch.H, ch.G, X, design.S, design.W).squared_norm();
            const ComplexMatrix F = build_F(X, ch.G, design.S, design.W);
            const double entries = static_cast<double>(sc.M * sc.T * sc.K);

            const double unit_G = crb_G(X, ch.H, design.Psi, 1.0);
            const double unit_H = crb_H(F, 1.0, sc.M);
            for (auto &p : points)
            {
                const double sigma2 = noise_variance(signal, entries, p.snr_db);
                p.sigma2.push_back(sigma2);
                p.per_draw_G.push_back(sigma2 * unit_G);
                p.per_draw_H.push_back(sigma2 * unit_H);
            }
        }

        energy_G /= n_draws;
        energy_H /= n_draws;
        for (auto &p : points)
        {
            for (std::size_t d = 0; d < p.per_draw_G.size(); ++d)
            {
                p.trace_crb_G += p.per_draw_G[d];
                p.trace_crb_H += p.per_draw_H[d];
            }
            p.trace_crb_G /= n_draws;
            p.trace_crb_H /= n_draws;
            p.crb_G = p.trace_crb_G / energy_G;
            p.crb_H = p.trace_crb_H / energy_H;
        }
        return points;
    }

} // namespace irs
