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

#ifndef IRS_CRB_HPP
#define IRS_CRB_HPP

#include "irs/channel_models.hpp"
#include "irs/code_design.hpp"
#include "irs/tensor_core.hpp"

#include <cstdint>
#include <vector>

namespace irs
{
    /// Real and imaginary parts of J = C^H R^{-1} C. The real-parameter FIM is
    /// 2 [[M_bar, -M_tilde], [M_tilde, M_bar]].
    struct FimBlocks
    {
        RealMatrix M_bar;
        RealMatrix M_tilde;

        RealMatrix assembled() const;
    };

    /// Splits a Hermitian J into its FIM blocks. Throws when J is not Hermitian to 1e-10.
    FimBlocks fim_blocks(const ComplexMatrix &J);

    struct CrbTrace
    {
        double real_part = 0.0; // Tr CRB(Re theta)
        double imag_part = 0.0; // Tr CRB(Im theta)
        double total() const { return real_part + imag_part; }
    };

    /// Schur-complement traces
    ///   Tr CRB(Re) = 1/2 Tr{(M_bar + M_tilde M_bar^{-1} M_tilde)^{-1}}
    ///   Tr CRB(Im) = 1/2 Tr{M_bar^{-1} - M_bar^{-1} M_tilde (M_bar + M_tilde M_bar^{-1} M_tilde)^{-1} M_tilde M_bar^{-1}}
    /// Throws std::domain_error when M_bar is singular.
    CrbTrace crb_trace(const RealMatrix &M_bar, const RealMatrix &M_tilde);

    /// Trace of the CRB for vec(G) with H and X known, R = sigma2 I. Uses the
    /// diagonal form when Psi is semi-unitary and the general path otherwise.
    double crb_G(const ComplexMatrix &X, const ComplexMatrix &H, const ComplexMatrix &Psi, double sigma2);

    /// (sigma2 / K) sum_r 1 / [X^H X (x) H^H H]_rr. Valid only for a semi-unitary Psi.
    double crb_G_diagonal(const ComplexMatrix &X, const ComplexMatrix &H, Eigen::Index K, double sigma2);

    /// Slepian-Bangs with C = Psi^T (kr) (X (x) H) formed explicitly.
    double crb_G_general(const ComplexMatrix &X, const ComplexMatrix &H, const ComplexMatrix &Psi, double sigma2);

    /// Trace of the CRB for vec(H) with P = F (x) I_M: M times the Schur-complement trace of F^H F / sigma2.
    double crb_H(const ComplexMatrix &F, double sigma2, Eigen::Index M);

    /// Same bound from the full MN x MN Kronecker-structured FIM. Cubic in MN; for cross-checks.
    double crb_H_full(const ComplexMatrix &F, double sigma2, Eigen::Index M);

    enum class CrbAveraging
    {
        random_symbols, // fresh X per draw
        fixed_symbols   // one X for all draws
    };

    struct CrbScenario
    {
        Eigen::Index M = 1, L = 1, N = 1, T = 2, K = 1;
        ChannelModel channel = ChannelModel::rayleigh;
        int paths_h = 1, paths_g = 1;
        DesignKind design = DesignKind::dft_vandermonde;
        CrbAveraging averaging = CrbAveraging::random_symbols;
    };

    struct CrbPoint
    {
        double snr_db = 0.0;
        double trace_crb_G = 0.0; // mean over draws
        double trace_crb_H = 0.0;
        double crb_G = 0.0;       // mean trace / mean ||G||_F^2
        double crb_H = 0.0;       // mean trace / mean ||H||_F^2
        std::vector<double> per_draw_G;
        std::vector<double> per_draw_H;
        std::vector<double> sigma2; // per draw
    };

    /// Monte Carlo expected CRB over channel, symbol and (random) design draws. The noise
    /// variance of each draw follows the SNR definition: sigma2 = ||Ybar||^2 10^{-SNR/10} / (MTK).
    std::vector<CrbPoint> expected_crb(const CrbScenario &scenario, const std::vector<double> &snr_grid, int n_draws,
                                       Rng &rng);

} // namespace irs

#endif
