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

#ifndef IRS_CODE_DESIGN_HPP
#define IRS_CODE_DESIGN_HPP

#include "irs/channel_models.hpp"
#include "irs/tensor_core.hpp"

#include <stdexcept>
#include <string>

namespace irs
{
    enum class DesignKind
    {
        dft_vandermonde,
        random_phase
    };

    /// Coding matrix W (K x L), IRS phase shifts S (K x N) and Psi = W^T (kr) S^T (LN x K).
    struct CodingDesign
    {
        ComplexMatrix W;
        ComplexMatrix S;
        ComplexMatrix Psi;
        bool semi_unitary = false;
        DesignKind kind = DesignKind::dft_vandermonde;
        std::string warning; // non-empty when the requested kind could not be honoured
    };

    /// Thrown when LN > K for the DFT design, or K1 < L for the stage-I split.
    class DesignError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// First LN rows of the K-point DFT matrix: entry (r, k) = psi_k^r with psi_k = exp(-j 2 pi k / K).
    ComplexMatrix build_psi_dft(Eigen::Index L, Eigen::Index N, Eigen::Index K);

    struct DesignFactors
    {
        ComplexMatrix W; // K x L, row k = [1, psi_k^N, ..., psi_k^{N(L-1)}]
        ComplexMatrix S; // K x N, row k = [1, psi_k, ..., psi_k^{N-1}]
    };

    /// Exact Khatri-Rao split of the truncated DFT Psi into W and S.
    DesignFactors factor_psi(Eigen::Index L, Eigen::Index N, Eigen::Index K);

    /// Unit-modulus W and S with i.i.d. uniform phases.
    CodingDesign build_random_phase(Eigen::Index L, Eigen::Index N, Eigen::Index K, Rng &rng);

    CodingDesign build_dft_design(Eigen::Index L, Eigen::Index N, Eigen::Index K);

    /// Builds the requested kind. A DFT request with LN > K falls back to
    /// random phases and records the reason in `warning`.
    CodingDesign build_design(DesignKind kind, Eigen::Index L, Eigen::Index N, Eigen::Index K, Rng &rng);

    /// True when Psi^* Psi^T = K I_{LN} to within tol * K (max-abs entry).
    bool is_semi_unitary(const ComplexMatrix &Psi, double tol = 1e-10);

    /// K1 x L truncated DFT: entry (k, l) = exp(-j 2 pi k l / K1). Satisfies W1^T W1^* = K1 I_L.
    ComplexMatrix build_stage1_coding(Eigen::Index K1, Eigen::Index L);

    struct SplitDesign
    {
        ComplexMatrix W1; // K1 x L
        CodingDesign stage2; // K2 rows
    };

    /// Stage-I coding plus a fresh stage-II design of size K2 = K - K1.
    SplitDesign split_design(DesignKind kind, Eigen::Index L, Eigen::Index N, Eigen::Index K, Eigen::Index K1,
                             Eigen::Index K2, Rng &rng);

} // namespace irs

#endif
