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

#include "irs/code_design.hpp"

#include <cmath>
#include <numbers>

namespace irs
{
    namespace
    {
        cx dft_generator_power(Eigen::Index k, Eigen::Index power, Eigen::Index K)
        {
            // Reduce the exponent modulo K so large powers keep full precision.
            const Eigen::Index e = (k * power) % K;
            return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(K));
        }

        void require_dft_feasible(Eigen::Index L, Eigen::Index N, Eigen::Index K)
        {
            if (L < 1 || N < 1 || K < 1)
                throw DesignError("DFT design: L, N and K must be >= 1");
            if (L * N > K)
                throw DesignError("DFT design requires LN <= K (LN = " + std::to_string(L * N) +
                                  ", K = " + std::to_string(K) + ")");
        }
    } // namespace

    ComplexMatrix build_psi_dft(Eigen::Index L, Eigen::Index N, Eigen::Index K)
    {
        require_dft_feasible(L, N, K);
        ComplexMatrix psi(L * N, K);
        for (Eigen::Index k = 0; k < K; ++k)
            for (Eigen::Index r = 0; r < L * N; ++r)
                psi(r, k) = dft_generator_power(k, r, K);
        return psi;
    }

    DesignFactors factor_psi(Eigen::Index L, Eigen::Index N, Eigen::Index K)
    {
        require_dft_feasible(L, N, K);
        DesignFactors f{ComplexMatrix(K, L), ComplexMatrix(K, N)};
        for (Eigen::Index k = 0; k < K; ++k)
        {
            for (Eigen::Index l = 0; l < L; ++l)
                f.W(k, l) = dft_generator_power(k, N * l, K);
            for (Eigen::Index n = 0; n < N; ++n)
                f.S(k, n) = dft_generator_power(k, n, K);
        }
        return f;
    }

    bool is_semi_unitary(const ComplexMatrix &Psi, double tol)
    {
        const double K = static_cast<double>(Psi.cols());
        const ComplexMatrix gram = Psi.conjugate() * Psi.transpose();
        const ComplexMatrix target = K * ComplexMatrix::Identity(Psi.rows(), Psi.rows());
        return (gram - target).cwiseAbs().maxCoeff() <= tol * K;
    }

    CodingDesign build_dft_design(Eigen::Index L, Eigen::Index N, Eigen::Index K)
    {
        auto [W, S] = factor_psi(L, N, K);
        CodingDesign d;
        d.Psi = khatri_rao(W.transpose(), S.transpose());
        d.W = std::move(W);
        d.S = std::move(S);
        d.kind = DesignKind::dft_vandermonde;
        d.semi_unitary = is_semi_unitary(d.Psi);
        return d;
    }

    CodingDesign build_random_phase(Eigen::Index L, Eigen::Index N, Eigen::Index K, Rng &rng)
    {
        if (L < 1 || N < 1 || K < 1)
            throw DesignError("random-phase design: L, N and K must be >= 1");
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        CodingDesign d;
        d.W.resize(K, L);
        d.S.resize(K, N);
        for (Eigen::Index l = 0; l < L; ++l)
            for (Eigen::Index k = 0; k < K; ++k)
                d.W(k, l) = std::polar(1.0, phase(rng));
        for (Eigen::Index n = 0; n < N; ++n)
            for (Eigen::Index k = 0; k < K; ++k)
                d.S(k, n) = std::polar(1.0, phase(rng));
        d.Psi = khatri_rao(d.W.transpose(), d.S.transpose());
        d.kind = DesignKind::random_phase;
        d.semi_unitary = L * N <= K && is_semi_unitary(d.Psi);
        return d;
    }

    CodingDesign build_design(DesignKind kind, Eigen::Index L, Eigen::Index N, Eigen::Index K, Rng &rng)
    {
        if (kind == DesignKind::random_phase)
            return build_random_phase(L, N, K, rng);
        if (L * N <= K)
            return build_dft_design(L, N, K);

        CodingDesign d = build_random_phase(L, N, K, rng);
        d.warning = "LN = " + std::to_string(L * N) + " exceeds K = " + std::to_string(K) +
                    "; semi-unitary DFT design impossible, using random phases";
        return d;
    }

    ComplexMatrix build_stage1_coding(Eigen::Index K1, Eigen::Index L)
    {
        if (L < 1)
            throw DesignError("stage-I coding: L must be >= 1");
        if (K1 < L)
            throw DesignError("stage-I coding requires K1 >= L (K1 = " + std::to_string(K1) +
                              ", L = " + std::to_string(L) + ")");
        ComplexMatrix W1(K1, L);
        for (Eigen::Index l = 0; l < L; ++l)
            for (Eigen::Index k = 0; k < K1; ++k)
                W1(k, l) = dft_generator_power(k, l, K1);
        return W1;
    }

    SplitDesign split_design(DesignKind kind, Eigen::Index L, Eigen::Index N, Eigen::Index K, Eigen::Index K1,
                             Eigen::Index K2, Rng &rng)
    {
        if (K1 + K2 != K)
            throw DesignError("split design requires K1 + K2 = K (" + std::to_string(K1) + " + " +
                              std::to_string(K2) + " != " + std::to_string(K) + ")");
        if (K2 < 1)
            throw DesignError("split design requires K2 >= 1");
        SplitDesign split;
        split.W1 = build_stage1_coding(K1, L);
        split.stage2 = build_design(kind, L, N, K2, rng);
        return split;
    }

} // namespace irs
