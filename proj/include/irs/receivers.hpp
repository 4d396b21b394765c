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

#ifndef IRS_RECEIVERS_HPP
#define IRS_RECEIVERS_HPP

#include "irs/tensor_core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace irs
{
    struct TalsOptions
    {
        double delta = 1e-5;
        int max_iters = 1000;

        // Random CN(0, 1) starting points are drawn from init_seed when these are empty.
        std::optional<ComplexMatrix> initial_symbols;
        std::optional<ComplexMatrix> initial_g;
        std::uint64_t init_seed = 0;

        // Extra random restarts; the run with the lowest final error is kept.
        int restarts = 0;

        bool fast_g_step = false;    // requires a semi-unitary Psi
        bool refine_symbols = true;  // stage-II symbol update in E-TALS; TALS always refines
        double pinv_tol = kDefaultPinvTolerance;
    };

    struct ReceiverResult
    {
        ComplexMatrix H_hat; // M x N
        ComplexMatrix G_hat; // N x L
        ComplexMatrix X_hat; // T x L
        std::optional<ComplexMatrix> H_direct_hat;

        // Stage-I (KRF) estimates, E-TALS only.
        std::optional<ComplexMatrix> X_stage1;
        std::optional<ComplexMatrix> H_direct_stage1;

        std::vector<double> error_trace; // epsilon_(i): sum_k ||Y[k] - Yhat[k]||^2 / ||Y[k]||^2
        std::vector<double> cost_trace;  // sum_k ||Y[k] - Yhat[k]||^2
        int iterations = 0;
        bool converged = false;
        double wall_time = 0.0; // seconds
    };

    class IdentifiabilityError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    struct IdentifiabilityReport
    {
        std::vector<std::string> violations; // each names the failed inequality with its numbers
        std::vector<std::string> satisfied;

        bool ok() const { return violations.empty(); }
        std::string summary() const;
    };

    /// TK >= N, TKM >= LN, MK >= L, plus K1 >= L when K1 is given.
    IdentifiabilityReport identifiability_check(Eigen::Index M, Eigen::Index L, Eigen::Index N, Eigen::Index T,
                                                Eigen::Index K, std::optional<Eigen::Index> K1 = std::nullopt);

    /// F = [X D_1(W) G^T D_1(S); ...; X D_K(W) G^T D_K(S)], TK x N.
    ComplexMatrix build_F(const ComplexMatrix &X, const ComplexMatrix &G, const ComplexMatrix &S,
                          const ComplexMatrix &W);

    /// E = [H D_1(S) G D_1(W); ...; H D_K(S) G D_K(W)], MK x L.
    ComplexMatrix build_E(const ComplexMatrix &H, const ComplexMatrix &G, const ComplexMatrix &S,
                          const ComplexMatrix &W);

    /// argmin_H ||Y1 - H F^T||_F = Y1 (F^T)^+.
    ComplexMatrix step_H(const ComplexMatrix &Y1, const ComplexMatrix &F, double pinv_tol = kDefaultPinvTolerance);

    /// argmin_G ||vec(Y3) - [Psi^T (kr) (X (x) H)] vec(G)||.
    ///
    /// The general path forms the TKM x LN system matrix and applies its pseudo-inverse.
    /// With `fast`, Psi must satisfy Psi^* Psi^T = K I; the normal matrix is then
    /// K diag(||q_r||^2) with q_r the columns of X (x) H, and the solution is
    /// (1/K) Sigma_Q^{-1} (Psi^T (kr) Q)^H vec(Y3), evaluated without forming the Khatri-Rao product.
    ComplexMatrix step_G(const ComplexMatrix &Y3, const ComplexMatrix &X, const ComplexMatrix &H,
                         const ComplexMatrix &Psi, bool fast, double pinv_tol = kDefaultPinvTolerance);

    /// argmin_X ||Y2 - X E^T||_F = Y2 (E^T)^+.
    ComplexMatrix step_X(const ComplexMatrix &Y2, const ComplexMatrix &E, double pinv_tol = kDefaultPinvTolerance);

    /// Sum over slices of ||Y[k] - Yhat[k]||^2 / ||Y[k]||^2 (zero slices skipped).
    double normalized_error(const ComplexTensor3 &Y, const ComplexTensor3 &Y_hat);

    /// Trilinear alternating least squares on a PARATUCK tensor with known S and W.
    /// Throws IdentifiabilityError when the dimensions violate the uniqueness
    /// conditions and std::invalid_argument ("degenerate input") for an all-zero tensor.
    ReceiverResult tals(const ComplexTensor3 &Y, const ComplexMatrix &S, const ComplexMatrix &W,
                        const TalsOptions &opts = {});

    struct AlignedEstimates
    {
        ComplexMatrix H;
        ComplexMatrix G;
        ComplexMatrix X;
    };

    /// Pilot normalisation X <- X diag(1 / X(0, :)), G <- G diag(X(0, :)). When the true H
    /// is supplied (simulation only), each column of H is also aligned by the LS scalar
    /// delta_n = h_hat_n^H h_n / ||h_hat_n||^2 and G compensated by diag(1 / delta).
    AlignedEstimates remove_ambiguity(const ComplexMatrix &H_hat, const ComplexMatrix &G_hat,
                                      const ComplexMatrix &X_hat,
                                      const std::optional<ComplexMatrix> &H_truth = std::nullopt);

    struct KrfEstimate
    {
        ComplexMatrix X;        // T x L, pilot row normalised to ones
        ComplexMatrix H_direct; // M x L
    };

    /// Khatri-Rao factorisation of Z = (1/K1) Y_direct W1^* into X (kr) H_direct, one
    /// rank-1 approximation per column. Y_direct is the MT x K1 matrix [vec(Y[1]), ..., vec(Y[K1])].
    KrfEstimate krf(const ComplexMatrix &Y_direct, const ComplexMatrix &W1, Eigen::Index M);

    /// Two-stage receiver: KRF on the direct-only blocks, subtraction of the estimated
    /// direct link from the stage-II blocks, TALS warm-started from the KRF symbols and
    /// a final LS refinement of the direct channel from the refined symbols.
    ReceiverResult etals(const ComplexTensor3 &Y_direct, const ComplexTensor3 &Y_stage2, const ComplexMatrix &W1,
                         const ComplexMatrix &W2, const ComplexMatrix &S2, const TalsOptions &opts = {});

    struct Decisions
    {
        Eigen::MatrixXi indices;
        ComplexMatrix symbols;
    };

    /// Nearest 16-PSK point by phase.
    Decisions demodulate(const ComplexMatrix &X_soft);

} // namespace irs

#endif
