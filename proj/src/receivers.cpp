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

#include "irs/receivers.hpp"

#include "irs/channel_models.hpp"
#include "irs/code_design.hpp"
#include "irs/signal_gen.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace irs
{
    std::string IdentifiabilityReport::summary() const
    {
        std::ostringstream os;
        if (ok())
            os << "identifiable:";
        else
            os << "not identifiable, violated:";
        for (const auto &v : (ok() ? satisfied : violations))
            os << ' ' << v << ';';
        return os.str();
    }

    IdentifiabilityReport identifiability_check(Eigen::Index M, Eigen::Index L, Eigen::Index N, Eigen::Index T,
                                                Eigen::Index K, std::optional<Eigen::Index> K1)
    {
        IdentifiabilityReport report;
        auto check = [&](const char *name, Eigen::Index lhs, Eigen::Index rhs) {
            std::string line = std::string(name) + " (" + std::to_string(lhs) + (lhs >= rhs ? " >= " : " < ") +
                               std::to_string(rhs) + ")";
            (lhs >= rhs ? report.satisfied : report.violations).push_back(std::move(line));
        };
        check("TK >= N", T * K, N);
        check("TKM >= LN", T * K * M, L * N);
        check("MK >= L", M * K, L);
        if (K1)
            check("K1 >= L", *K1, L);
        return report;
    }

    namespace
    {
        void require(bool cond, const std::string &what)
        {
            if (!cond)
                throw std::invalid_argument(what);
        }

        void require_design_shapes(const ComplexMatrix &S, const ComplexMatrix &W)
        {
            require(S.rows() == W.rows(), "S and W must have the same number of blocks K");
        }
    } // namespace

    ComplexMatrix build_F(const ComplexMatrix &X, const ComplexMatrix &G, const ComplexMatrix &S,
                          const ComplexMatrix &W)
    {
        require_design_shapes(S, W);
        require(G.cols() == X.cols() && W.cols() == X.cols() && S.cols() == G.rows(),
                "build_F: incompatible shapes");
        const Eigen::Index T = X.rows(), N = G.rows(), K = S.rows();
        const ComplexMatrix Gt = G.transpose();
        ComplexMatrix F(T * K, N);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const ComplexMatrix xw = X * W.row(k).transpose().asDiagonal();
            F.middleRows(k * T, T).noalias() = xw * Gt * S.row(k).transpose().asDiagonal();
        }
        return F;
    }

    ComplexMatrix build_E(const ComplexMatrix &H, const ComplexMatrix &G, const ComplexMatrix &S,
                          const ComplexMatrix &W)
    {
        require_design_shapes(S, W);
        require(H.cols() == G.rows() && S.cols() == H.cols() && W.cols() == G.cols(), "build_E: incompatible shapes");
        const Eigen::Index M = H.rows(), L = G.cols(), K = S.rows();
        ComplexMatrix E(M * K, L);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const ComplexMatrix hs = H * S.row(k).transpose().asDiagonal();
            E.middleRows(k * M, M).noalias() = hs * G * W.row(k).transpose().asDiagonal();
        }
        return E;
    }

    ComplexMatrix step_H(const ComplexMatrix &Y1, const ComplexMatrix &F, double pinv_tol)
    {
        require(Y1.cols() == F.rows(), "step_H: Y1 columns must equal F rows (TK)");
        return Y1 * pinv(F.transpose(), pinv_tol);
    }

    ComplexMatrix step_X(const ComplexMatrix &Y2, const ComplexMatrix &E, double pinv_tol)
    {
        require(Y2.cols() == E.rows(), "step_X: Y2 columns must equal E rows (MK)");
        return Y2 * pinv(E.transpose(), pinv_tol);
    }

    ComplexMatrix step_G(const ComplexMatrix &Y3, const ComplexMatrix &X, const ComplexMatrix &H,
                         const ComplexMatrix &Psi, bool fast, double pinv_tol)
    {
        const Eigen::Index L = X.cols(), N = H.cols(), K = Psi.cols();
        require(Psi.rows() == L * N, "step_G: Psi must have LN rows");
        require(Y3.rows() == X.rows() * H.rows() && Y3.cols() == K, "step_G: Y3 must be TM x K");

        const ComplexMatrix Q = kronecker(X, H);
        if (!fast)
        {
            const ComplexMatrix C = khatri_rao(Psi.transpose(), Q);
            const ComplexVector g = pinv(C, pinv_tol) * vec(Y3);
            return unvec(g, N, L);
        }

        if (!is_semi_unitary(Psi))
            throw std::invalid_argument("step_G: fast path requires Psi^* Psi^T = K I (semi-unitary design)");

        // Column r of (Psi^T kr Q)^H vec(Y3) reduces to q_r^H (Y3 Psi^H)_r.
        const ComplexMatrix projected = Y3 * Psi.adjoint();
        ComplexVector g(L * N);
        for (Eigen::Index r = 0; r < L * N; ++r)
        {
            const double q_energy = Q.col(r).squaredNorm();
            if (!(q_energy > 0.0))
                throw std::invalid_argument("step_G: X (x) H has a zero column, G is not identifiable");
            g(r) = Q.col(r).dot(projected.col(r)) / (static_cast<double>(K) * q_energy);
        }
        return unvec(g, N, L);
    }

    double normalized_error(const ComplexTensor3 &Y, const ComplexTensor3 &Y_hat)
    {
        double eps = 0.0;
        for (Eigen::Index k = 0; k < Y.slices(); ++k)
        {
            const double ref = Y.slice(k).squaredNorm();
            if (ref > 0.0)
                eps += (Y.slice(k) - Y_hat.slice(k)).squaredNorm() / ref;
        }
        return eps;
    }

    namespace
    {
        // Yhat[k] = E_k X^T, reusing the stacked E from the last X step.
        ComplexTensor3 reconstruct_from_E(const ComplexMatrix &E, const ComplexMatrix &X, Eigen::Index M)
        {
            const Eigen::Index K = E.rows() / M;
            ComplexTensor3 y(M, X.rows(), K);
            const ComplexMatrix Xt = X.transpose();
            for (Eigen::Index k = 0; k < K; ++k)
                y.slice(k).noalias() = E.middleRows(k * M, M) * Xt;
            return y;
        }

        double squared_residual(const ComplexTensor3 &Y, const ComplexTensor3 &Y_hat)
        {
            double acc = 0.0;
            for (Eigen::Index k = 0; k < Y.slices(); ++k)
                acc += (Y.slice(k) - Y_hat.slice(k)).squaredNorm();
            return acc;
        }

        ReceiverResult tals_single(const ComplexTensor3 &Y, const ComplexMatrix &S, const ComplexMatrix &W,
                                   const ComplexMatrix &Psi, const ComplexMatrix &Y1, const ComplexMatrix &Y2,
                                   const ComplexMatrix &Y3, const TalsOptions &opts, std::uint64_t seed)
        {
            const Eigen::Index M = Y.rows(), T = Y.cols(), N = S.cols(), L = W.cols();
            Rng rng(seed);

            ReceiverResult res;
            res.G_hat = opts.initial_g ? *opts.initial_g : complex_gaussian_matrix(N, L, rng);
            res.X_hat = opts.initial_symbols ? *opts.initial_symbols : complex_gaussian_matrix(T, L, rng);
            require(res.G_hat.rows() == N && res.G_hat.cols() == L, "tals: initial G must be N x L");
            require(res.X_hat.rows() == T && res.X_hat.cols() == L, "tals: initial X must be T x L");

            double previous = std::numeric_limits<double>::quiet_NaN();
            for (int i = 1; i <= opts.max_iters; ++i)
            {
                res.H_hat = step_H(Y1, build_F(res.X_hat, res.G_hat, S, W), opts.pinv_tol);
                res.G_hat = step_G(Y3, res.X_hat, res.H_hat, Psi, opts.fast_g_step, opts.pinv_tol);
                const ComplexMatrix E = build_E(res.H_hat, res.G_hat, S, W);
                if (opts.refine_symbols)
                    res.X_hat = step_X(Y2, E, opts.pinv_tol);

                const ComplexTensor3 Y_hat = reconstruct_from_E(E, res.X_hat, M);
                const double eps = normalized_error(Y, Y_hat);
                res.error_trace.push_back(eps);
                res.cost_trace.push_back(squared_residual(Y, Y_hat));
                res.iterations = i;

                if (!std::isfinite(eps))
                    break;
                if (i > 1 && std::abs(eps - previous) <= opts.delta)
                {
                    res.converged = true;
                    break;
                }
                previous = eps;
            }
            return res;
        }
    } // namespace

    ReceiverResult tals(const ComplexTensor3 &Y, const ComplexMatrix &S, const ComplexMatrix &W,
                        const TalsOptions &opts)
    {
        const auto start = std::chrono::steady_clock::now();
        require(opts.delta > 0.0, "tals: delta must be positive");
        require(opts.max_iters >= 1, "tals: max_iters must be >= 1");
        require_design_shapes(S, W);
        require(S.rows() == Y.slices(), "tals: S and W must have one row per frontal slice");

        const Eigen::Index M = Y.rows(), T = Y.cols(), K = Y.slices(), N = S.cols(), L = W.cols();
        const IdentifiabilityReport report = identifiability_check(M, L, N, T, K);
        if (!report.ok())
            throw IdentifiabilityError("tals: " + report.summary());
        if (!(Y.squared_norm() > 0.0))
            throw std::invalid_argument("tals: degenerate input (all-zero received tensor)");

        const ComplexMatrix Psi = khatri_rao(W.transpose(), S.transpose());
        const ComplexMatrix Y1 = unfold1(Y), Y2 = unfold2(Y), Y3 = unfold3(Y);

        ReceiverResult best = tals_single(Y, S, W, Psi, Y1, Y2, Y3, opts, opts.init_seed);
        for (int r = 1; r <= opts.restarts; ++r)
        {
            TalsOptions fresh = opts;
            fresh.initial_g.reset();
            fresh.initial_symbols.reset();
            ReceiverResult candidate = tals_single(Y, S, W, Psi, Y1, Y2, Y3, fresh,
                                                   opts.init_seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned>(r));
            if (candidate.error_trace.back() < best.error_trace.back())
                best = std::move(candidate);
        }

        best.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return best;
    }

    AlignedEstimates remove_ambiguity(const ComplexMatrix &H_hat, const ComplexMatrix &G_hat,
                                      const ComplexMatrix &X_hat, const std::optional<ComplexMatrix> &H_truth)
    {
        require(X_hat.rows() >= 1, "remove_ambiguity: X has no pilot row");
        const Eigen::Index L = X_hat.cols(), N = H_hat.cols();
        require(G_hat.rows() == N && G_hat.cols() == L, "remove_ambiguity: G must be N x L");

        AlignedEstimates out{H_hat, G_hat, X_hat};
        for (Eigen::Index l = 0; l < L; ++l)
        {
            const cx pilot = X_hat(0, l);
            if (std::abs(pilot) == 0.0)
                throw std::invalid_argument("remove_ambiguity: zero pilot estimate in stream " + std::to_string(l));
            out.X.col(l) /= pilot;
            out.G.col(l) *= pilot;
        }

        if (H_truth)
        {
            require(H_truth->rows() == H_hat.rows() && H_truth->cols() == N,
                    "remove_ambiguity: reference H shape mismatch");
            for (Eigen::Index n = 0; n < N; ++n)
            {
                const double energy = H_hat.col(n).squaredNorm();
                if (!(energy > 0.0))
                    throw std::invalid_argument("remove_ambiguity: zero column in H estimate");
                const cx delta = H_hat.col(n).dot(H_truth->col(n)) / energy;
                if (std::abs(delta) == 0.0)
                    throw std::invalid_argument("remove_ambiguity: H estimate column orthogonal to reference");
                out.H.col(n) *= delta;
                out.G.row(n) /= delta;
            }
        }
        return out;
    }

    KrfEstimate krf(const ComplexMatrix &Y_direct, const ComplexMatrix &W1, Eigen::Index M)
    {
        const Eigen::Index K1 = W1.rows(), L = W1.cols();
        require(M >= 1 && Y_direct.rows() % M == 0, "krf: Y_direct rows must be a multiple of M");
        require(Y_direct.cols() == K1, "krf: Y_direct must have K1 columns");
        const Eigen::Index T = Y_direct.rows() / M;

        const ComplexMatrix gram = W1.transpose() * W1.conjugate();
        const ComplexMatrix target = static_cast<double>(K1) * ComplexMatrix::Identity(L, L);
        if ((gram - target).cwiseAbs().maxCoeff() > 1e-10 * static_cast<double>(K1))
            throw std::invalid_argument("krf: W1 must satisfy W1^T W1^* = K1 I_L");

        const ComplexMatrix Z = Y_direct * W1.conjugate() / static_cast<double>(K1);
        KrfEstimate est{ComplexMatrix(T, L), ComplexMatrix(M, L)};
        for (Eigen::Index l = 0; l < L; ++l)
        {
            const ComplexMatrix Zl = unvec(Z.col(l), M, T); // ~ h_l x_l^T
            Eigen::JacobiSVD<ComplexMatrix> svd(Zl, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const double sigma = svd.singularValues()(0);
            ComplexVector h = sigma * svd.matrixU().col(0);
            ComplexVector x = svd.matrixV().col(0).conjugate();
            const cx pilot = x(0);
            if (std::abs(pilot) == 0.0)
                throw std::invalid_argument("krf: zero pilot estimate in stream " + std::to_string(l));
            est.X.col(l) = x / pilot;
            est.H_direct.col(l) = h * pilot;
        }
        return est;
    }

    ReceiverResult etals(const ComplexTensor3 &Y_direct, const ComplexTensor3 &Y_stage2, const ComplexMatrix &W1,
                         const ComplexMatrix &W2, const ComplexMatrix &S2, const TalsOptions &opts)
    {
        const auto start = std::chrono::steady_clock::now();
        const Eigen::Index M = Y_stage2.rows(), T = Y_stage2.cols(), L = W2.cols();
        require(Y_direct.rows() == M && Y_direct.cols() == T, "etals: stage-I and stage-II blocks must be M x T");
        require(W1.rows() == Y_direct.slices() && W1.cols() == L, "etals: W1 must be K1 x L");
        const IdentifiabilityReport report =
            identifiability_check(M, L, S2.cols(), T, Y_stage2.slices(), Y_direct.slices());
        if (!report.ok())
            throw IdentifiabilityError("etals: " + report.summary());

        // Stage I
        const ComplexMatrix Yd3 = unfold3(Y_direct);
        const KrfEstimate stage1 = krf(Yd3, W1, M);

        // Stage II: subtract the estimated direct contribution, then warm-started TALS.
        ComplexTensor3 Q = Y_stage2;
        const ComplexMatrix Xt1 = stage1.X.transpose();
        for (Eigen::Index k = 0; k < Q.slices(); ++k)
            Q.slice(k).noalias() -= stage1.H_direct * W2.row(k).transpose().asDiagonal() * Xt1;

        TalsOptions stage2_opts = opts;
        stage2_opts.initial_symbols = stage1.X;
        ReceiverResult res = tals(Q, S2, W2, stage2_opts);

        // Keep the reconstruction unchanged while pinning the pilot row to ones.
        for (Eigen::Index l = 0; l < L; ++l)
        {
            const cx pilot = res.X_hat(0, l);
            if (std::abs(pilot) == 0.0)
                throw std::invalid_argument("etals: zero pilot estimate in stream " + std::to_string(l));
            res.X_hat.col(l) /= pilot;
            res.G_hat.col(l) *= pilot;
        }

        // LS direct channel from the refined symbols.
        const ComplexMatrix design = khatri_rao(W1, res.X_hat);
        res.H_direct_hat = unfold1(Y_direct) * pinv(design.transpose(), opts.pinv_tol);
        res.X_stage1 = stage1.X;
        res.H_direct_stage1 = stage1.H_direct;
        res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return res;
    }

    Decisions demodulate(const ComplexMatrix &X_soft)
    {
        Decisions d{Eigen::MatrixXi(X_soft.rows(), X_soft.cols()), ComplexMatrix(X_soft.rows(), X_soft.cols())};
        const double step = 2.0 * std::numbers::pi / kPskOrder;
        for (Eigen::Index j = 0; j < X_soft.cols(); ++j)
            for (Eigen::Index i = 0; i < X_soft.rows(); ++i)
            {
                const long q = std::lround(std::arg(X_soft(i, j)) / step);
                const int idx = static_cast<int>(((q % kPskOrder) + kPskOrder) % kPskOrder);
                d.indices(i, j) = idx;
                d.symbols(i, j) = psk_point(idx);
            }
        return d;
    }

} // namespace irs
