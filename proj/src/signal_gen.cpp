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

#include "irs/signal_gen.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irs
{
    cx psk_point(int index)
    {
        const int q = ((index % kPskOrder) + kPskOrder) % kPskOrder;
        return std::polar(1.0, 2.0 * std::numbers::pi * q / kPskOrder);
    }

    SymbolMatrix draw_symbols(Eigen::Index T, Eigen::Index L, Rng &rng, bool pilot)
    {
        if (T < 1 || L < 1)
            throw std::invalid_argument("draw_symbols: T and L must be >= 1");
        if (pilot && T < 2)
            throw std::invalid_argument("draw_symbols: a pilot row needs T >= 2");

        std::uniform_int_distribution<int> pick(0, kPskOrder - 1);
        SymbolMatrix s;
        s.pilot_row = pilot;
        s.X.resize(T, L);
        s.indices.resize(T, L);
        for (Eigen::Index l = 0; l < L; ++l)
            for (Eigen::Index t = 0; t < T; ++t)
            {
                const int q = (pilot && t == 0) ? 0 : pick(rng);
                s.indices(t, l) = q;
                s.X(t, l) = psk_point(q);
            }
        return s;
    }

    ComplexTensor3 paratuck_tensor(const ComplexMatrix &H, const ComplexMatrix &G, const ComplexMatrix &X,
                                   const ComplexMatrix &S, const ComplexMatrix &W)
    {
        const Eigen::Index N = H.cols(), L = G.cols();
        if (G.rows() != N || X.cols() != L || S.cols() != N || W.cols() != L || S.rows() != W.rows())
            throw std::invalid_argument("paratuck_tensor: incompatible shapes (H " + std::to_string(H.rows()) + "x" +
                                        std::to_string(H.cols()) + ", G " + std::to_string(G.rows()) + "x" +
                                        std::to_string(G.cols()) + ", X " + std::to_string(X.rows()) + "x" +
                                        std::to_string(X.cols()) + ", S " + std::to_string(S.rows()) + "x" +
                                        std::to_string(S.cols()) + ", W " + std::to_string(W.rows()) + "x" +
                                        std::to_string(W.cols()) + ")");

        const Eigen::Index K = S.rows();
        ComplexTensor3 y(H.rows(), X.rows(), K);
        const ComplexMatrix Xt = X.transpose();
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const ComplexMatrix core = S.row(k).transpose().asDiagonal() * G * W.row(k).transpose().asDiagonal();
            y.slice(k).noalias() = H * core * Xt;
        }
        return y;
    }

    ComplexTensor3 parafac_direct_tensor(const ComplexMatrix &H_direct, const ComplexMatrix &X, const ComplexMatrix &W1)
    {
        const Eigen::Index L = H_direct.cols();
        if (X.cols() != L || W1.cols() != L)
            throw std::invalid_argument("parafac_direct_tensor: H_direct, X and W1 must share the column count L");
        ComplexTensor3 y(H_direct.rows(), X.rows(), W1.rows());
        const ComplexMatrix Xt = X.transpose();
        for (Eigen::Index k = 0; k < W1.rows(); ++k)
            y.slice(k).noalias() = H_direct * W1.row(k).transpose().asDiagonal() * Xt;
        return y;
    }

    double direct_link_scale(const ComplexTensor3 &direct, const ComplexTensor3 &assisted, double alpha_db)
    {
        if (std::isinf(alpha_db) && alpha_db > 0)
            return 0.0;
        const double pd = direct.squared_norm();
        const double pa = assisted.squared_norm();
        if (pd <= 0.0)
            return 0.0;
        return std::sqrt(pa / pd * std::pow(10.0, -alpha_db / 10.0));
    }

    CompositeSignal composite_tensor(const ChannelSet &channels, const ComplexMatrix &X, const ComplexMatrix &W2,
                                     const ComplexMatrix &S2, double alpha_db)
    {
        if (!channels.H_direct)
            throw std::invalid_argument("composite_tensor: channel set has no direct link");
        CompositeSignal out;
        out.tensor = paratuck_tensor(channels.H, channels.G, X, S2, W2);
        const ComplexTensor3 direct = parafac_direct_tensor(*channels.H_direct, X, W2);
        out.direct_scale = direct_link_scale(direct, out.tensor, alpha_db);
        for (Eigen::Index k = 0; k < out.tensor.slices(); ++k)
            out.tensor.slice(k) += out.direct_scale * direct.slice(k);
        return out;
    }

    double noise_variance(double signal_energy, double entries, double snr_db)
    {
        return signal_energy * std::pow(10.0, -snr_db / 10.0) / entries;
    }

    NoisyTensor add_noise(const ComplexTensor3 &t, double snr_db, Rng &rng)
    {
        const double energy = t.squared_norm();
        if (!(energy > 0.0))
            throw std::invalid_argument("add_noise: signal tensor is all zero, SNR undefined");

        NoisyTensor out{t, ComplexTensor3(t.rows(), t.cols(), t.slices())};
        if (std::isinf(snr_db) && snr_db > 0)
            return out;

        for (Eigen::Index k = 0; k < t.slices(); ++k)
            out.noise.slice(k) = complex_gaussian_matrix(t.rows(), t.cols(), rng);
        const double scale = std::sqrt(energy * std::pow(10.0, -snr_db / 10.0) / out.noise.squared_norm());
        out.noise *= scale;
        out.noisy += out.noise;
        return out;
    }

} // namespace irs
