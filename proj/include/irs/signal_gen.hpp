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

#ifndef IRS_SIGNAL_GEN_HPP
#define IRS_SIGNAL_GEN_HPP

#include "irs/channel_models.hpp"
#include "irs/tensor_core.hpp"

#include <vector>

namespace irs
{
    inline constexpr int kPskOrder = 16;

    /// 16-PSK point q: exp(j 2 pi q / 16).
    cx psk_point(int index);

    struct SymbolMatrix
    {
        ComplexMatrix X;          // T x L
        Eigen::MatrixXi indices;  // constellation index per entry
        bool pilot_row = false;   // row 0 is all ones
    };

    /// Uniform i.i.d. 16-PSK symbols. With `pilot`, row 0 is forced to ones (index 0); requires T >= 2.
    SymbolMatrix draw_symbols(Eigen::Index T, Eigen::Index L, Rng &rng, bool pilot);

    /// Slice k: H D_k(S) G D_k(W) X^T.
    ComplexTensor3 paratuck_tensor(const ComplexMatrix &H, const ComplexMatrix &G, const ComplexMatrix &X,
                                   const ComplexMatrix &S, const ComplexMatrix &W);

    /// Slice k: H_direct D_k(W1) X^T.
    ComplexTensor3 parafac_direct_tensor(const ComplexMatrix &H_direct, const ComplexMatrix &X, const ComplexMatrix &W1);

    struct CompositeSignal
    {
        ComplexTensor3 tensor;     // scaled direct term + IRS-assisted term
        double direct_scale = 0.0; // c_alpha applied to the direct term
    };

    /// Direct-link gap c_alpha so that ||c * direct||^2 / ||assisted||^2 = 10^{-alpha/10}.
    /// alpha_db = +inf gives 0.
    double direct_link_scale(const ComplexTensor3 &direct, const ComplexTensor3 &assisted, double alpha_db);

    /// Slice k: c_alpha H_direct D_k(W2) X^T + H D_k(S2) G D_k(W2) X^T.
    CompositeSignal composite_tensor(const ChannelSet &channels, const ComplexMatrix &X, const ComplexMatrix &W2,
                                     const ComplexMatrix &S2, double alpha_db);

    struct NoisyTensor
    {
        ComplexTensor3 noisy;
        ComplexTensor3 noise;
    };

    /// Adds circular Gaussian noise rescaled so that 10 log10(||t||^2 / ||noise||^2) equals
    /// snr_db exactly. snr_db = +inf adds nothing. Throws on an all-zero signal.
    NoisyTensor add_noise(const ComplexTensor3 &t, double snr_db, Rng &rng);

    /// Per-entry noise variance implied by an SNR for a tensor of the given energy and size.
    double noise_variance(double signal_energy, double entries, double snr_db);

} // namespace irs

#endif
