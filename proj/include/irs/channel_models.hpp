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

#ifndef IRS_CHANNEL_MODELS_HPP
#define IRS_CHANNEL_MODELS_HPP

#include "irs/tensor_core.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace irs
{
    using Rng = std::mt19937_64;

    /// Circularly symmetric complex Gaussian sample with the given variance.
    cx complex_gaussian(Rng &rng, double variance = 1.0);
    ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng, double variance = 1.0);

    enum class ArrayKind
    {
        uniform_linear,
        uniform_rectangular
    };

    struct ArrayGeometry
    {
        ArrayKind kind = ArrayKind::uniform_linear;
        Eigen::Index rows = 1; // URA only
        Eigen::Index cols = 1; // element count for a ULA
        double spacing = 0.5;  // wavelengths

        static ArrayGeometry ula(Eigen::Index elements, double spacing = 0.5);
        static ArrayGeometry ura(Eigen::Index rows, Eigen::Index cols, double spacing = 0.5);

        // Most square rows x cols factorisation of `elements` (rows <= cols).
        static ArrayGeometry ura_for(Eigen::Index elements, double spacing = 0.5);

        Eigen::Index elements() const { return kind == ArrayKind::uniform_linear ? cols : rows * cols; }
    };

    /// Array response. A ULA ignores elevation; a URA is the Kronecker product of
    /// its row-axis response (sin(el)cos(az)) and column-axis response (sin(el)sin(az)).
    ComplexVector steering_vector(const ArrayGeometry &geometry, double azimuth, double elevation = 0.0);

    enum class ChannelModel
    {
        rayleigh,
        geometric
    };

    struct ChannelSet
    {
        ComplexMatrix H;                      // M x N, IRS -> BS
        ComplexMatrix G;                      // N x L, UT -> IRS
        std::optional<ComplexMatrix> H_direct; // M x L, UT -> BS
        ChannelModel model = ChannelModel::rayleigh;
        int paths_h = 0; // geometric only
        int paths_g = 0;
    };

    struct ChannelDims
    {
        Eigen::Index M = 1; // BS antennas
        Eigen::Index L = 1; // UT antennas
        Eigen::Index N = 1; // IRS elements
    };

    /// I.i.d. CN(0, 1) entries.
    ComplexMatrix rayleigh_channel(Eigen::Index rows, Eigen::Index cols, Rng &rng);

    /// Specular-path pair:
    ///   H = N^{-1/2} A_BS diag(beta) A_IRS^H   (M x N, R1 paths)
    ///   G = N^{-1/2} B_IRS diag(gamma) B_UT^H  (N x L, R2 paths)
    /// with ULAs at the BS and UT, a URA at the IRS, gains CN(0, 1), azimuth
    /// U[-pi/2, pi/2] and elevation U[0, pi/2].
    std::pair<ComplexMatrix, ComplexMatrix> geometric_channel_pair(const ChannelDims &dims, int paths_h, int paths_g,
                                                                   Rng &rng);

    /// Specular-path UT -> BS channel, M x L, unit-gain paths (no IRS normalisation).
    ComplexMatrix geometric_direct_channel(const ChannelDims &dims, int paths, Rng &rng);

    /// Draws H, G and optionally H_direct under the chosen model.
    ChannelSet draw_channels(const ChannelDims &dims, ChannelModel model, int paths_h, int paths_g, bool with_direct,
                             int paths_direct, Rng &rng);

} // namespace irs

#endif
