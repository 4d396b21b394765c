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

#include "irs/channel_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irs
{
    cx complex_gaussian(Rng &rng, double variance)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
        const double re = normal(rng);
        const double im = normal(rng);
        return {re, im};
    }

    ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng, double variance)
    {
        ComplexMatrix out(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                out(i, j) = complex_gaussian(rng, variance);
        return out;
    }

    ArrayGeometry ArrayGeometry::ula(Eigen::Index elements, double spacing)
    {
        if (elements < 1)
            throw std::invalid_argument("ArrayGeometry: element count must be >= 1");
        return {ArrayKind::uniform_linear, 1, elements, spacing};
    }

    ArrayGeometry ArrayGeometry::ura(Eigen::Index rows, Eigen::Index cols, double spacing)
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("ArrayGeometry: URA dimensions must be >= 1");
        return {ArrayKind::uniform_rectangular, rows, cols, spacing};
    }

    ArrayGeometry ArrayGeometry::ura_for(Eigen::Index elements, double spacing)
    {
        if (elements < 1)
            throw std::invalid_argument("ArrayGeometry: element count must be >= 1");
        Eigen::Index rows = static_cast<Eigen::Index>(std::sqrt(static_cast<double>(elements)));
        while (rows > 1 && elements % rows != 0)
            --rows;
        return ura(rows, elements / rows, spacing);
    }

    static ComplexVector axis_response(Eigen::Index count, double spacing, double phase_arg)
    {
        ComplexVector a(count);
        const double step = 2.0 * std::numbers::pi * spacing * phase_arg;
        for (Eigen::Index n = 0; n < count; ++n)
            a(n) = std::polar(1.0, step * static_cast<double>(n));
        return a;
    }

    ComplexVector steering_vector(const ArrayGeometry &geometry, double azimuth, double elevation)
    {
        if (geometry.kind == ArrayKind::uniform_linear)
            return axis_response(geometry.cols, geometry.spacing, std::sin(azimuth));

        const ComplexVector row_axis =
            axis_response(geometry.rows, geometry.spacing, std::sin(elevation) * std::cos(azimuth));
        const ComplexVector col_axis =
            axis_response(geometry.cols, geometry.spacing, std::sin(elevation) * std::sin(azimuth));
        return kronecker(row_axis, col_axis);
    }

    ComplexMatrix rayleigh_channel(Eigen::Index rows, Eigen::Index cols, Rng &rng)
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("rayleigh_channel: dimensions must be >= 1");
        return complex_gaussian_matrix(rows, cols, rng);
    }

    namespace
    {
        struct PathAngles
        {
            double azimuth;
            double elevation;
        };

        PathAngles draw_angles(Rng &rng)
        {
            std::uniform_real_distribution<double> az(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
            std::uniform_real_distribution<double> el(0.0, std::numbers::pi / 2.0);
            const double a = az(rng);
            const double e = el(rng);
            return {a, e};
        }

        // sum_r gain_r * left(angles_r) right(angles_r)^H
        ComplexMatrix specular_sum(const ArrayGeometry &left, const ArrayGeometry &right, int paths, Rng &rng)
        {
            ComplexMatrix out = ComplexMatrix::Zero(left.elements(), right.elements());
            for (int r = 0; r < paths; ++r)
            {
                const PathAngles arrival = draw_angles(rng);
                const PathAngles departure = draw_angles(rng);
                const cx gain = complex_gaussian(rng);
                const ComplexVector a = steering_vector(left, arrival.azimuth, arrival.elevation);
                const ComplexVector b = steering_vector(right, departure.azimuth, departure.elevation);
                out.noalias() += gain * a * b.adjoint();
            }
            return out;
        }
    } // namespace

    std::pair<ComplexMatrix, ComplexMatrix> geometric_channel_pair(const ChannelDims &dims, int paths_h, int paths_g,
                                                                   Rng &rng)
    {
        if (paths_h < 1 || paths_g < 1)
            throw std::invalid_argument("geometric_channel_pair: path counts must be >= 1");

        const ArrayGeometry bs = ArrayGeometry::ula(dims.M);
        const ArrayGeometry ut = ArrayGeometry::ula(dims.L);
        const ArrayGeometry irs = ArrayGeometry::ura_for(dims.N);
        const double irs_norm = 1.0 / std::sqrt(static_cast<double>(dims.N));

        ComplexMatrix H = irs_norm * specular_sum(bs, irs, paths_h, rng);
        ComplexMatrix G = irs_norm * specular_sum(irs, ut, paths_g, rng);
        return {std::move(H), std::move(G)};
    }

    ComplexMatrix geometric_direct_channel(const ChannelDims &dims, int paths, Rng &rng)
    {
        if (paths < 1)
            throw std::invalid_argument("geometric_direct_channel: path count must be >= 1");
        return specular_sum(ArrayGeometry::ula(dims.M), ArrayGeometry::ula(dims.L), paths, rng);
    }

    ChannelSet draw_channels(const ChannelDims &dims, ChannelModel model, int paths_h, int paths_g, bool with_direct,
                             int paths_direct, Rng &rng)
    {
        ChannelSet set;
        set.model = model;
        if (model == ChannelModel::rayleigh)
        {
            set.H = rayleigh_channel(dims.M, dims.N, rng);
            set.G = rayleigh_channel(dims.N, dims.L, rng);
            if (with_direct)
                set.H_direct = rayleigh_channel(dims.M, dims.L, rng);
        }
        else
        {
            auto [H, G] = geometric_channel_pair(dims, paths_h, paths_g, rng);
            set.H = std::move(H);
            set.G = std::move(G);
            set.paths_h = paths_h;
            set.paths_g = paths_g;
            if (with_direct)
                set.H_direct = geometric_direct_channel(dims, paths_direct, rng);
        }
        return set;
    }

} // namespace irs
