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

#include <catch_amalgamated.hpp>

#include "irs/code_design.hpp"
#include "irs/signal_gen.hpp"

#include <cmath>
#include <limits>

using namespace irs;

namespace
{
    double max_abs(const ComplexMatrix &a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

    cx quintuple_sum(const ComplexMatrix &H, const ComplexMatrix &G, const ComplexMatrix &X, const ComplexMatrix &S,
                     const ComplexMatrix &W, Eigen::Index m, Eigen::Index t, Eigen::Index k)
    {
        cx acc = 0.0;
        for (Eigen::Index n = 0; n < H.cols(); ++n)
            for (Eigen::Index l = 0; l < G.cols(); ++l)
                acc += H(m, n) * S(k, n) * G(n, l) * W(k, l) * X(t, l);
        return acc;
    }

    struct Draw
    {
        ComplexMatrix H, G, X, S, W;
    };

    Draw random_draw(Rng &rng, Eigen::Index M, Eigen::Index L, Eigen::Index N, Eigen::Index T, Eigen::Index K)
    {
        return {complex_gaussian_matrix(M, N, rng), complex_gaussian_matrix(N, L, rng),
                complex_gaussian_matrix(T, L, rng), complex_gaussian_matrix(K, N, rng),
                complex_gaussian_matrix(K, L, rng)};
    }
} // namespace

TEST_CASE("psk_point - Constellation")
{
    CHECK(psk_point(0) == cx(1.0));
    CHECK(std::abs(psk_point(4) - cx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(psk_point(8) - cx(-1.0)) < 1e-15);
    CHECK(std::abs(psk_point(16) - psk_point(0)) < 1e-15);
    CHECK(std::abs(psk_point(-1) - psk_point(15)) < 1e-15);
}

TEST_CASE("draw_symbols - Pilots, modulus and uniformity")
{
    Rng rng(31);
    const SymbolMatrix s = draw_symbols(6, 3, rng, true);
    CHECK(s.pilot_row);
    CHECK(max_abs(s.X.row(0) - ComplexMatrix::Ones(1, 3)) == 0.0);
    CHECK((s.indices.row(0).array() == 0).all());
    CHECK((s.X.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
    for (Eigen::Index t = 0; t < 6; ++t)
        for (Eigen::Index l = 0; l < 3; ++l)
            CHECK(s.X(t, l) == psk_point(s.indices(t, l)));

    CHECK_THROWS_AS(draw_symbols(1, 2, rng, true), std::invalid_argument);
    CHECK_NOTHROW(draw_symbols(1, 2, rng, false));

    const int draws = 100000;
    const SymbolMatrix big = draw_symbols(draws, 1, rng, false);
    std::array<int, kPskOrder> counts{};
    for (int i = 0; i < draws; ++i)
        ++counts[static_cast<std::size_t>(big.indices(i, 0))];
    const double p = 1.0 / kPskOrder;
    const double mean = draws * p, sigma = std::sqrt(draws * p * (1.0 - p));
    double chi2 = 0.0;
    for (int c : counts)
    {
        chi2 += (c - mean) * (c - mean) / mean;
        CHECK(std::abs(c - mean) < 4.0 * sigma);
    }
    // 15 degrees of freedom, 0.999 quantile.
    CHECK(chi2 < 37.7);
}

TEST_CASE("paratuck_tensor - Scalar oracle")
{
    Rng rng(32);
    std::uniform_int_distribution<Eigen::Index> dim(1, 6);
    for (int draw = 0; draw < 50; ++draw)
    {
        const Eigen::Index M = dim(rng), L = dim(rng), N = dim(rng), T = dim(rng), K = dim(rng);
        const Draw d = random_draw(rng, M, L, N, T, K);
        const ComplexTensor3 y = paratuck_tensor(d.H, d.G, d.X, d.S, d.W);
        REQUIRE(y.rows() == M);
        REQUIRE(y.cols() == T);
        REQUIRE(y.slices() == K);
        double worst = 0.0;
        for (Eigen::Index k = 0; k < K; ++k)
            for (Eigen::Index t = 0; t < T; ++t)
                for (Eigen::Index m = 0; m < M; ++m)
                    worst = std::max(worst, std::abs(y(m, t, k) - quintuple_sum(d.H, d.G, d.X, d.S, d.W, m, t, k)));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("paratuck_tensor - Single block and linearity")
{
    Rng rng(33);
    const Draw d = random_draw(rng, 3, 2, 4, 5, 1);
    const ComplexTensor3 y = paratuck_tensor(d.H, d.G, d.X, d.S, d.W);
    const ComplexMatrix expect = d.H * diag_row(d.S, 0) * d.G * diag_row(d.W, 0) * d.X.transpose();
    CHECK(max_abs(unfold1(y) - expect) < 1e-12);

    const Draw e = random_draw(rng, 3, 2, 4, 5, 6);
    const cx c(0.7, -0.4);
    const ComplexTensor3 base = paratuck_tensor(e.H, e.G, e.X, e.S, e.W);
    const ComplexTensor3 scaled_x = paratuck_tensor(e.H, e.G, c * e.X, e.S, e.W);
    const ComplexTensor3 scaled_g = paratuck_tensor(e.H, c * e.G, e.X, e.S, e.W);
    ComplexTensor3 ref = base;
    ref *= c;
    CHECK((scaled_x - ref).squared_norm() < 1e-24 * ref.squared_norm());
    CHECK((scaled_g - ref).squared_norm() < 1e-24 * ref.squared_norm());

    CHECK_THROWS_AS(paratuck_tensor(e.H, e.G, e.X, e.S.leftCols(3), e.W), std::invalid_argument);
    CHECK_THROWS_AS(paratuck_tensor(e.H, e.G, e.X, e.S, e.W.topRows(5)), std::invalid_argument);
}

TEST_CASE("parafac_direct_tensor - Oracle and matricisation")
{
    Rng rng(34);
    const ComplexMatrix Hd = complex_gaussian_matrix(4, 1, rng), X1 = complex_gaussian_matrix(3, 1, rng);
    const ComplexMatrix W1 = complex_gaussian_matrix(5, 1, rng);
    const ComplexTensor3 r1 = parafac_direct_tensor(Hd, X1, W1);
    for (Eigen::Index k = 0; k < 5; ++k)
    {
        const Eigen::VectorXd s = Eigen::JacobiSVD<ComplexMatrix>(r1.slice(k)).singularValues();
        CHECK(s(1) < 1e-12 * s(0));
    }

    const ComplexMatrix H = complex_gaussian_matrix(4, 3, rng), X = complex_gaussian_matrix(5, 3, rng);
    const ComplexMatrix W = complex_gaussian_matrix(6, 3, rng);
    const ComplexTensor3 y = parafac_direct_tensor(H, X, W);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < 6; ++k)
        for (Eigen::Index t = 0; t < 5; ++t)
            for (Eigen::Index m = 0; m < 4; ++m)
            {
                cx acc = 0.0;
                for (Eigen::Index l = 0; l < 3; ++l)
                    acc += H(m, l) * W(k, l) * X(t, l);
                worst = std::max(worst, std::abs(acc - y(m, t, k)));
            }
    CHECK(worst < 1e-12);
    CHECK(max_abs(unfold3(y) - khatri_rao(X, H) * W.transpose()) < 1e-12);
    CHECK_THROWS_AS(parafac_direct_tensor(H, X.leftCols(2), W), std::invalid_argument);
}

TEST_CASE("composite_tensor - Direct-link power gap")
{
    Rng rng(35);
    const ChannelDims dims{4, 2, 8};
    const CodingDesign design = build_dft_design(2, 8, 16);

    for (double alpha : {0.0, 10.0, 20.0})
    {
        double mean_ratio_db = 0.0;
        for (int draw = 0; draw < 500; ++draw)
        {
            const ChannelSet ch = draw_channels(dims, ChannelModel::rayleigh, 1, 1, true, 1, rng);
            const SymbolMatrix s = draw_symbols(3, 2, rng, true);
            const CompositeSignal c = composite_tensor(ch, s.X, design.W, design.S, alpha);
            const ComplexTensor3 assisted = paratuck_tensor(ch.H, ch.G, s.X, design.S, design.W);
            const ComplexTensor3 direct = c.tensor - assisted;
            mean_ratio_db += 10.0 * std::log10(direct.squared_norm() / assisted.squared_norm());
        }
        mean_ratio_db /= 500.0;
        CHECK(std::abs(mean_ratio_db + alpha) < 0.1);
    }

    const ChannelSet ch = draw_channels(dims, ChannelModel::rayleigh, 1, 1, true, 1, rng);
    const SymbolMatrix s = draw_symbols(3, 2, rng, true);
    const CompositeSignal inf = composite_tensor(ch, s.X, design.W, design.S, std::numeric_limits<double>::infinity());
    CHECK(inf.direct_scale == 0.0);
    CHECK((inf.tensor - paratuck_tensor(ch.H, ch.G, s.X, design.S, design.W)).squared_norm() == 0.0);

    ChannelSet no_direct = ch;
    no_direct.H_direct.reset();
    CHECK_THROWS_AS(composite_tensor(no_direct, s.X, design.W, design.S, 0.0), std::invalid_argument);
}

TEST_CASE("add_noise - Exact SNR per realisation")
{
    Rng rng(36);
    const Draw d = random_draw(rng, 3, 2, 4, 5, 8);
    const ComplexTensor3 y = paratuck_tensor(d.H, d.G, d.X, d.S, d.W);
    for (double snr : {-5.0, 0.0, 12.5, 30.0})
    {
        const NoisyTensor n = add_noise(y, snr, rng);
        const double realised = 10.0 * std::log10(y.squared_norm() / n.noise.squared_norm());
        CHECK(std::abs(realised - snr) < 1e-9);
        CHECK((n.noisy - n.noise - y).squared_norm() <= 1e-28 * y.squared_norm());
    }

    const NoisyTensor clean = add_noise(y, std::numeric_limits<double>::infinity(), rng);
    CHECK(clean.noise.squared_norm() == 0.0);
    CHECK((clean.noisy - y).squared_norm() == 0.0);

    CHECK_THROWS_AS(add_noise(ComplexTensor3(2, 2, 2), 10.0, rng), std::invalid_argument);

    Rng a(37), b(37);
    CHECK((add_noise(y, 10.0, a).noisy - add_noise(y, 10.0, b).noisy).squared_norm() == 0.0);
}

TEST_CASE("noise_variance - SNR definition")
{
    CHECK(noise_variance(100.0, 10.0, 0.0) == Catch::Approx(10.0));
    CHECK(noise_variance(100.0, 10.0, 10.0) == Catch::Approx(1.0));
    CHECK(noise_variance(100.0, 10.0, 20.0) == Catch::Approx(0.1));
}
