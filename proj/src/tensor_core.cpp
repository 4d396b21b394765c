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

#include "irs/tensor_core.hpp"

#include <stdexcept>
#include <string>

namespace irs
{
    ComplexTensor3::ComplexTensor3(Eigen::Index rows, Eigen::Index cols, Eigen::Index slices)
        : rows_(rows), cols_(cols), slices_(static_cast<std::size_t>(slices), ComplexMatrix::Zero(rows, cols))
    {
    }

    ComplexTensor3::ComplexTensor3(std::vector<ComplexMatrix> slices) : slices_(std::move(slices))
    {
        if (slices_.empty())
            return;
        rows_ = slices_.front().rows();
        cols_ = slices_.front().cols();
        for (const auto &s : slices_)
            if (s.rows() != rows_ || s.cols() != cols_)
                throw std::invalid_argument("ComplexTensor3: frontal slices must share one shape");
    }

    double ComplexTensor3::squared_norm() const
    {
        double acc = 0.0;
        for (const auto &s : slices_)
            acc += s.squaredNorm();
        return acc;
    }

    static void require_same_shape(const ComplexTensor3 &a, const ComplexTensor3 &b)
    {
        if (a.rows() != b.rows() || a.cols() != b.cols() || a.slices() != b.slices())
            throw std::invalid_argument("ComplexTensor3: shape mismatch");
    }

    ComplexTensor3 &ComplexTensor3::operator+=(const ComplexTensor3 &other)
    {
        require_same_shape(*this, other);
        for (std::size_t k = 0; k < slices_.size(); ++k)
            slices_[k] += other.slices_[k];
        return *this;
    }

    ComplexTensor3 &ComplexTensor3::operator-=(const ComplexTensor3 &other)
    {
        require_same_shape(*this, other);
        for (std::size_t k = 0; k < slices_.size(); ++k)
            slices_[k] -= other.slices_[k];
        return *this;
    }

    ComplexTensor3 &ComplexTensor3::operator*=(cx scale)
    {
        for (auto &s : slices_)
            s *= scale;
        return *this;
    }

    ComplexTensor3 operator+(ComplexTensor3 a, const ComplexTensor3 &b) { return a += b; }
    ComplexTensor3 operator-(ComplexTensor3 a, const ComplexTensor3 &b) { return a -= b; }

    ComplexMatrix kronecker(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        const Eigen::Index p = b.rows(), q = b.cols();
        ComplexMatrix out(a.rows() * p, a.cols() * q);
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                out.block(i * p, j * q, p, q) = a(i, j) * b;
        return out;
    }

    ComplexMatrix khatri_rao(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        if (a.cols() != b.cols())
            throw std::invalid_argument("khatri_rao: column counts differ (" + std::to_string(a.cols()) + " vs " +
                                        std::to_string(b.cols()) + ")");
        const Eigen::Index p = b.rows();
        ComplexMatrix out(a.rows() * p, a.cols());
        for (Eigen::Index r = 0; r < a.cols(); ++r)
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                out.col(r).segment(i * p, p) = a(i, r) * b.col(r);
        return out;
    }

    ComplexVector vec(const ComplexMatrix &a)
    {
        return Eigen::Map<const ComplexVector>(a.data(), a.size());
    }

    ComplexMatrix unvec(const ComplexVector &v, Eigen::Index rows, Eigen::Index cols)
    {
        if (v.size() != rows * cols)
            throw std::invalid_argument("unvec: length " + std::to_string(v.size()) + " does not match " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
        return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
    }

    ComplexMatrix diag_row(const ComplexMatrix &a, Eigen::Index k)
    {
        if (k < 0 || k >= a.rows())
            throw std::out_of_range("diag_row: row " + std::to_string(k) + " outside [0, " + std::to_string(a.rows()) +
                                    ")");
        return a.row(k).transpose().asDiagonal();
    }

    ComplexMatrix unfold1(const ComplexTensor3 &t)
    {
        const Eigen::Index T = t.cols();
        ComplexMatrix y(t.rows(), T * t.slices());
        for (Eigen::Index k = 0; k < t.slices(); ++k)
            y.middleCols(k * T, T) = t.slice(k);
        return y;
    }

    ComplexMatrix unfold2(const ComplexTensor3 &t)
    {
        const Eigen::Index M = t.rows();
        ComplexMatrix y(t.cols(), M * t.slices());
        for (Eigen::Index k = 0; k < t.slices(); ++k)
            y.middleCols(k * M, M) = t.slice(k).transpose();
        return y;
    }

    ComplexMatrix unfold3(const ComplexTensor3 &t)
    {
        ComplexMatrix y(t.rows() * t.cols(), t.slices());
        for (Eigen::Index k = 0; k < t.slices(); ++k)
            y.col(k) = vec(t.slice(k));
        return y;
    }

    ComplexTensor3 fold1(const ComplexMatrix &y1, Eigen::Index slices)
    {
        if (slices <= 0 || y1.cols() % slices != 0)
            throw std::invalid_argument("fold1: column count is not a multiple of the slice count");
        const Eigen::Index T = y1.cols() / slices;
        ComplexTensor3 t(y1.rows(), T, slices);
        for (Eigen::Index k = 0; k < slices; ++k)
            t.slice(k) = y1.middleCols(k * T, T);
        return t;
    }

    ComplexTensor3 fold2(const ComplexMatrix &y2, Eigen::Index slices)
    {
        if (slices <= 0 || y2.cols() % slices != 0)
            throw std::invalid_argument("fold2: column count is not a multiple of the slice count");
        const Eigen::Index M = y2.cols() / slices;
        ComplexTensor3 t(M, y2.rows(), slices);
        for (Eigen::Index k = 0; k < slices; ++k)
            t.slice(k) = y2.middleCols(k * M, M).transpose();
        return t;
    }

    ComplexTensor3 fold3(const ComplexMatrix &y3, Eigen::Index rows, Eigen::Index cols)
    {
        if (y3.rows() != rows * cols)
            throw std::invalid_argument("fold3: row count does not match rows*cols");
        ComplexTensor3 t(rows, cols, y3.cols());
        for (Eigen::Index k = 0; k < y3.cols(); ++k)
            t.slice(k) = unvec(y3.col(k), rows, cols);
        return t;
    }

    namespace
    {
        ComplexMatrix pinv_svd(const ComplexMatrix &a, double rel_tol)
        {
            Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const Eigen::VectorXd &sv = svd.singularValues();
            const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;

            ComplexMatrix out = ComplexMatrix::Zero(a.cols(), a.rows());
            if (sigma_max <= 0.0)
                return out;

            const double cutoff = rel_tol * sigma_max;
            Eigen::Index rank = 0;
            while (rank < sv.size() && sv(rank) > cutoff)
                ++rank;
            const Eigen::VectorXd inv = sv.head(rank).cwiseInverse();
            out.noalias() = svd.matrixV().leftCols(rank) * inv.asDiagonal() * svd.matrixU().leftCols(rank).adjoint();
            return out;
        }
    } // namespace

    ComplexMatrix pinv(const ComplexMatrix &a, double rel_tol)
    {
        if (a.size() == 0)
            return ComplexMatrix::Zero(a.cols(), a.rows());
        if (a.rows() < 2 * a.cols())
        {
            if (a.cols() >= 2 * a.rows())
                return pinv(a.adjoint(), rel_tol).adjoint();
            return pinv_svd(a, rel_tol);
        }

        // Tall input: A = QR, pinv(A) = pinv(R) Q^H.
        const Eigen::Index n = a.cols();
        const Eigen::HouseholderQR<ComplexMatrix> qr(a);
        const ComplexMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
        const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(a.rows(), n);
        return pinv_svd(r, rel_tol) * q.adjoint();
    }

} // namespace irs
