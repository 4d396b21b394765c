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

#ifndef IRS_TENSOR_CORE_HPP
#define IRS_TENSOR_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace irs
{
    using cx = std::complex<double>;

    // Column-major storage, so vec(A) is the plain data() sequence.
    using ComplexMatrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;
    using RealMatrix = Eigen::MatrixXd;

    /// Dense third-order complex tensor stored as K frontal slices of size I x J.
    class ComplexTensor3
    {
    public:
        ComplexTensor3() = default;
        ComplexTensor3(Eigen::Index rows, Eigen::Index cols, Eigen::Index slices);
        explicit ComplexTensor3(std::vector<ComplexMatrix> slices);

        Eigen::Index rows() const { return rows_; }
        Eigen::Index cols() const { return cols_; }
        Eigen::Index slices() const { return static_cast<Eigen::Index>(slices_.size()); }

        const ComplexMatrix &slice(Eigen::Index k) const { return slices_.at(static_cast<std::size_t>(k)); }
        ComplexMatrix &slice(Eigen::Index k) { return slices_.at(static_cast<std::size_t>(k)); }

        cx operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const { return slice(k)(i, j); }
        cx &operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) { return slice(k)(i, j); }

        // Squared Frobenius norm over all entries.
        double squared_norm() const;

        ComplexTensor3 &operator+=(const ComplexTensor3 &other);
        ComplexTensor3 &operator-=(const ComplexTensor3 &other);
        ComplexTensor3 &operator*=(cx scale);

    private:
        Eigen::Index rows_ = 0;
        Eigen::Index cols_ = 0;
        std::vector<ComplexMatrix> slices_;
    };

    ComplexTensor3 operator+(ComplexTensor3 a, const ComplexTensor3 &b);
    ComplexTensor3 operator-(ComplexTensor3 a, const ComplexTensor3 &b);

    ComplexMatrix kronecker(const ComplexMatrix &a, const ComplexMatrix &b);

    /// Column-wise Kronecker product. Throws std::invalid_argument on a column-count mismatch.
    ComplexMatrix khatri_rao(const ComplexMatrix &a, const ComplexMatrix &b);

    ComplexVector vec(const ComplexMatrix &a);
    ComplexMatrix unvec(const ComplexVector &v, Eigen::Index rows, Eigen::Index cols);

    /// D_k(A): diagonal matrix holding row k (zero-based) of A.
    ComplexMatrix diag_row(const ComplexMatrix &a, Eigen::Index k);

    // Unfoldings of an M x T x K tensor:
    //   unfold1 -> M x TK,  [Y[1] | ... | Y[K]]
    //   unfold2 -> T x MK,  [Y[1]^T | ... | Y[K]^T]
    //   unfold3 -> TM x K,  [vec(Y[1]), ..., vec(Y[K])]
    ComplexMatrix unfold1(const ComplexTensor3 &t);
    ComplexMatrix unfold2(const ComplexTensor3 &t);
    ComplexMatrix unfold3(const ComplexTensor3 &t);

    ComplexTensor3 fold1(const ComplexMatrix &y1, Eigen::Index slices);
    ComplexTensor3 fold2(const ComplexMatrix &y2, Eigen::Index slices);
    ComplexTensor3 fold3(const ComplexMatrix &y3, Eigen::Index rows, Eigen::Index cols);

    inline constexpr double kDefaultPinvTolerance = 1e-12;

    /// Moore-Penrose pseudo-inverse from a thin SVD. Singular values below
    /// rel_tol * sigma_max are dropped, so a zero matrix maps to a zero matrix.
    ComplexMatrix pinv(const ComplexMatrix &a, double rel_tol = kDefaultPinvTolerance);

} // namespace irs

#endif
