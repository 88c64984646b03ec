// Copyright 2026 The sslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sslab/numerics.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SparseLU>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace sslab::numerics {

std::vector<Eigen::Index> sorted_order(const CVector& values, double tie_tol) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (n == 0) return idx;
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const double tol = tie_tol * scale;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a).real() > values(b).real(); });
    // Clusters of (numerically) equal real part are ordered by imaginary part.
    size_t start = 0;
    for (size_t k = 1; k <= idx.size(); ++k) {
        if (k == idx.size() || values(idx[k - 1]).real() - values(idx[k]).real() > tol) {
            std::stable_sort(idx.begin() + start, idx.begin() + k, [&](Eigen::Index a, Eigen::Index b) {
                return values(a).imag() > values(b).imag();
            });
            start = k;
        }
    }
    return idx;
}

namespace {

void run_zgeev(Eigen::MatrixXcd a, bool want_left, bool want_right, CVector& w, Eigen::MatrixXcd& vl,
               Eigen::MatrixXcd& vr) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    w.resize(n);
    vl.resize(want_left ? n : 1, want_left ? n : 1);
    vr.resize(want_right ? n : 1, want_right ? n : 1);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', want_right ? 'V' : 'N', n, a.data(), n, w.data(),
                      vl.data(), want_left ? n : 1, vr.data(), want_right ? n : 1);
    if (info > 0)
        throw NumericalError("eig_general: QR iteration failed to converge (" + std::to_string(info) +
                             " eigenvalues unconverged, n = " + std::to_string(n) + ")");
    if (info < 0) throw NumericalError("eig_general: illegal argument " + std::to_string(-info) + " to zgeev");
}

void check_finite(const Eigen::MatrixXcd& m, const char* who) {
    if (!m.allFinite()) throw InvalidParameter(std::string(who) + ": matrix has non-finite entries");
    if (m.rows() != m.cols()) throw InvalidParameter(std::string(who) + ": matrix is not square");
}

}  // namespace

CVector eigenvalues_general(const Eigen::MatrixXcd& m) {
    check_finite(m, "eigenvalues_general");
    if (m.rows() == 0) return CVector();
    CVector w;
    Eigen::MatrixXcd vl, vr;
    run_zgeev(m, false, false, w, vl, vr);
    const auto order = sorted_order(w);
    CVector out(w.size());
    for (size_t k = 0; k < order.size(); ++k) out(k) = w(order[k]);
    return out;
}

GeneralEigenSystem eig_general(const Eigen::MatrixXcd& m) {
    check_finite(m, "eig_general");
    const Eigen::Index n = m.rows();
    GeneralEigenSystem es;
    if (n == 0) return es;
    CVector w;
    Eigen::MatrixXcd vl, vr;
    run_zgeev(m, false, true, w, vl, vr);

    const auto order = sorted_order(w);
    es.eigenvalues.resize(n);
    es.right_vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        es.eigenvalues(k) = w(order[k]);
        es.right_vectors.col(k) = vr.col(order[k]).normalized();
    }

    // Dual basis from the inverse; rows of V^-1 are biorthonormal left vectors.
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(es.right_vectors);
    es.left_vectors = lu.inverse();
    const double norm_v = es.right_vectors.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_inv = es.left_vectors.cwiseAbs().colwise().sum().maxCoeff();
    es.condition_estimate = es.left_vectors.allFinite() ? norm_v * norm_inv
                                                        : std::numeric_limits<double>::infinity();

    if (!es.left_vectors.allFinite()) {
        // Singular eigenvector matrix: fall back to independently computed left vectors.
        run_zgeev(m, true, false, w, vl, vr);
        const auto order_l = sorted_order(w);
        es.left_vectors.resize(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            Eigen::RowVectorXcd row = vl.col(order_l[k]).adjoint();
            const cplx overlap = row * es.right_vectors.col(k);
            if (std::abs(overlap) > 1e-300) row /= overlap;
            es.left_vectors.row(k) = row;
        }
    }
    return es;
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) throw InvalidParameter("kernel_basis: matrix is not square");
    const Eigen::Index n = m.cols();
    if (n == 0) return Eigen::MatrixXcd(0, 0);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < n; ++k)
        if (s(k) <= tol * smax) cols.push_back(k);
    Eigen::MatrixXcd basis(n, static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) basis.col(k) = svd.matrixV().col(cols[k]);
    return basis;
}

SparseEigenResult eigs_shift_invert(const SparseOp& a, cplx shift, const ArnoldiOptions& opt) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw InvalidParameter("eigs_shift_invert: matrix is not square");
    if (opt.n_wanted < 1) throw InvalidParameter("eigs_shift_invert: n_wanted must be >= 1");
    const int n_wanted = static_cast<int>(std::min<Eigen::Index>(opt.n_wanted, n));
    const int m = static_cast<int>(std::min<Eigen::Index>(std::max(opt.krylov_dim, 2 * n_wanted + 10), n));

    SparseOp shifted = a;
    for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= shift;
    shifted.makeCompressed();
    Eigen::SparseLU<SparseOp, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw NumericalError("eigs_shift_invert: factorization failed (shift coincides with an eigenvalue?)");

    // Deterministic start vector.
    CVector start(n);
    for (Eigen::Index i = 0; i < n; ++i) start(i) = cplx(1.0 + 0.1 * std::sin(1.0 + i), 0.05 * std::cos(2.0 + i));
    start.normalize();

    SparseEigenResult res;
    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, m + 1);
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m + 1, m);
        v.col(0) = start;
        int k_eff = m;
        for (int j = 0; j < m; ++j) {
            CVector w = lu.solve(v.col(j));
            for (int pass = 0; pass < 2; ++pass) {
                const CVector c = v.leftCols(j + 1).adjoint() * w;
                w -= v.leftCols(j + 1) * c;
                h.col(j).head(j + 1) += c;
            }
            const double beta = w.norm();
            h(j + 1, j) = beta;
            if (beta < 1e-14 * std::max(1.0, h.col(j).head(j + 1).norm())) {
                k_eff = j + 1;
                break;
            }
            v.col(j + 1) = w / beta;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(h.topLeftCorner(k_eff, k_eff));
        const CVector& ritz = ces.eigenvalues();
        std::vector<int> idx(k_eff);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return std::abs(ritz(x)) > std::abs(ritz(y)); });
        const int n_take = std::min(n_wanted, k_eff);
        const double beta_last = std::abs(h(k_eff, k_eff - 1));
        bool converged = true;
        res.eigenvalues.resize(n_take);
        res.vectors.resize(n, n_take);
        res.residuals.resize(n_take);
        CVector next = CVector::Zero(n);
        for (int q = 0; q < n_take; ++q) {
            const CVector y = ces.eigenvectors().col(idx[q]);
            const double est = beta_last * std::abs(y(k_eff - 1));
            if (est > opt.tol * std::abs(ritz(idx[q]))) converged = false;
            CVector x = v.leftCols(k_eff) * y;
            x.normalize();
            res.eigenvalues(q) = shift + 1.0 / ritz(idx[q]);
            res.vectors.col(q) = x;
            next += x;
        }
        if (converged || k_eff < m || restart == opt.max_restarts) break;
        start = next.normalized();
    }
    for (Eigen::Index q = 0; q < res.eigenvalues.size(); ++q)
        res.residuals(q) = (a * res.vectors.col(q) - res.eigenvalues(q) * res.vectors.col(q)).norm();
    return res;
}

}  // namespace sslab::numerics
