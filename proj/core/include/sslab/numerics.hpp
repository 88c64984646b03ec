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

#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sslab/errors.hpp"
#include "sslab/types.hpp"

namespace sslab::numerics {

inline constexpr double DEFECTIVE_THRESHOLD = 1e8;

struct GeneralEigenSystem {
    CVector eigenvalues;
    Eigen::MatrixXcd right_vectors;  // columns
    Eigen::MatrixXcd left_vectors;   // rows, left_vectors * right_vectors = identity
    double condition_estimate = 1.0;

    bool defective() const { return !(condition_estimate <= DEFECTIVE_THRESHOLD); }
};

// Descending real part; eigenvalues whose real parts agree within `tie_tol`
// (relative to the spectral scale) are ordered by descending imaginary part.
std::vector<Eigen::Index> sorted_order(const CVector& values, double tie_tol = 1e-9);

GeneralEigenSystem eig_general(const Eigen::MatrixXcd& m);

// Eigenvalues only, same ordering.
CVector eigenvalues_general(const Eigen::MatrixXcd& m);

// Orthonormal columns spanning {v : |M v| < tol |M|}.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double tol);

struct OdeSettings {
    double step = 1e-3;
    double t_max = 1.0;
    int sample_every = 1;  // keep every k-th step in the path
};

template <class State>
struct OdePath {
    std::vector<double> t;
    std::vector<State> y;
};

namespace detail {
template <class State>
bool all_finite(const State& y) {
    if constexpr (std::is_arithmetic_v<State>) {
        return std::isfinite(y);
    } else {
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (!std::isfinite(std::abs(y(i)))) return false;
        return true;
    }
}
}  // namespace detail

// Classical fixed-step RK4. The last step is shortened to land on t_max.
template <class State, class Field>
OdePath<State> integrate_ode(Field&& f, const State& y0, const OdeSettings& s) {
    if (!(s.step > 0.0)) throw InvalidParameter("integrate_ode: step must be > 0");
    if (!(s.t_max >= 0.0)) throw InvalidParameter("integrate_ode: t_max must be >= 0");
    if (s.sample_every < 1) throw InvalidParameter("integrate_ode: sample_every must be >= 1");
    OdePath<State> path;
    State y = y0;
    double t = 0.0;
    path.t.push_back(t);
    path.y.push_back(y);
    const long n_steps = static_cast<long>(std::ceil(s.t_max / s.step - 1e-9));
    for (long k = 1; k <= n_steps; ++k) {
        const double t_next = std::min(s.t_max, k * s.step);
        const double h = t_next - t;
        const State k1 = f(t, y);
        const State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
        const State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
        const State k4 = f(t + h, State(y + h * k3));
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t_next;
        if (!detail::all_finite(y))
            throw NumericalError("integrate_ode: non-finite state at t = " + std::to_string(t));
        if (k % s.sample_every == 0 || k == n_steps) {
            path.t.push_back(t);
            path.y.push_back(y);
        }
    }
    return path;
}

// Shift-invert Arnoldi on a sparse matrix: eigenpairs closest to `shift`.
struct SparseEigenResult {
    CVector eigenvalues;
    Eigen::MatrixXcd vectors;  // unit-norm right eigenvectors, columns
    Eigen::VectorXd residuals; // |A v - lambda v|
};

struct ArnoldiOptions {
    int n_wanted = 6;
    int krylov_dim = 40;
    int max_restarts = 20;
    double tol = 1e-10;
};

SparseEigenResult eigs_shift_invert(const SparseOp& a, cplx shift, const ArnoldiOptions& opt = {});

}  // namespace sslab::numerics
