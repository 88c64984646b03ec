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

#include <vector>

#include "sslab/types.hpp"

namespace sslab::spin {

// Collective spin matrices in the S_z basis, ordered m_z = -J ... +J.
struct SpinOperatorSet {
    Operator sx, sy, sz, sp, sm;
};

SpinOperatorSet build_spin_operators(const ModelParams& params);

// D = cos(theta) S- + sin(theta) S+
Operator jump_operator(const ModelParams& params);
Operator jump_operator(const SpinOperatorSet& ops, double theta);

// x-direction ladder operators (S_z +/- i S_y) / 2.
Operator x_ladder_plus(const SpinOperatorSet& ops);
Operator x_ladder_minus(const SpinOperatorSet& ops);

struct EigenPair {
    double value;
    CVector vector;
};

// Ascending eigenvalues, orthonormal eigenvectors with the largest-modulus
// component made real and positive (stable output across runs).
std::vector<EigenPair> hermitian_eigenbasis(const Operator& op, double herm_tol = 1e-10);

// Polar angle measured from the south pole: <s_z> = -cos(Theta).
CVector spin_coherent_state(const ModelParams& params, double Theta, double Phi);

struct SphereField {
    std::vector<double> theta;  // polar grid, [0, pi]
    std::vector<double> phi;    // azimuth grid, [-pi, pi]
    Eigen::MatrixXd values;     // values(i, j) at (theta[i], phi[j])

    // Trapezoidal integral of values * weight over the sphere.
    double integrate(double weight) const;
};

SphereField husimi_q(const Operator& rho, int n_theta, int n_phi);
SphereField husimi_q(const Operator& rho, const std::vector<double>& theta_grid,
                     const std::vector<double>& phi_grid);

// Uniform grid with `n` points including both endpoints.
std::vector<double> linspace(double a, double b, int n);

}  // namespace sslab::spin
