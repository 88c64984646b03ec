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

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

namespace sslab {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseOp = Eigen::SparseMatrix<cplx>;

inline constexpr cplx I_UNIT{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

// Largest N accepted by superoperator construction unless overridden.
inline constexpr int DEFAULT_MAX_SPINS = 200;

struct ModelParams {
    int n_spins = 1;
    double omega = 0.0;
    double theta = 0.0;
    double gamma = 1.0;

    double j() const { return 0.5 * n_spins; }
    int dim() const { return n_spins + 1; }
};

// Throws InvalidParameter when an invariant of ModelParams is broken.
void validate(const ModelParams& p);

// True when theta sits on the strong-symmetry point within `tol`.
bool at_strong_symmetry(const ModelParams& p, double tol = 1e-12);

}  // namespace sslab
