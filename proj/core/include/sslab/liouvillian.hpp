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

#include <string>
#include <utility>
#include <vector>

#include "sslab/numerics.hpp"
#include "sslab/spin_algebra.hpp"
#include "sslab/types.hpp"

namespace sslab::liouvillian {

// Column stacking: vec(X)[i + n*j] = X(i, j), so vec(A X B) = (B^T kron A) vec(X).
CVector vec(const Operator& x);
Operator unvec(const CVector& v, Eigen::Index n);

// Generator acting on column-stacked density matrices.
struct Superoperator {
    ModelParams params;
    SparseOp matrix;

    Eigen::Index hilbert_dim() const { return params.dim(); }
    Eigen::Index dim() const { return matrix.rows(); }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
    Operator apply(const Operator& rho) const;
};

struct BuildOptions {
    int max_spins = DEFAULT_MAX_SPINS;
};

// A jump channel contributes rate * (w X rho X^dag - {X^dag X, rho}/2) where w
// is the counting weight (1 for the physical generator, e^s when tilted).
struct JumpChannel {
    double rate;
    Operator op;
};

SparseOp lindblad_generator(const Operator& hamiltonian, const std::vector<JumpChannel>& jumps,
                            double jump_weight = 1.0);

Superoperator build_liouvillian(const ModelParams& params, const BuildOptions& opt = {});

// RK4 propagation of rho0, sampled at the (ascending, nonnegative) times in t_grid.
std::vector<Operator> evolve_density(const Superoperator& l, const Operator& rho0,
                                     const std::vector<double>& t_grid, double step = 1e-3);

struct LiouvillianSpectrum {
    Eigen::Index hilbert_dim = 0;
    CVector eigenvalues;
    Eigen::MatrixXcd right;  // column mu: vec(rho_R,mu)
    Eigen::MatrixXcd left;   // row mu: w_mu with Tr[rho_L,mu X] = w_mu . vec(X)
    double condition_estimate = 1.0;
    double zero_tolerance = 1e-9;
    bool defective = false;
    std::vector<Eigen::Index> steady;     // |lambda| <= tolerance
    std::vector<Eigen::Index> zero_real;  // |Re lambda| <= tolerance
    std::vector<std::string> warnings;

    Operator right_matrix(Eigen::Index mu) const;
    Operator left_matrix(Eigen::Index mu) const;
};

LiouvillianSpectrum liouvillian_spectrum(const Superoperator& l, double eps0 = 1e-9);

struct AdrResult {
    double value = 0.0;
    bool degenerate = false;  // no eigenvalue outside the steady branch
    cplx slowest{0.0, 0.0};
};

AdrResult adr(const LiouvillianSpectrum& spectrum);

// Slowest-mode search by shift-invert Arnoldi on the sparse generator, for
// sizes beyond dense diagonalization. Shifts walk up the imaginary axis so
// that weakly damped oscillating modes are found as well.
struct SparseAdrOptions {
    double real_offset = 0.05;
    double imag_step = 0.25;
    double imag_max = -1.0;  // negative: use omega + gamma
    int modes_per_shift = 6;
    double eps0 = 1e-9;
};

AdrResult adr_sparse(const Superoperator& l, const SparseAdrOptions& opt = {});

Operator steady_state_projection(const LiouvillianSpectrum& spectrum, const Operator& rho0);

// Unique steady state by sparse LU (trace condition replaces one equation).
Operator steady_state(const Superoperator& l);

struct RwaParams {
    double gamma_theta;
    double chi_theta;
};

RwaParams rwa_params(const ModelParams& params);

// lambda^{sign}_{q,k}; sign is +1 or -1.
cplx rwa_eigenvalue(const ModelParams& params, int q, int k, int sign);

// Generator with the counter-rotating dissipative terms removed.
Superoperator build_rwa_liouvillian(const ModelParams& params, const BuildOptions& opt = {});

// (S_x^+)^q rho_inf, scaled to the Frobenius norm of rho_inf = I/(N+1).
Operator rwa_eigenstate(const ModelParams& params, int q);

struct StrongSymmetryReport {
    double commutator_h = 0.0;
    double commutator_d = 0.0;
    bool is_symmetry = false;
    bool trivial = false;
};

StrongSymmetryReport check_strong_symmetry(const Operator& a, const ModelParams& params);

struct DynamicalSymmetryReport {
    double hamiltonian_residual = 0.0;  // |[H,A] - Lambda A|
    double commutator_d = 0.0;
    double commutator_d_dag = 0.0;
    bool jump_checked = true;
    bool holds = false;
    bool trivial = false;
};

DynamicalSymmetryReport check_dynamical_symmetry(const Operator& a, cplx big_lambda, const ModelParams& params,
                                                 bool include_jump = true);

double trace_distance(const Operator& a, const Operator& b);

}  // namespace sslab::liouvillian
