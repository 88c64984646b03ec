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

#include "sslab/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "sslab/errors.hpp"

namespace sslab {

void validate(const ModelParams& p) {
    if (p.n_spins < 1) throw InvalidParameter("n_spins must be >= 1, got " + std::to_string(p.n_spins));
    if (!std::isfinite(p.omega) || p.omega < 0.0) throw InvalidParameter("omega must be finite and >= 0");
    if (!std::isfinite(p.theta) || p.theta < 0.0 || p.theta > 0.5 * PI + 1e-15)
        throw InvalidParameter("theta must lie in [0, pi/2]");
    if (!std::isfinite(p.gamma) || p.gamma <= 0.0) throw InvalidParameter("gamma must be > 0");
}

bool at_strong_symmetry(const ModelParams& p, double tol) { return std::abs(p.theta - 0.25 * PI) <= tol; }

namespace spin {

SpinOperatorSet build_spin_operators(const ModelParams& params) {
    validate(params);
    const int n = params.dim();
    const double j = params.j();
    SpinOperatorSet ops;
    ops.sz = Operator::Zero(n, n);
    ops.sp = Operator::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double m = -j + i;
        ops.sz(i, i) = m;
        if (i + 1 < n) ops.sp(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    ops.sm = ops.sp.adjoint();
    ops.sx = 0.5 * (ops.sp + ops.sm);
    ops.sy = cplx(0.0, -0.5) * (ops.sp - ops.sm);
    return ops;
}

Operator jump_operator(const SpinOperatorSet& ops, double theta) {
    return std::cos(theta) * ops.sm + std::sin(theta) * ops.sp;
}

Operator jump_operator(const ModelParams& params) {
    return jump_operator(build_spin_operators(params), params.theta);
}

Operator x_ladder_plus(const SpinOperatorSet& ops) { return 0.5 * (ops.sz + I_UNIT * ops.sy); }
Operator x_ladder_minus(const SpinOperatorSet& ops) { return 0.5 * (ops.sz - I_UNIT * ops.sy); }

std::vector<EigenPair> hermitian_eigenbasis(const Operator& op, double herm_tol) {
    if (op.rows() != op.cols()) throw ContractViolation("hermitian_eigenbasis: operator is not square");
    const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
    const double asym = (op - op.adjoint()).cwiseAbs().maxCoeff();
    if (asym > herm_tol * scale)
        throw ContractViolation("hermitian_eigenbasis: operator is not Hermitian (deviation " +
                                std::to_string(asym) + ")");
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (op + op.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigenbasis: eigensolver failed");
    std::vector<EigenPair> out;
    out.reserve(op.rows());
    for (Eigen::Index k = 0; k < op.rows(); ++k) {
        CVector v = es.eigenvectors().col(k);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        v *= std::conj(v(imax)) / std::abs(v(imax));
        out.push_back({es.eigenvalues()(k), v});
    }
    return out;
}

CVector spin_coherent_state(const ModelParams& params, double Theta, double Phi) {
    validate(params);
    if (!(Theta >= 0.0 && Theta <= PI)) throw InvalidParameter("spin_coherent_state: Theta outside [0, pi]");
    const int n = params.dim();
    const int two_j = params.n_spins;
    const double s = std::sin(0.5 * Theta);
    const double c = std::cos(0.5 * Theta);
    CVector psi = CVector::Zero(n);
    for (int i = 0; i < n; ++i) {
        // amplitude sqrt(binom(2J, i)) s^i c^(2J-i), computed in log space for large N
        if ((s == 0.0 && i > 0) || (c == 0.0 && i < two_j)) continue;
        double log_amp = 0.5 * (std::lgamma(two_j + 1.0) - std::lgamma(i + 1.0) - std::lgamma(two_j - i + 1.0));
        if (i > 0) log_amp += i * std::log(s);
        if (i < two_j) log_amp += (two_j - i) * std::log(c);
        psi(i) = std::exp(log_amp) * std::polar(1.0, -static_cast<double>(i) * Phi);
    }
    return psi / psi.norm();
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw InvalidParameter("linspace: n must be >= 1");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
    return out;
}

double SphereField::integrate(double weight) const {
    auto trap_weights = [](const std::vector<double>& x) {
        std::vector<double> w(x.size(), 0.0);
        for (size_t i = 0; i + 1 < x.size(); ++i) {
            const double h = 0.5 * (x[i + 1] - x[i]);
            w[i] += h;
            w[i + 1] += h;
        }
        return w;
    };
    const auto wt = trap_weights(theta);
    const auto wp = trap_weights(phi);
    double total = 0.0;
    for (size_t i = 0; i < theta.size(); ++i)
        for (size_t k = 0; k < phi.size(); ++k) total += wt[i] * wp[k] * std::sin(theta[i]) * values(i, k);
    return weight * total;
}

static void check_density_matrix(const Operator& rho) {
    if (rho.rows() != rho.cols()) throw ContractViolation("density matrix is not square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw ContractViolation("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-8) throw ContractViolation("density matrix does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) throw ContractViolation("density matrix is not positive");
}

SphereField husimi_q(const Operator& rho, const std::vector<double>& theta_grid,
                     const std::vector<double>& phi_grid) {
    check_density_matrix(rho);
    ModelParams p;
    p.n_spins = static_cast<int>(rho.rows()) - 1;
    SphereField f;
    f.theta = theta_grid;
    f.phi = phi_grid;
    f.values.resize(theta_grid.size(), phi_grid.size());
    for (size_t i = 0; i < theta_grid.size(); ++i)
        for (size_t k = 0; k < phi_grid.size(); ++k) {
            const CVector psi = spin_coherent_state(p, theta_grid[i], phi_grid[k]);
            f.values(i, k) = std::max(0.0, psi.dot(rho * psi).real());
        }
    return f;
}

SphereField husimi_q(const Operator& rho, int n_theta, int n_phi) {
    return husimi_q(rho, linspace(0.0, PI, n_theta), linspace(-PI, PI, n_phi));
}

}  // namespace spin
}  // namespace sslab
