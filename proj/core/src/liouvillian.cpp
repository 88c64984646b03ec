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

#include "sslab/liouvillian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "sslab/errors.hpp"

namespace sslab::liouvillian {

CVector vec(const Operator& x) { return Eigen::Map<const CVector>(x.data(), x.size()); }

Operator unvec(const CVector& v, Eigen::Index n) {
    if (v.size() != n * n) throw InvalidParameter("unvec: length is not n^2");
    return Eigen::Map<const Operator>(v.data(), n, n);
}

Operator Superoperator::apply(const Operator& rho) const {
    return unvec(matrix * vec(rho), hilbert_dim());
}

namespace {

// |A^-1 b| above this for unit b marks the bordered generator as singular.
constexpr double SINGULAR_PROBE_LIMIT = 1e10;

SparseOp to_sparse(const Operator& a) { return a.sparseView(1.0, 1e-300); }

SparseOp sparse_identity(Eigen::Index n) {
    SparseOp id(n, n);
    id.setIdentity();
    return id;
}

void check_size(const ModelParams& params, const BuildOptions& opt) {
    validate(params);
    if (params.n_spins > opt.max_spins)
        throw InvalidParameter("n_spins = " + std::to_string(params.n_spins) + " exceeds the configured maximum " +
                               std::to_string(opt.max_spins));
}

double frob(const Operator& a) { return a.norm(); }

}  // namespace

SparseOp lindblad_generator(const Operator& hamiltonian, const std::vector<JumpChannel>& jumps,
                            double jump_weight) {
    const Eigen::Index n = hamiltonian.rows();
    const SparseOp id = sparse_identity(n);
    const SparseOp h = to_sparse(hamiltonian);
    SparseOp gen = cplx(0.0, -1.0) * (SparseOp(Eigen::kroneckerProduct(id, h)) -
                                       SparseOp(Eigen::kroneckerProduct(SparseOp(h.transpose()), id)));
    for (const auto& ch : jumps) {
        const SparseOp x = to_sparse(ch.op);
        const SparseOp xdx = to_sparse(ch.op.adjoint() * ch.op);
        SparseOp term = (jump_weight * ch.rate) * SparseOp(Eigen::kroneckerProduct(SparseOp(x.conjugate()), x));
        term -= (0.5 * ch.rate) * SparseOp(Eigen::kroneckerProduct(id, xdx));
        term -= (0.5 * ch.rate) * SparseOp(Eigen::kroneckerProduct(SparseOp(xdx.transpose()), id));
        gen += term;
    }
    gen.prune(cplx(0.0, 0.0), 1e-300);
    gen.makeCompressed();
    return gen;
}

Superoperator build_liouvillian(const ModelParams& params, const BuildOptions& opt) {
    check_size(params, opt);
    const auto ops = spin::build_spin_operators(params);
    const Operator d = spin::jump_operator(ops, params.theta);
    Superoperator l;
    l.params = params;
    l.matrix = lindblad_generator(params.omega * ops.sx, {{params.gamma / params.j(), d}});
    return l;
}

std::vector<Operator> evolve_density(const Superoperator& l, const Operator& rho0,
                                     const std::vector<double>& t_grid, double step) {
    const Eigen::Index n = l.hilbert_dim();
    if (rho0.rows() != n || rho0.cols() != n) throw ContractViolation("evolve_density: rho0 has the wrong dimension");
    if (std::abs(rho0.trace() - 1.0) > 1e-8) throw ContractViolation("evolve_density: rho0 must have unit trace");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw ContractViolation("evolve_density: rho0 must be Hermitian");
    if (!(step > 0.0)) throw InvalidParameter("evolve_density: step must be > 0");
    std::vector<Operator> out;
    out.reserve(t_grid.size());
    CVector y = vec(rho0);
    double t = 0.0;
    auto f = [&](double, const CVector& v) -> CVector { return l.matrix * v; };
    for (double target : t_grid) {
        if (target < t - 1e-12) throw InvalidParameter("evolve_density: t_grid must be ascending and >= 0");
        const double span = target - t;
        if (span > 0.0) {
            numerics::OdeSettings s;
            s.t_max = span;
            s.step = span / std::ceil(span / step - 1e-9);
            s.sample_every = std::numeric_limits<int>::max();
            auto path = numerics::integrate_ode(f, y, s);
            y = path.y.back();
        }
        t = std::max(t, target);
        out.push_back(unvec(y, n));
    }
    return out;
}

Operator LiouvillianSpectrum::right_matrix(Eigen::Index mu) const { return unvec(right.col(mu), hilbert_dim); }

Operator LiouvillianSpectrum::left_matrix(Eigen::Index mu) const {
    return unvec(left.row(mu).transpose(), hilbert_dim).transpose();
}

LiouvillianSpectrum liouvillian_spectrum(const Superoperator& l, double eps0) {
    if (!(eps0 > 0.0)) throw InvalidParameter("liouvillian_spectrum: eps0 must be > 0");
    auto es = numerics::eig_general(l.dense());
    LiouvillianSpectrum sp;
    sp.hilbert_dim = l.hilbert_dim();
    sp.eigenvalues = std::move(es.eigenvalues);
    sp.right = std::move(es.right_vectors);
    sp.left = std::move(es.left_vectors);
    sp.condition_estimate = es.condition_estimate;
    sp.zero_tolerance = eps0 * l.params.gamma;
    sp.defective = !(es.condition_estimate <= numerics::DEFECTIVE_THRESHOLD);
    for (Eigen::Index mu = 0; mu < sp.eigenvalues.size(); ++mu) {
        if (std::abs(sp.eigenvalues(mu)) <= sp.zero_tolerance) sp.steady.push_back(mu);
        if (std::abs(sp.eigenvalues(mu).real()) <= sp.zero_tolerance) sp.zero_real.push_back(mu);
    }
    if (sp.defective) {
        sp.warnings.push_back("eigenvector matrix ill conditioned (condition estimate " +
                              std::to_string(sp.condition_estimate) +
                              "); near an exceptional point, zero-real-part classification suppressed");
        sp.zero_real.clear();
    }
    return sp;
}

AdrResult adr(const LiouvillianSpectrum& spectrum) {
    // lambda_0 is one eigenvalue of the steady branch; every other eigenvalue,
    // including further zeros, competes for lambda_1.
    AdrResult r;
    r.degenerate = true;
    bool skipped = false;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index mu = 0; mu < spectrum.eigenvalues.size(); ++mu) {
        if (!skipped && std::abs(spectrum.eigenvalues(mu)) <= spectrum.zero_tolerance) {
            skipped = true;
            continue;
        }
        if (spectrum.eigenvalues(mu).real() > best) {
            best = spectrum.eigenvalues(mu).real();
            r.slowest = spectrum.eigenvalues(mu);
            r.degenerate = false;
        }
    }
    r.value = r.degenerate ? 0.0 : std::abs(best);
    return r;
}

AdrResult adr_sparse(const Superoperator& l, const SparseAdrOptions& opt) {
    const double imag_max = opt.imag_max >= 0.0 ? opt.imag_max : l.params.omega + l.params.gamma;
    if (!(opt.imag_step > 0.0)) throw InvalidParameter("adr_sparse: imag_step must be > 0");
    numerics::ArnoldiOptions ao;
    ao.n_wanted = opt.modes_per_shift;
    const double tol = opt.eps0 * l.params.gamma;
    AdrResult r;
    // Krylov methods do not resolve the multiplicity of lambda = 0; a
    // degenerate kernel is detected by the steady-state solve instead.
    try {
        steady_state(l);
    } catch (const SingularityError&) {
        return r;
    }
    r.degenerate = true;
    double best = -std::numeric_limits<double>::infinity();
    const int n_shift = static_cast<int>(std::floor(imag_max / opt.imag_step + 1e-9)) + 1;
    for (int k = 0; k < n_shift; ++k) {
        const cplx shift(opt.real_offset * l.params.gamma, k * opt.imag_step);
        const auto res = numerics::eigs_shift_invert(l.matrix, shift, ao);
        for (Eigen::Index q = 0; q < res.eigenvalues.size(); ++q) {
            const cplx lam = res.eigenvalues(q);
            if (res.residuals(q) > 1e-6 * std::max(1.0, std::abs(lam))) continue;
            if (std::abs(lam) <= tol) continue;
            if (lam.real() > best) {
                best = lam.real();
                r.slowest = lam;
                r.degenerate = false;
            }
        }
    }
    r.value = r.degenerate ? 0.0 : std::abs(best);
    return r;
}

Operator steady_state_projection(const LiouvillianSpectrum& spectrum, const Operator& rho0) {
    const Eigen::Index n = spectrum.hilbert_dim;
    if (rho0.rows() != n || rho0.cols() != n)
        throw ContractViolation("steady_state_projection: rho0 has the wrong dimension");
    if (std::abs(rho0.trace() - 1.0) > 1e-8 || (rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw ContractViolation("steady_state_projection: rho0 is not a density matrix");
    if (spectrum.defective)
        throw DefectiveSpectrum("steady_state_projection: spectrum flagged defective; steady branch not resolved");
    if (spectrum.steady.empty()) throw NumericalError("steady_state_projection: no steady-state eigenvalue found");
    const CVector x = vec(rho0);
    CVector acc = CVector::Zero(n * n);
    for (Eigen::Index mu : spectrum.steady) acc += (spectrum.left.row(mu) * x)(0) * spectrum.right.col(mu);
    Operator rho = unvec(acc, n);
    rho = 0.5 * (rho + rho.adjoint());
    return rho / rho.trace().real();
}

Operator steady_state(const Superoperator& l) {
    const Eigen::Index n = l.hilbert_dim();
    const Eigen::Index nn = n * n;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(l.matrix.nonZeros() + n);
    for (int c = 0; c < l.matrix.outerSize(); ++c)
        for (SparseOp::InnerIterator it(l.matrix, c); it; ++it)
            if (it.row() != 0) trip.emplace_back(static_cast<int>(it.row()), c, it.value());
    for (Eigen::Index i = 0; i < n; ++i) trip.emplace_back(0, static_cast<int>(i + n * i), cplx(1.0, 0.0));
    SparseOp a(nn, nn);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    Eigen::SparseLU<SparseOp, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw SingularityError("steady_state: generator kernel is not one-dimensional (factorization failed)");
    CVector rhs = CVector::Zero(nn);
    rhs(0) = 1.0;
    const CVector x = lu.solve(rhs);
    if (!x.allFinite()) throw SingularityError("steady_state: non-finite solution; steady state not unique");
    // A kernel of dimension > 1 leaves the bordered system singular; probe the
    // inverse with a fixed unit vector.
    CVector probe(nn);
    for (Eigen::Index i = 0; i < nn; ++i) probe(i) = cplx(std::sin(1.0 + i), std::cos(2.0 + 3.0 * i));
    probe /= probe.norm();
    const CVector y = lu.solve(probe);
    if (!y.allFinite() || y.norm() > SINGULAR_PROBE_LIMIT)
        throw SingularityError("steady_state: bordered generator is numerically singular; steady state not unique");
    const double scale = std::max(1.0, l.matrix.cwiseAbs().sum() / static_cast<double>(nn));
    const double resid = (l.matrix * x).norm();
    if (resid > 1e-8 * scale * std::max(1.0, x.norm()))
        throw SingularityError("steady_state: residual " + std::to_string(resid) + "; steady state not unique");
    Operator rho = unvec(x, n);
    rho = 0.5 * (rho + rho.adjoint());
    return rho / rho.trace().real();
}

RwaParams rwa_params(const ModelParams& params) {
    const double c = std::cos(params.theta);
    const double s = std::sin(params.theta);
    return {params.gamma * (c + s) * (c + s), params.gamma * (c - s) * (c - s)};
}

cplx rwa_eigenvalue(const ModelParams& params, int q, int k, int sign) {
    validate(params);
    const int two_j = params.n_spins;
    if (q < 0 || q > two_j) throw InvalidParameter("rwa_eigenvalue: q outside [0, 2J]");
    if (k < 0 || k > two_j - q) throw InvalidParameter("rwa_eigenvalue: k outside [0, 2J - q]");
    if (sign != 1 && sign != -1) throw InvalidParameter("rwa_eigenvalue: sign must be +1 or -1");
    const auto rp = rwa_params(params);
    const double j = params.j();
    const double re = -(rp.gamma_theta / (2.0 * j)) * q * q - (rp.chi_theta / (4.0 * j)) * (q + k * (1.0 + k + 2.0 * q));
    return {re, sign * q * params.omega};
}

Superoperator build_rwa_liouvillian(const ModelParams& params, const BuildOptions& opt) {
    check_size(params, opt);
    const auto ops = spin::build_spin_operators(params);
    const auto rp = rwa_params(params);
    const double j = params.j();
    Superoperator l;
    l.params = params;
    l.matrix = lindblad_generator(params.omega * ops.sx, {{rp.gamma_theta / j, ops.sx},
                                                          {rp.chi_theta / j, spin::x_ladder_plus(ops)},
                                                          {rp.chi_theta / j, spin::x_ladder_minus(ops)}});
    return l;
}

Operator rwa_eigenstate(const ModelParams& params, int q) {
    validate(params);
    if (q < 0) throw InvalidParameter("rwa_eigenstate: q must be >= 0");
    if (q > params.n_spins) throw InvalidParameter("rwa_eigenstate: (S_x^+)^q vanishes for q > 2J");
    const auto ops = spin::build_spin_operators(params);
    const Eigen::Index n = params.dim();
    const Operator rho_inf = Operator::Identity(n, n) / static_cast<double>(n);
    Operator x = rho_inf;
    const Operator up = spin::x_ladder_plus(ops);
    for (int i = 0; i < q; ++i) x = up * x;
    const double nx = x.norm();
    if (nx == 0.0) throw NumericalError("rwa_eigenstate: ladder power vanished");
    return x * (rho_inf.norm() / nx);
}

StrongSymmetryReport check_strong_symmetry(const Operator& a, const ModelParams& params) {
    validate(params);
    if (a.rows() != params.dim() || a.cols() != params.dim())
        throw ContractViolation("check_strong_symmetry: operator has the wrong dimension");
    const auto ops = spin::build_spin_operators(params);
    const Operator h = params.omega * ops.sx;
    const Operator d = spin::jump_operator(ops, params.theta);
    StrongSymmetryReport r;
    r.commutator_h = frob(h * a - a * h);
    r.commutator_d = frob(d * a - a * d);
    const double na = frob(a);
    if (na == 0.0) {
        r.trivial = true;
        r.is_symmetry = true;
        return r;
    }
    r.is_symmetry = r.commutator_h < 1e-10 * na && r.commutator_d < 1e-10 * na;
    return r;
}

DynamicalSymmetryReport check_dynamical_symmetry(const Operator& a, cplx big_lambda, const ModelParams& params,
                                                 bool include_jump) {
    validate(params);
    if (a.rows() != params.dim() || a.cols() != params.dim())
        throw ContractViolation("check_dynamical_symmetry: operator has the wrong dimension");
    const auto ops = spin::build_spin_operators(params);
    const Operator h = params.omega * ops.sx;
    const Operator d = spin::jump_operator(ops, params.theta);
    DynamicalSymmetryReport r;
    r.jump_checked = include_jump;
    r.hamiltonian_residual = frob(h * a - a * h - big_lambda * a);
    if (include_jump) {
        r.commutator_d = frob(d * a - a * d);
        const Operator dd = d.adjoint();
        r.commutator_d_dag = frob(dd * a - a * dd);
    }
    const double na = frob(a);
    if (na == 0.0) {
        r.trivial = true;
        r.holds = true;
        return r;
    }
    const double tol = 1e-10 * na * std::max({1.0, std::abs(big_lambda), params.omega});
    r.holds = r.hamiltonian_residual < tol && (!include_jump || (r.commutator_d < tol && r.commutator_d_dag < tol));
    return r;
}

double trace_distance(const Operator& a, const Operator& b) {
    const Operator d = a - b;
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace sslab::liouvillian
