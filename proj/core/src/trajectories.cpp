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

#include "sslab/trajectories.hpp"

#include <algorithm>
#include <cmath>

#include "sslab/errors.hpp"
#include "sslab/parallel.hpp"
#include "sslab/random.hpp"

namespace sslab::trajectories {

namespace {

using RowSparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

long steps_for(double span, double dt) { return static_cast<long>(std::llround(span / dt)); }

}  // namespace

double sector_jump_rate(double m, const ModelParams& params) { return 2.0 * params.gamma * m * m / params.j(); }

TrajectoryRecord run_trajectory(const ModelParams& params, const CVector& psi0, double t_max, std::uint64_t seed,
                                const TrajectoryOptions& opt) {
    validate(params);
    const Eigen::Index n = params.dim();
    if (psi0.size() != n) throw ContractViolation("run_trajectory: psi0 has the wrong dimension");
    if (std::abs(psi0.norm() - 1.0) > 1e-8) throw ContractViolation("run_trajectory: psi0 must be normalized");
    if (!(opt.dt > 0.0)) throw InvalidParameter("run_trajectory: dt must be > 0");
    if (!(t_max >= 0.0)) throw InvalidParameter("run_trajectory: t_max must be >= 0");
    const double dt = opt.dt;
    const long n_steps = steps_for(t_max, dt);
    if (std::abs(n_steps * dt - t_max) > 1e-9 * std::max(1.0, t_max))
        throw InvalidParameter("run_trajectory: t_max must be a multiple of dt");
    long sample_every = 0;
    if (opt.sample_dt > 0.0) {
        sample_every = steps_for(opt.sample_dt, dt);
        if (sample_every < 1 || std::abs(sample_every * dt - opt.sample_dt) > 1e-9 * opt.sample_dt)
            throw InvalidParameter("run_trajectory: sample_dt must be a positive multiple of dt");
    }

    const auto ops = spin::build_spin_operators(params);
    const Operator d_dense = spin::jump_operator(ops, params.theta);
    const double rate = params.gamma / params.j();
    const Operator h_eff = params.omega * ops.sx - cplx(0.0, 0.5 * rate) * (d_dense.adjoint() * d_dense);
    const RowSparse d = d_dense.sparseView(1.0, 1e-300);
    const RowSparse step =
        (Operator::Identity(n, n) - cplx(0.0, dt) * h_eff).sparseView(1.0, 1e-300);

    Philox4x32 rng(seed);
    TrajectoryRecord rec;
    rec.seed = seed;
    CVector psi = psi0;
    CVector dpsi(n);
    CVector next(n);
    auto sample = [&](double t) {
        rec.sample_times.push_back(t);
        rec.sampled_states.push_back(psi);
    };
    sample(0.0);
    for (long k = 1; k <= n_steps; ++k) {
        dpsi.noalias() = d * psi;
        const double p = rate * dpsi.squaredNorm() * dt;
        if (p >= opt.max_jump_probability) {
            const double suggested = 0.5 * opt.max_jump_probability * dt / p;
            throw StepSizeError("run_trajectory: jump probability per step " + std::to_string(p) +
                                    " exceeds the guard; use dt <= " + std::to_string(suggested),
                                suggested);
        }
        const double r = rng.uniform01();
        if (r < p) {
            psi = dpsi / dpsi.norm();
            rec.jump_times.push_back(k * dt);
        } else {
            next.noalias() = step * psi;
            psi = next / next.norm();
        }
        if (!std::isfinite(psi.squaredNorm()))
            throw NumericalError("run_trajectory: state became non-finite at t = " + std::to_string(k * dt));
        if (sample_every > 0 ? (k % sample_every == 0) : (k == n_steps)) sample(k * dt);
    }
    if (sample_every > 0 && n_steps % sample_every != 0) sample(n_steps * dt);
    rec.n_jumps = static_cast<long>(rec.jump_times.size());
    return rec;
}

CVector sample_initial_state(const Operator& rho0, long index, long n_traj) {
    if (rho0.rows() != rho0.cols()) throw ContractViolation("sample_initial_state: rho0 not square");
    if (std::abs(rho0.trace() - 1.0) > 1e-8 || (rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw ContractViolation("sample_initial_state: rho0 is not a density matrix");
    if (n_traj < 1 || index < 0 || index >= n_traj) throw InvalidParameter("sample_initial_state: bad index");
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (rho0 + rho0.adjoint()));
    const auto& w = es.eigenvalues();
    if (w.minCoeff() < -1e-8) throw ContractViolation("sample_initial_state: rho0 is not positive");
    const double u = (static_cast<double>(index) + 0.5) / static_cast<double>(n_traj);
    // Walk from the largest weight so a pure state always picks its own vector.
    double acc = 0.0;
    Eigen::Index pick = w.size() - 1;
    for (Eigen::Index k = w.size() - 1; k >= 0; --k) {
        acc += std::max(0.0, w(k));
        pick = k;
        if (u < acc) break;
    }
    CVector v = es.eigenvectors().col(pick);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    return v.normalized();
}

std::vector<TrajectoryRecord> run_ensemble(const ModelParams& params, const Operator& rho0, double t_max,
                                           long n_traj, const EnsembleOptions& opt) {
    if (n_traj < 1) throw InvalidParameter("run_ensemble: n_traj must be >= 1");
    std::vector<TrajectoryRecord> out(static_cast<size_t>(n_traj));
    parallel_for(n_traj, opt.jobs, [&](long i) {
        const CVector psi0 = sample_initial_state(rho0, i, n_traj);
        out[static_cast<size_t>(i)] =
            run_trajectory(params, psi0, t_max, opt.base_seed + static_cast<std::uint64_t>(i), opt.trajectory);
    });
    return out;
}

Operator ensemble_density(const std::vector<TrajectoryRecord>& records, size_t k) {
    if (records.empty()) throw InvalidParameter("ensemble_density: empty ensemble");
    const Eigen::Index n = records.front().sampled_states.at(k).size();
    Operator rho = Operator::Zero(n, n);
    for (const auto& r : records) {
        const CVector& psi = r.sampled_states.at(k);
        rho.noalias() += psi * psi.adjoint();
    }
    return rho / static_cast<double>(records.size());
}

FreezingReport freezing_report(const TrajectoryRecord& record, const std::vector<spin::EigenPair>& sx_basis,
                               const FreezingOptions& opt) {
    FreezingReport rep;
    const size_t n_samples = record.sampled_states.size();
    const size_t n_sec = sx_basis.size();
    rep.t = record.sample_times;
    for (const auto& e : sx_basis) rep.m_values.push_back(e.value);
    rep.occupations.resize(static_cast<Eigen::Index>(n_samples), static_cast<Eigen::Index>(n_sec));
    for (size_t k = 0; k < n_samples; ++k)
        for (size_t m = 0; m < n_sec; ++m)
            rep.occupations(k, m) = std::norm(sx_basis[m].vector.dot(record.sampled_states[k]));

    // Freeze: first sample whose leading sector stays above threshold for the
    // confirmation window (or until the end of the run).
    for (size_t k = 0; k < n_samples && !rep.frozen; ++k) {
        Eigen::Index lead = 0;
        const double top = rep.occupations.row(k).maxCoeff(&lead);
        if (top <= opt.threshold) continue;
        bool held = true;
        for (size_t q = k; q < n_samples && rep.t[q] <= rep.t[k] + opt.confirmation_window; ++q)
            if (rep.occupations(q, lead) <= opt.threshold) {
                held = false;
                break;
            }
        if (held) {
            rep.frozen = true;
            rep.selected = static_cast<int>(lead);
            rep.selected_m = rep.m_values[lead];
            rep.freeze_time = rep.t[k];
        }
    }
    if (!rep.frozen) return rep;

    // Log-linear fit of the non-selected mass.
    std::vector<double> xs, ys;
    bool open = false;
    for (size_t k = 0; k < n_samples; ++k) {
        double rest = 0.0;
        for (size_t m = 0; m < n_sec; ++m)
            if (static_cast<int>(m) != rep.selected) rest += rep.occupations(static_cast<Eigen::Index>(k), m);
        if (!open && rest < opt.fit_start) open = true;
        if (!open) continue;
        if (rest < opt.fit_floor) break;
        xs.push_back(rep.t[k]);
        ys.push_back(std::log(rest));
    }
    if (xs.size() >= 5) {
        const double nx = static_cast<double>(xs.size());
        double mx = 0.0, my = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= nx;
        my /= nx;
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        if (sxx > 0.0 && syy > 0.0) {
            rep.fit_valid = true;
            rep.fit_rate = -sxy / sxx;
            rep.fit_r2 = sxy * sxy / (sxx * syy);
        }
    }
    return rep;
}

std::vector<double> analytic_freezing_pmf(const std::vector<std::pair<double, cplx>>& c0, double t, long n,
                                          const ModelParams& params) {
    validate(params);
    if (c0.empty()) throw InvalidParameter("analytic_freezing_pmf: no sectors given");
    if (n < 0 || t < 0.0) throw InvalidParameter("analytic_freezing_pmf: n and t must be nonnegative");
    double total_weight = 0.0;
    for (const auto& [m, c] : c0) total_weight += std::norm(c);
    if (std::abs(total_weight - 1.0) > 1e-8)
        throw InvalidParameter("analytic_freezing_pmf: amplitudes must satisfy sum |c_m|^2 = 1");
    std::vector<double> logw(c0.size(), -std::numeric_limits<double>::infinity());
    double lmax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < c0.size(); ++i) {
        const double w = std::norm(c0[i].second);
        const double r = sector_jump_rate(c0[i].first, params);
        if (w == 0.0) continue;
        if (r == 0.0 && n > 0) continue;
        double lw = std::log(w) - r * t;
        if (n > 0) lw += static_cast<double>(n) * std::log(r);
        logw[i] = lw;
        lmax = std::max(lmax, lw);
    }
    if (!std::isfinite(lmax))
        throw DegenerateDistribution("analytic_freezing_pmf: every sector has zero weight for this (t, n)");
    std::vector<double> p(c0.size(), 0.0);
    double z = 0.0;
    for (size_t i = 0; i < c0.size(); ++i) {
        if (std::isfinite(logw[i])) p[i] = std::exp(logw[i] - lmax);
        z += p[i];
    }
    for (double& x : p) x /= z;
    return p;
}

}  // namespace sslab::trajectories
