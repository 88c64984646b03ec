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

#include <cstdint>
#include <utility>
#include <vector>

#include "sslab/spin_algebra.hpp"
#include "sslab/types.hpp"

namespace sslab::trajectories {

struct TrajectoryOptions {
    double dt = 1e-3;
    double sample_dt = 0.0;  // 0: keep only the initial and final states
    double max_jump_probability = 0.05;
};

struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<double> jump_times;
    std::vector<double> sample_times;
    std::vector<CVector> sampled_states;
    long n_jumps = 0;
};

// First-order quantum-jump unraveling. Per step of length dt a jump D psi
// happens with probability p = (Gamma/J) <D^dag D> dt; otherwise psi evolves
// with 1 - i H_eff dt, H_eff = Omega S_x - i Gamma/(2J) D^dag D, and is renormalized.
TrajectoryRecord run_trajectory(const ModelParams& params, const CVector& psi0, double t_max, std::uint64_t seed,
                                const TrajectoryOptions& opt = {});

// Pure initial state for trajectory `index` of an ensemble started from rho0:
// stratified inverse-CDF draw over the eigen-decomposition of rho0.
CVector sample_initial_state(const Operator& rho0, long index, long n_traj);

struct EnsembleOptions {
    TrajectoryOptions trajectory;
    std::uint64_t base_seed = 1;
    int jobs = 1;
};

// Trajectory i uses seed base_seed + i; results are returned in index order.
std::vector<TrajectoryRecord> run_ensemble(const ModelParams& params, const Operator& rho0, double t_max,
                                           long n_traj, const EnsembleOptions& opt = {});

// Average of |psi><psi| over the ensemble at sample index k.
Operator ensemble_density(const std::vector<TrajectoryRecord>& records, size_t k);

struct FreezingOptions {
    double threshold = 0.99;
    double confirmation_window = 10.0;
    double fit_start = 0.1;    // fit window opens when the non-selected mass drops below this
    double fit_floor = 1e-20;  // and closes when it falls under this (projection noise floor)
};

struct FreezingReport {
    std::vector<double> t;
    std::vector<double> m_values;       // sector labels, ascending
    Eigen::MatrixXd occupations;        // (sample, sector)
    bool frozen = false;
    int selected = -1;                  // sector index
    double selected_m = 0.0;
    double freeze_time = 0.0;
    bool fit_valid = false;             // enough points for the exponential fit
    double fit_rate = 0.0;              // -slope of ln(non-selected mass)
    double fit_r2 = 0.0;
};

FreezingReport freezing_report(const TrajectoryRecord& record, const std::vector<spin::EigenPair>& sx_basis,
                               const FreezingOptions& opt = {});

// p(m; t, n) over the sectors of c0 = {(m, c_m)} for a trajectory with n jumps by
// time t at the strong-symmetry point. Sector jump rate r_m = (Gamma/J) <m|D^dag D|m> = 2 Gamma m^2 / J.
std::vector<double> analytic_freezing_pmf(const std::vector<std::pair<double, cplx>>& c0, double t, long n,
                                          const ModelParams& params);

double sector_jump_rate(double m, const ModelParams& params);

}  // namespace sslab::trajectories
