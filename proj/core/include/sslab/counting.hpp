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
#include <vector>

#include "sslab/liouvillian.hpp"
#include "sslab/trajectories.hpp"
#include "sslab/types.hpp"

namespace sslab::counting {

struct CountingDistribution {
    double horizon = 0.0;
    std::vector<double> p;  // p[K], K = 0 ... K_max
    std::string source;     // "exact", "fourier" or "monte-carlo"
    double truncated_mass = 0.0;
    long n_samples = 0;
    std::vector<long> samples;  // raw jump counts (Monte Carlo only)
    std::vector<std::string> warnings;

    long k_max() const { return static_cast<long>(p.size()) - 1; }
    double mean() const;
    double variance() const;
};

struct SectorWeight {
    double m;  // S_x eigenvalue
    double c;  // population, c >= 0, sum c = 1
};

// Poisson mixture over strong-symmetry sectors, rate r_m = 2 Gamma m^2 / J.
// k_max < 0 selects mean + 8 sd of the largest-mean component.
CountingDistribution exact_counting_pmf(const std::vector<SectorWeight>& weights, const ModelParams& params,
                                        double horizon, long k_max = -1);

CountingDistribution mc_counting_pmf(const ModelParams& params, const Operator& rho0, double horizon, long n_traj,
                                     const trajectories::EnsembleOptions& opt = {});

// Exact p_T(K) for any theta from the generating function Tr[exp(W_{i phi} T) rho0],
// inverted by FFT over phi. Intended for small N.
CountingDistribution fourier_counting_pmf(const ModelParams& params, const Operator& rho0, double horizon,
                                          long k_max);

// Physical generator with the jump term weighted by e^s.
liouvillian::Superoperator tilted_liouvillian(const ModelParams& params, double s);

// Largest real part of the tilted spectrum (dense for small N, shift-invert otherwise).
double scgf_value(const ModelParams& params, double s);

struct ScgfCurve {
    std::vector<double> s;
    std::vector<double> lambda;
    double left_derivative = 0.0;   // at s = 0
    double right_derivative = 0.0;  // at s = 0
    double h = 1e-4;
};

ScgfCurve scgf(const ModelParams& params, const std::vector<double>& s_grid, double h = 1e-4, int jobs = 1);

// <k>_s = lambda'(s) by central differences of step h at every grid point.
std::vector<double> tilted_activity(const ModelParams& params, const std::vector<double>& s_grid, double h = 1e-3,
                                    int jobs = 1);

struct ActivityResult {
    double activity = 0.0;
    double mandel_q = 0.0;
    double left_derivative = 0.0;
    double right_derivative = 0.0;
    bool discontinuous = false;
    double steady_state_activity = 0.0;  // (Gamma/J) Tr[D^dag D rho_ss], NaN if rho_ss not unique
    double richardson_delta = 0.0;       // |activity(h) - activity(2h)|
};

ActivityResult activity_and_mandel(const ModelParams& params, double h = 1e-4);

struct RateFunction {
    std::vector<double> k;
    std::vector<double> phi;
    bool plateau = false;
    double plateau_low = 0.0;
    double plateau_high = 0.0;
};

RateFunction rate_function(const ScgfCurve& curve, const std::vector<double>& k_grid);

// lambda(s) = max_k [k s - phi(k)] on the k grid of `rf`.
std::vector<double> legendre_to_scgf(const RateFunction& rf, const std::vector<double>& s_grid);

// Helpers for comparing and inspecting distributions.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// Total variation between the empirical law of `samples` and `pmf`, both
// aggregated on Freedman-Diaconis bins of the samples.
double binned_total_variation(const std::vector<long>& samples, const std::vector<double>& pmf);

// Local maxima of height >= min_rel * max, merging neighbours whose separating
// minimum stays above dip_ratio times the lower peak.
std::vector<long> find_modes(const std::vector<double>& p, double min_rel = 0.01, double dip_ratio = 0.5);

}  // namespace sslab::counting
