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

#include "sslab/liouvillian.hpp"
#include "sslab/types.hpp"

namespace sslab::emission {

inline constexpr double DEFAULT_DETECTOR_WIDTH = 0.01;

// Quantum-regression correlator <a^dag(t) a(t + tau)> for t -> infinity,
// a = D_theta, evaluated mode by mode from the spectral decomposition.
// rho_ss must be stationary: |L vec(rho_ss)| < 1e-8.
std::vector<cplx> two_time_correlator(const liouvillian::Superoperator& l,
                                      const liouvillian::LiouvillianSpectrum& spectrum, const Operator& rho_ss,
                                      const std::vector<double>& tau_grid);

struct DeltaPeak {
    double omega;     // position, -Im(lambda_mu)
    double l_weight;  // L_mu
    double k_weight;  // K_mu, carried as -(K/pi) P.V. 1/(omega + omega_mu)
    Eigen::Index mode;
};

struct SpectrumResult {
    std::vector<double> omega;
    std::vector<double> continuous;
    std::vector<DeltaPeak> deltas;
    double zero_tolerance = 0.0;
    double total_weight = 0.0;  // sum of L_mu over all modes = <a^dag a>_ss
};

// Continuous part from modes with Re lambda != 0; zero-real-part modes are
// returned as delta entries. Throws ConsistencyError if a delta entry has
// K != 0 while the steady state is unique.
SpectrumResult emission_spectrum(const liouvillian::Superoperator& l,
                                 const liouvillian::LiouvillianSpectrum& spectrum, const Operator& rho_ss,
                                 const std::vector<double>& omega_grid, int jobs = 1);

// Continuous part plus every delta entry turned into a Lorentzian of HWHM
// gamma_det/2 (absorptive weight L, dispersive weight K).
std::vector<double> broadened_spectrum(const SpectrumResult& result, double gamma_det = DEFAULT_DETECTOR_WIDTH);

// Continuous part of S(omega) from sparse solves (L + i omega) y = -(rho_ss a^dag - <a^dag> rho_ss),
// S = Re Tr[a y] / pi. Needs a unique steady state; suited to sizes where dense
// diagonalization is out of reach. The coherent delta at omega = 0 of weight
// |<a>|^2 is not included.
std::vector<double> resolvent_spectrum(const liouvillian::Superoperator& l, const Operator& rho_ss,
                                       const std::vector<double>& omega_grid, int jobs = 1);

// Trapezoidal integral of `values` on `grid`.
double integrate(const std::vector<double>& grid, const std::vector<double>& values);

struct Peak {
    double omega = 0.0;   // refined by a parabola through the grid maximum
    double height = 0.0;
    double half_width = 0.0;  // HWHM from linear interpolation of the half-maximum crossings
    bool resolved = false;    // both crossings found inside the grid
};

// Local maxima above min_rel * global maximum, in grid order.
std::vector<Peak> find_peaks(const std::vector<double>& grid, const std::vector<double>& values,
                             double min_rel = 0.05);

// Highest peak within [lo, hi].
Peak peak_in_window(const std::vector<double>& grid, const std::vector<double>& values, double lo, double hi);

}  // namespace sslab::emission
