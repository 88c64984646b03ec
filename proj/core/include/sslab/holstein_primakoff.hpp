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

#include <array>

#include "sslab/spin_algebra.hpp"
#include "sslab/types.hpp"

namespace sslab::hp {

// Quadratic bosonic model around the stable displacement. Above theta = pi/4
// everything is evaluated at pi/2 - theta in the spin-flipped frame
// (S_z -> -S_z, S_y -> -S_y), which exchanges Gamma_- and Gamma_+.
struct HpCoefficients {
    cplx beta;
    double k;
    double a;
    double b;
    double gamma_minus_eff;
    double gamma_plus_eff;
    double eta;
    double chi;
    double m;             // magnetization in the (possibly flipped) frame, <= 0
    bool spin_flipped;
};

HpCoefficients hp_coefficients(const ModelParams& params);

// lambda_1 = (Gamma_- - Gamma_+) M, the Liouvillian gap.
double hp_gap(const ModelParams& params);

// Displacement candidates' eigenvalues (lambda_1, lambda_2, lambda_3).
std::array<double, 3> hp_gap_candidates(const ModelParams& params);

// (<s_x>, <s_y>, <s_z>) to leading order.
std::array<double, 3> hp_observables(const ModelParams& params);

struct Correlators {
    double bdag_b;
    double b_b;
};

Correlators hp_correlators(const ModelParams& params);

// Variance of s_x = S_x/J to order 1/J: k/(2J) (<b^dag b> + <b^2> + 1/2).
double hp_variance_sx(const ModelParams& params);

// Thermodynamic-limit squeezing k (<b^dag b> + <b^2> + 1/2), from the correlators.
double spin_squeezing_analytic(const ModelParams& params);

// Same quantity in closed form: -M (cos - sin) / (cos + sin).
double spin_squeezing_closed_form(const ModelParams& params);

struct SqueezingResult {
    double xi2;
    double phi;  // optimal angle in the plane perpendicular to the mean spin
};

// Minimizes N Var(S_perp(phi)) / |<S>|^2 over phi by a 721-point scan plus
// golden-section refinement. phi = 0 is the direction of x projected onto
// the perpendicular plane.
SqueezingResult spin_squeezing_numeric(const Operator& rho, const spin::SpinOperatorSet& ops);

}  // namespace sslab::hp
