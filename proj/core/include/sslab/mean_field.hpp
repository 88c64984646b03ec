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

#include <optional>
#include <vector>

#include "sslab/numerics.hpp"
#include "sslab/types.hpp"

namespace sslab::mean_field {

using BlochVector = Eigen::Vector3d;

struct PolarAngles {
    double Theta;  // from the south pole, s_z = -cos(Theta)
    double Phi;
};

struct RatePair {
    double gamma_minus;
    double gamma_plus;
};

RatePair rates(const ModelParams& params);

BlochVector mf_derivatives(const BlochVector& s, const ModelParams& params);

// (dTheta/dt, dPhi/dt). Throws SingularityError within 1e-8 of the poles.
std::pair<double, double> angle_derivatives(const PolarAngles& a, const ModelParams& params);

PolarAngles to_angles(const BlochVector& s);
BlochVector from_angles(const PolarAngles& a);

// Gamma (cos^2 - sin^2); negative above theta = pi/4 (spin-flipped side).
double critical_omega(double theta, double gamma = 1.0);

// Stationary <s_z> in the polarized phase, nullopt in the thermal phase.
// Below theta = pi/4 the spin points down, above it points up.
std::optional<double> magnetization(const ModelParams& params);

// Attracting fixed point in the polarized phase.
BlochVector fixed_point(const ModelParams& params);

struct FlowPath {
    std::vector<double> t;
    std::vector<BlochVector> s;
};

FlowPath mf_flow(const BlochVector& s0, const ModelParams& params, double t_max, double step = 1e-3,
                 int sample_every = 1);

// First time the path comes back within `tol` of `point` after having left its
// 10*tol neighbourhood; crossing time and distance use segment interpolation.
struct Recurrence {
    bool returned = false;
    double time = 0.0;
    double distance = 0.0;
};

Recurrence first_return(const FlowPath& path, const BlochVector& point, double tol);

}  // namespace sslab::mean_field
