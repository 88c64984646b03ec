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

#include "sslab/mean_field.hpp"

#include <algorithm>
#include <cmath>

#include "sslab/errors.hpp"

namespace sslab::mean_field {

RatePair rates(const ModelParams& params) {
    const double c = std::cos(params.theta);
    const double s = std::sin(params.theta);
    return {params.gamma * c * c, params.gamma * s * s};
}

BlochVector mf_derivatives(const BlochVector& s, const ModelParams& params) {
    const auto r = rates(params);
    const double g = r.gamma_minus - r.gamma_plus;
    const double w = params.omega;
    return {g * s.x() * s.z(), -w * s.z() + g * s.y() * s.z(), w * s.y() - g * (s.x() * s.x() + s.y() * s.y())};
}

PolarAngles to_angles(const BlochVector& s) {
    const double r = s.norm();
    if (r == 0.0) throw InvalidParameter("to_angles: zero vector");
    return {std::acos(std::clamp(-s.z() / r, -1.0, 1.0)), std::atan2(s.y(), s.x())};
}

BlochVector from_angles(const PolarAngles& a) {
    return {std::sin(a.Theta) * std::cos(a.Phi), std::sin(a.Theta) * std::sin(a.Phi), -std::cos(a.Theta)};
}

std::pair<double, double> angle_derivatives(const PolarAngles& a, const ModelParams& params) {
    if (a.Theta < 1e-8 || a.Theta > PI - 1e-8)
        throw SingularityError("angle_derivatives: cot(Theta) singular near the poles; use mf_derivatives instead");
    const auto r = rates(params);
    const double g = r.gamma_minus - r.gamma_plus;
    const double w = params.omega;
    return {w * std::sin(a.Phi) - g * std::sin(a.Theta), w * std::cos(a.Phi) / std::tan(a.Theta)};
}

double critical_omega(double theta, double gamma) {
    if (!(theta >= 0.0 && theta <= 0.5 * PI + 1e-15)) throw InvalidParameter("critical_omega: theta outside [0, pi/2]");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return gamma * (c * c - s * s);
}

std::optional<double> magnetization(const ModelParams& params) {
    validate(params);
    if (at_strong_symmetry(params))
        throw OutOfValidity("magnetization: undefined at theta = pi/4 (steady state depends on the initial state)");
    const double g = critical_omega(params.theta, params.gamma);
    const double ratio = params.omega / g;
    if (std::abs(ratio) > 1.0) return std::nullopt;
    const double m = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    return g > 0.0 ? -m : m;
}

BlochVector fixed_point(const ModelParams& params) {
    const auto m = magnetization(params);
    if (!m) throw OutOfValidity("fixed_point: no stationary point in the thermal phase");
    const double g = critical_omega(params.theta, params.gamma);
    return {0.0, params.omega / g, *m};
}

FlowPath mf_flow(const BlochVector& s0, const ModelParams& params, double t_max, double step, int sample_every) {
    validate(params);
    if (std::abs(s0.norm() - 1.0) > 1e-9) throw InvalidParameter("mf_flow: initial Bloch vector must have unit norm");
    numerics::OdeSettings set;
    set.step = step;
    set.t_max = t_max;
    set.sample_every = sample_every;
    auto path = numerics::integrate_ode([&](double, const BlochVector& s) { return mf_derivatives(s, params); },
                                        BlochVector(s0), set);
    return {std::move(path.t), std::move(path.y)};
}

Recurrence first_return(const FlowPath& path, const BlochVector& point, double tol) {
    Recurrence r;
    bool left = false;
    for (size_t k = 0; k + 1 < path.s.size(); ++k) {
        const BlochVector a = path.s[k];
        const BlochVector b = path.s[k + 1];
        if (!left) {
            if ((a - point).norm() > 10.0 * tol) left = true;
            continue;
        }
        const BlochVector ab = b - a;
        const double len2 = ab.squaredNorm();
        const double u = len2 > 0.0 ? std::clamp((point - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        const double dist = (a + u * ab - point).norm();
        if (dist < tol) {
            r.returned = true;
            r.time = path.t[k] + u * (path.t[k + 1] - path.t[k]);
            r.distance = dist;
            return r;
        }
    }
    return r;
}

}  // namespace sslab::mean_field
