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

#include "sslab/holstein_primakoff.hpp"

#include <cmath>

#include "sslab/errors.hpp"
#include "sslab/mean_field.hpp"

namespace sslab::hp {

namespace {

struct Frame {
    double theta;  // below pi/4
    bool flipped;
};

Frame reduced_frame(const ModelParams& params) {
    validate(params);
    if (at_strong_symmetry(params))
        throw OutOfValidity("Holstein-Primakoff expansion undefined at theta = pi/4 (no polarized phase)");
    if (params.theta > 0.25 * PI) return {0.5 * PI - params.theta, true};
    return {params.theta, false};
}

double frame_m(const ModelParams& params, const Frame& f) {
    const double g = mean_field::critical_omega(f.theta, params.gamma);
    const double ratio = params.omega / g;
    if (ratio > 1.0 + 1e-15)
        throw OutOfValidity("Holstein-Primakoff expansion requires omega <= |omega_c| = " + std::to_string(g));
    return -std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
}

}  // namespace

HpCoefficients hp_coefficients(const ModelParams& params) {
    const Frame f = reduced_frame(params);
    const double m = frame_m(params, f);
    const double c = std::cos(f.theta);
    const double s = std::sin(f.theta);
    const double gm = params.gamma * c * c;
    const double gp = params.gamma * s * s;
    HpCoefficients h;
    h.m = m;
    h.spin_flipped = f.flipped;
    h.beta = cplx(0.0, -std::sqrt(1.0 + m));
    const double beta2 = std::norm(h.beta);
    h.k = 2.0 - beta2;
    const double sk = std::sqrt(h.k);
    h.a = (2.0 * h.k - beta2) / (2.0 * sk);
    h.b = (-(h.beta * h.beta)).real() / (2.0 * sk);
    h.chi = params.gamma * s * c;
    const double a2 = h.a * h.a;
    const double b2 = h.b * h.b;
    const double ab = h.a * h.b;
    h.gamma_minus_eff = gm * a2 + gp * b2 + 2.0 * h.chi * ab;
    h.gamma_plus_eff = gp * a2 + gm * b2 + 2.0 * h.chi * ab;
    h.eta = ab * (gm + gp) + h.chi * (a2 + b2);
    return h;
}

double hp_gap(const ModelParams& params) {
    const Frame f = reduced_frame(params);
    const double m = frame_m(params, f);
    return mean_field::critical_omega(f.theta, params.gamma) * m;
}

std::array<double, 3> hp_gap_candidates(const ModelParams& params) {
    const Frame f = reduced_frame(params);
    const double m = frame_m(params, f);
    const double g = mean_field::critical_omega(f.theta, params.gamma);
    const double q = std::sqrt(1.0 + (params.omega / g) * (params.omega / g));
    return {g * m, -g * m, g * q};
}

std::array<double, 3> hp_observables(const ModelParams& params) {
    const Frame f = reduced_frame(params);
    const double m = frame_m(params, f);
    const double sy = std::sqrt(std::max(0.0, 1.0 - m * m));
    if (f.flipped) return {0.0, -sy, -m};
    return {0.0, sy, m};
}

Correlators hp_correlators(const ModelParams& params) {
    const auto h = hp_coefficients(params);
    const double diff = h.gamma_minus_eff - h.gamma_plus_eff;
    if (!(diff > 1e-14 * params.gamma))
        throw OutOfValidity("hp_correlators: gap closed (gamma_- = gamma_+), correlators diverge");
    return {h.gamma_plus_eff / diff, -h.eta / diff};
}

double hp_variance_sx(const ModelParams& params) {
    const auto h = hp_coefficients(params);
    const auto c = hp_correlators(params);
    return h.k / (2.0 * params.j()) * (c.bdag_b + c.b_b + 0.5);
}

double spin_squeezing_analytic(const ModelParams& params) {
    const auto h = hp_coefficients(params);
    const double diff = h.gamma_minus_eff - h.gamma_plus_eff;
    if (!(diff > 1e-14 * params.gamma)) {
        // At the gap closure the correlator sum has the finite limit 0.
        return 0.0;
    }
    const auto c = hp_correlators(params);
    return h.k * (c.bdag_b + c.b_b + 0.5);
}

double spin_squeezing_closed_form(const ModelParams& params) {
    const Frame f = reduced_frame(params);
    const double m = frame_m(params, f);
    const double c = std::cos(f.theta);
    const double s = std::sin(f.theta);
    return -m * (c - s) / (c + s);
}

SqueezingResult spin_squeezing_numeric(const Operator& rho, const spin::SpinOperatorSet& ops) {
    const Eigen::Index n = ops.sx.rows();
    if (rho.rows() != n || rho.cols() != n) throw ContractViolation("spin_squeezing_numeric: dimension mismatch");
    if (std::abs(rho.trace() - 1.0) > 1e-8 || (rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw ContractViolation("spin_squeezing_numeric: rho is not a density matrix");
    const double j = 0.5 * static_cast<double>(n - 1);
    const std::array<const Operator*, 3> s = {&ops.sx, &ops.sy, &ops.sz};
    Eigen::Vector3d mean;
    for (int a = 0; a < 3; ++a) mean(a) = (rho * *s[a]).trace().real();
    const double len = mean.norm();
    if (len < 1e-12 * j) throw NumericalError("spin_squeezing_numeric: mean spin vanishes, direction undefined");
    const Eigen::Vector3d u = mean / len;
    Eigen::Vector3d e1 = Eigen::Vector3d::UnitX() - u.x() * u;
    if (e1.norm() < 1e-8) e1 = Eigen::Vector3d::UnitY() - u.y() * u;
    e1.normalize();
    const Eigen::Vector3d e2 = u.cross(e1);

    // Symmetrized second moments in the perpendicular plane.
    Eigen::Matrix3d cov;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            cov(a, b) = 0.5 * (rho * (*s[a] * *s[b] + *s[b] * *s[a])).trace().real() - mean(a) * mean(b);
    const double c11 = e1.dot(cov * e1);
    const double c22 = e2.dot(cov * e2);
    const double c12 = e1.dot(cov * e2);
    auto var = [&](double phi) {
        const double c = std::cos(phi);
        const double sn = std::sin(phi);
        return c * c * c11 + sn * sn * c22 + 2.0 * c * sn * c12;
    };

    const int n_grid = 721;
    const double lo = -0.5 * PI;
    const double h = PI / (n_grid - 1);
    int best = 0;
    double best_v = var(lo);
    for (int i = 1; i < n_grid; ++i) {
        const double v = var(lo + i * h);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    double a = lo + (best - 1) * h;
    double b = lo + (best + 1) * h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = var(x1);
    double f2 = var(x2);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = var(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = var(x2);
        }
    }
    double phi = 0.5 * (a + b);
    double v = var(phi);
    if (best_v < v) {
        phi = lo + best * h;
        v = best_v;
    }
    // Report phi in (-pi/2, pi/2].
    if (phi <= -0.5 * PI) phi += PI;
    const double n_spins = static_cast<double>(n - 1);
    return {n_spins * v / (len * len), phi};
}

}  // namespace sslab::hp
