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

#include <doctest.h>

#include <cmath>

#include "sslab/errors.hpp"
#include "sslab/holstein_primakoff.hpp"
#include "sslab/liouvillian.hpp"
#include "sslab/mean_field.hpp"

using namespace sslab;

namespace {

ModelParams model(int n, double omega, double theta) {
    ModelParams p;
    p.n_spins = n;
    p.omega = omega;
    p.theta = theta;
    return p;
}

}  // namespace

TEST_CASE("coefficients at the dark state") {
    const auto h = hp::hp_coefficients(model(10, 0.0, 0.0));
    CHECK(std::abs(h.beta) < 1e-15);
    CHECK(h.k == doctest::Approx(2.0));
    CHECK(h.a == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(h.b) < 1e-15);
    CHECK(h.gamma_plus_eff == doctest::Approx(0.0));
    CHECK(h.eta == doctest::Approx(0.0));
}

TEST_CASE("coefficients in the polarized phase") {
    const ModelParams p = model(10, 0.5, 0.0);
    const auto h = hp::hp_coefficients(p);
    const double m = -std::sqrt(0.75);
    CHECK(h.m == doctest::Approx(m));
    CHECK(h.k == doctest::Approx(1.0 - m));
    CHECK(h.a == doctest::Approx((1.0 - 3.0 * m) / (2.0 * std::sqrt(1.0 - m))));
    CHECK(h.b == doctest::Approx((1.0 + m) / (2.0 * std::sqrt(1.0 - m))));
    // Gamma_+ = 0 at theta = 0: gamma_+ = Gamma_- B^2.
    CHECK(h.gamma_plus_eff == doctest::Approx(h.b * h.b));
    CHECK(h.gamma_minus_eff == doctest::Approx(h.a * h.a));
    const auto near = hp::hp_coefficients(model(10, 1.0 - 1e-10, 0.0));
    CHECK(std::abs(near.gamma_minus_eff - near.gamma_plus_eff) < 1e-4);
}

TEST_CASE("gap") {
    CHECK(hp::hp_gap(model(10, 0.0, 0.0)) == doctest::Approx(-1.0));
    CHECK(hp::hp_gap(model(10, 0.5, 0.0)) == doctest::Approx(-std::sqrt(0.75)).epsilon(1e-12));
    CHECK(std::abs(hp::hp_gap(model(10, 1.0, 0.0))) < 1e-12);
    const auto c = hp::hp_gap_candidates(model(10, 0.5, 0.0));
    CHECK(c[0] == doctest::Approx(-std::sqrt(0.75)));
    CHECK(c[1] == doctest::Approx(std::sqrt(0.75)));
    CHECK(c[2] == doctest::Approx(std::sqrt(1.25)));
    CHECK_THROWS_AS(hp::hp_gap(model(10, 1.2, 0.0)), OutOfValidity);
    CHECK_THROWS_AS(hp::hp_gap(model(10, 0.1, 0.25 * PI)), OutOfValidity);
}

TEST_CASE("observables") {
    const auto dark = hp::hp_observables(model(10, 0.0, 0.1));
    CHECK(dark[2] == doctest::Approx(-1.0));
    const auto crit = hp::hp_observables(model(10, 1.0, 0.0));
    CHECK(crit[1] == doctest::Approx(1.0));
    CHECK(std::abs(crit[2]) < 1e-12);
    // Exact N = 100 steady state at half the critical drive.
    const ModelParams p = model(100, 0.5 * mean_field::critical_omega(PI / 8), PI / 8);
    const auto hp_s = hp::hp_observables(p);
    const Operator rho = liouvillian::steady_state(liouvillian::build_liouvillian(p));
    const auto ops = spin::build_spin_operators(p);
    const double ex[3] = {(ops.sx * rho).trace().real() / p.j(), (ops.sy * rho).trace().real() / p.j(),
                          (ops.sz * rho).trace().real() / p.j()};
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ex[k] - hp_s[static_cast<size_t>(k)]) < 0.05);
    // Spin-flipped side mirrors s_y and s_z.
    const auto up = hp::hp_observables(model(10, 0.3, 0.5 * PI - 0.2));
    const auto down = hp::hp_observables(model(10, 0.3, 0.2));
    CHECK(up[1] == doctest::Approx(-down[1]));
    CHECK(up[2] == doctest::Approx(-down[2]));
}

TEST_CASE("correlators and variance") {
    const auto c0 = hp::hp_correlators(model(10, 0.0, 0.0));
    CHECK(std::abs(c0.bdag_b) < 1e-15);
    const auto c = hp::hp_correlators(model(10, 0.4, 0.3));
    CHECK(std::isfinite(c.bdag_b));
    CHECK(std::isfinite(c.b_b));
    CHECK(c.bdag_b >= 0.0);

    const ModelParams p = model(200, 0.3, PI / 8);
    const Operator rho = liouvillian::steady_state(liouvillian::build_liouvillian(p));
    const auto ops = spin::build_spin_operators(p);
    const double mx = (ops.sx * rho).trace().real();
    const double var = ((ops.sx * ops.sx * rho).trace().real() - mx * mx) / (p.j() * p.j());
    CHECK(std::abs(var / hp::hp_variance_sx(p) - 1.0) < 0.10);
}

TEST_CASE("analytic squeezing") {
    CHECK(hp::spin_squeezing_analytic(model(10, 0.0, 0.0)) == doctest::Approx(1.0));
    CHECK(hp::spin_squeezing_analytic(model(10, 0.0, PI / 8)) == doctest::Approx(std::tan(PI / 8)).epsilon(1e-12));
    for (double th : {0.05, 0.3, 0.6}) {
        for (double frac : {0.0, 0.4, 0.8}) {
            const ModelParams p = model(10, frac * mean_field::critical_omega(th), th);
            CHECK(hp::spin_squeezing_analytic(p) == doctest::Approx(hp::spin_squeezing_closed_form(p)).epsilon(1e-10));
        }
    }
    double prev = 1.0;
    for (double th : {0.6, 0.7, 0.75, 0.78}) {
        const double x = hp::spin_squeezing_analytic(model(10, 0.5 * mean_field::critical_omega(th), th));
        CHECK(x < prev);
        prev = x;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("numeric squeezing") {
    const ModelParams p20 = model(20, 0.0, 0.0);
    const auto ops20 = spin::build_spin_operators(p20);
    const CVector south = spin::spin_coherent_state(p20, 0.0, 0.0);
    CHECK(hp::spin_squeezing_numeric(south * south.adjoint(), ops20).xi2 == doctest::Approx(1.0).epsilon(1e-6));

    const ModelParams p = model(100, 0.0, PI / 8);
    const Operator rho = liouvillian::steady_state(liouvillian::build_liouvillian(p));
    const auto r = hp::spin_squeezing_numeric(rho, spin::build_spin_operators(p));
    CHECK(std::abs(r.xi2 / hp::spin_squeezing_analytic(p) - 1.0) < 0.10);
    CHECK(std::abs(r.phi) < 0.05);
}
