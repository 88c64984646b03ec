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
#include <random>

#include "sslab/errors.hpp"
#include "sslab/liouvillian.hpp"

using namespace sslab;
using namespace sslab::liouvillian;

namespace {

ModelParams model(int n, double omega, double theta, double gamma = 1.0) {
    ModelParams p;
    p.n_spins = n;
    p.omega = omega;
    p.theta = theta;
    p.gamma = gamma;
    return p;
}

Operator random_density(Eigen::Index n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    Operator g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = cplx(nd(gen), nd(gen));
    Operator r = g * g.adjoint();
    return r / r.trace().real();
}

// Direct evaluation of the master equation right-hand side.
Operator master_rhs(const ModelParams& p, const Operator& rho) {
    const auto ops = spin::build_spin_operators(p);
    const Operator d = spin::jump_operator(ops, p.theta);
    const Operator h = p.omega * ops.sx;
    const Operator dd = d.adjoint() * d;
    return -I_UNIT * (h * rho - rho * h) +
           (p.gamma / (2.0 * p.j())) * (2.0 * d * rho * d.adjoint() - dd * rho - rho * dd);
}

bool has_near(const CVector& values, cplx target, double tol) {
    for (Eigen::Index k = 0; k < values.size(); ++k)
        if (std::abs(values(k) - target) < tol) return true;
    return false;
}

}  // namespace

TEST_CASE("vec and unvec use column stacking") {
    Operator x(2, 2);
    x << 1.0, 2.0, 3.0, 4.0;
    const CVector v = vec(x);
    CHECK(v(1) == cplx(3.0, 0.0));
    CHECK(v(2) == cplx(2.0, 0.0));
    CHECK((unvec(v, 2) - x).norm() == 0.0);
}

TEST_CASE("generator matches the master equation and preserves trace") {
    for (const auto& p : {model(3, 0.7, 0.3), model(6, 1.5, 1.1, 0.4), model(4, 0.0, 0.25 * PI)}) {
        const auto l = build_liouvillian(p);
        const Operator rho = random_density(p.dim(), 11);
        CHECK((l.apply(rho) - master_rhs(p, rho)).norm() < 1e-12);
        const CVector tr = vec(Operator::Identity(p.dim(), p.dim()));
        const Eigen::MatrixXcd dense = l.dense();
        CHECK((tr.transpose() * dense).norm() / dense.norm() < 1e-12);
    }
}

TEST_CASE("size guard") {
    BuildOptions opt;
    opt.max_spins = 10;
    CHECK_THROWS_AS(build_liouvillian(model(12, 1.0, 0.0), opt), InvalidParameter);
}

TEST_CASE("single-spin decay spectrum") {
    const auto sp = liouvillian_spectrum(build_liouvillian(model(1, 0.0, 0.0)));
    REQUIRE(sp.eigenvalues.size() == 4);
    CHECK(std::abs(sp.eigenvalues(0)) < 1e-12);
    CHECK(std::abs(sp.eigenvalues(1) + 1.0) < 1e-12);
    CHECK(std::abs(sp.eigenvalues(2) + 1.0) < 1e-12);
    CHECK(std::abs(sp.eigenvalues(3) + 2.0) < 1e-12);
    CHECK(adr(sp).value == doctest::Approx(1.0));
}

TEST_CASE("S_x eigenprojectors are stationary at the strong-symmetry point") {
    const ModelParams p = model(4, 0.8, 0.25 * PI);
    const auto l = build_liouvillian(p);
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    for (const auto& e : basis) CHECK(l.apply(e.vector * e.vector.adjoint()).norm() < 1e-10);
}

TEST_CASE("RK4 density evolution") {
    const ModelParams single = model(1, 0.0, 0.0);
    Operator excited = Operator::Zero(2, 2);
    excited(1, 1) = 1.0;
    const std::vector<double> ts = {0.0, 0.5, 1.0, 2.0};
    const auto path = evolve_density(build_liouvillian(single), excited, ts);
    for (size_t k = 0; k < ts.size(); ++k) CHECK(std::abs(path[k](1, 1).real() - std::exp(-2.0 * ts[k])) < 1e-6);

    const ModelParams p = model(10, 0.5, 0.0);
    const auto l = build_liouvillian(p);
    const Operator ss = steady_state(l);
    for (const auto& r : evolve_density(l, ss, {0.0, 1.0, 5.0})) CHECK((r - ss).norm() < 1e-8);
    const auto drift = evolve_density(l, random_density(p.dim(), 5), {50.0}, 1e-2);
    CHECK(std::abs(drift.back().trace() - 1.0) < 1e-8);
}

TEST_CASE("strong-symmetry kernel and exact coherence eigenvalues") {
    const ModelParams p = model(10, 0.8, 0.25 * PI);
    const auto sp = liouvillian_spectrum(build_liouvillian(p));
    int zeros = 0;
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k) zeros += std::abs(sp.eigenvalues(k)) < 1e-9;
    CHECK(zeros == 11);
    CHECK(sp.steady.size() == 11);
    CHECK(adr(sp).value < 1e-9);
    // Coherences |m><m'| decay at (Gamma/2J)|D|^2-difference: D = sqrt2 S_x so rate Gamma/J (m - m')^2.
    for (int dm = 1; dm <= 3; ++dm)
        CHECK(has_near(sp.eigenvalues, cplx(-p.gamma / p.j() * dm * dm, -p.omega * dm), 1e-8));
}

TEST_CASE("spectrum comes in conjugate pairs") {
    const auto sp = liouvillian_spectrum(build_liouvillian(model(6, 1.3, 0.2)));
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k)
        CHECK(has_near(sp.eigenvalues, std::conj(sp.eigenvalues(k)), 1e-9));
}

TEST_CASE("biorthonormal left and right eigenmatrices") {
    const auto sp = liouvillian_spectrum(build_liouvillian(model(5, 0.6, 0.3)));
    for (Eigen::Index mu = 0; mu < 6; ++mu)
        for (Eigen::Index nu = 0; nu < 6; ++nu) {
            const cplx ov = (sp.left_matrix(mu) * sp.right_matrix(nu)).trace();
            CHECK(std::abs(ov - (mu == nu ? 1.0 : 0.0)) < 1e-9);
        }
}

TEST_CASE("gap in the polarized phase approaches the quadratic-boson value") {
    const auto sp = liouvillian_spectrum(build_liouvillian(model(30, 0.5, 0.0)));
    CHECK(std::abs(adr(sp).value - std::sqrt(0.75)) < 10.0 / 30.0);
}

TEST_CASE("sparse slowest-mode search agrees with dense diagonalization") {
    for (const auto& p : {model(16, 0.5, 0.0), model(16, 1.4, 0.0), model(12, 0.8, 0.3)}) {
        const auto l = build_liouvillian(p);
        const auto dense = adr(liouvillian_spectrum(l));
        const auto sparse = adr_sparse(l);
        CHECK(sparse.value == doctest::Approx(dense.value).epsilon(1e-6));
    }
    CHECK(adr_sparse(build_liouvillian(model(12, 0.8, 0.25 * PI))).value < 1e-9);
}

TEST_CASE("steady-state projection") {
    const ModelParams unique = model(6, 0.5, 0.2);
    const auto l = build_liouvillian(unique);
    const auto sp = liouvillian_spectrum(l);
    const Operator a = steady_state_projection(sp, random_density(7, 1));
    const Operator b = steady_state_projection(sp, random_density(7, 2));
    CHECK(trace_distance(a, b) < 1e-8);
    CHECK(trace_distance(a, steady_state(l)) < 1e-8);

    const ModelParams sym = model(6, 0.8, 0.25 * PI);
    const auto ssp = liouvillian_spectrum(build_liouvillian(sym));
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(sym).sx);
    const CVector m2 = basis[2].vector;
    CHECK(trace_distance(steady_state_projection(ssp, m2 * m2.adjoint()), m2 * m2.adjoint()) < 1e-8);

    const cplx c1(0.6, 0.0), c4(0.0, 0.8);
    const CVector psi = c1 * basis[1].vector + c4 * basis[4].vector;
    const Operator proj = steady_state_projection(ssp, psi * psi.adjoint());
    for (size_t m = 0; m < basis.size(); ++m) {
        const double expect = m == 1 ? 0.36 : (m == 4 ? 0.64 : 0.0);
        CHECK(std::abs(basis[m].vector.dot(proj * basis[m].vector).real() - expect) < 1e-8);
    }
    CHECK_THROWS_AS(steady_state(build_liouvillian(sym)), SingularityError);
}

TEST_CASE("rotating-wave eigenvalues") {
    CHECK(std::abs(rwa_eigenvalue(model(20, 3.0, 0.3), 0, 0, 1)) == 0.0);
    const cplx v = rwa_eigenvalue(model(20, 3.0, 0.0), 1, 0, 1);
    CHECK(std::abs(v - cplx(-0.075, 3.0)) < 1e-14);
    CHECK(std::abs(rwa_eigenvalue(model(20, 3.0, 0.0), 1, 0, -1) - cplx(-0.075, -3.0)) < 1e-14);
    // chi vanishes on the strong-symmetry line: k drops out.
    const ModelParams s = model(10, 1.0, 0.25 * PI);
    CHECK(std::abs(rwa_eigenvalue(s, 2, 0, 1) - rwa_eigenvalue(s, 2, 5, 1)) < 1e-14);
    CHECK_THROWS_AS(rwa_eigenvalue(s, 11, 0, 1), InvalidParameter);
}

TEST_CASE("rotating-wave generator spectrum matches the closed form") {
    for (double theta : {0.0, PI / 8, 0.25 * PI}) {
        const ModelParams p = model(6, 2.0, theta);
        const auto sp = liouvillian_spectrum(build_rwa_liouvillian(p));
        std::vector<cplx> closed;
        for (int q = 0; q <= 6; ++q)
            for (int k = 0; k <= 6 - q; ++k)
                for (int sg : {1, -1}) {
                    if (q == 0 && sg == -1) continue;
                    closed.push_back(rwa_eigenvalue(p, q, k, sg));
                }
        CHECK(closed.size() == 49);
        for (Eigen::Index mu = 0; mu < sp.eigenvalues.size(); ++mu) {
            double best = 1e300;
            for (const auto& c : closed) best = std::min(best, std::abs(c - sp.eigenvalues(mu)));
            CHECK(best < 1e-9);
        }
    }
}

TEST_CASE("rotating-wave eigenstates") {
    const ModelParams p = model(10, 0.9, 0.25 * PI);
    const Operator r0 = rwa_eigenstate(p, 0);
    CHECK((r0 - Operator::Identity(11, 11) / 11.0).norm() < 1e-14);
    const auto l = build_rwa_liouvillian(p);
    const Operator r2 = rwa_eigenstate(p, 2);
    CHECK((l.apply(r2) - rwa_eigenvalue(p, 2, 0, 1) * r2).norm() < 1e-9);
    const ModelParams q = model(8, 0.9, 0.3);
    const Operator r3 = rwa_eigenstate(q, 3);
    CHECK((build_rwa_liouvillian(q).apply(r3) - rwa_eigenvalue(q, 3, 0, 1) * r3).norm() < 1e-9);
    CHECK_THROWS_AS(rwa_eigenstate(p, 11), InvalidParameter);
}

TEST_CASE("strong and dynamical symmetry checks") {
    const ModelParams sym = model(6, 0.8, 0.25 * PI);
    const auto ops = spin::build_spin_operators(sym);
    CHECK(check_strong_symmetry(ops.sx, sym).is_symmetry);
    CHECK_FALSE(check_strong_symmetry(ops.sx, model(6, 0.5, 0.0)).is_symmetry);
    const auto id = check_strong_symmetry(Operator::Identity(7, 7), model(6, 0.5, 0.3));
    CHECK(id.is_symmetry);

    const Operator xm = spin::x_ladder_minus(ops);
    const ModelParams closed = model(6, 0.7, 0.0);
    // [S_x, S_x^-] = +S_x^-, so [H, A] = Omega A.
    CHECK(check_dynamical_symmetry(xm, cplx(closed.omega, 0.0), closed, false).holds);
    CHECK_FALSE(check_dynamical_symmetry(xm, cplx(-closed.omega, 0.0), closed, false).holds);
    CHECK_FALSE(check_dynamical_symmetry(xm, cplx(closed.omega, 0.0), closed, true).holds);
    const auto zero = check_dynamical_symmetry(Operator::Zero(7, 7), cplx(1.0, 0.0), closed);
    CHECK(zero.holds);
    CHECK(zero.trivial);
}

TEST_CASE("trace distance") {
    Operator a = Operator::Zero(2, 2), b = Operator::Zero(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    CHECK(trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(trace_distance(a, a) == 0.0);
}
