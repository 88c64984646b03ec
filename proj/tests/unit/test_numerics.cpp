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

#include "sslab/numerics.hpp"

using namespace sslab;

TEST_CASE("eig_general orders by real part, then imaginary part") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = cplx(0.0, 2.0);
    m(2, 2) = -3.0;
    const auto es = numerics::eig_general(m);
    CHECK(std::abs(es.eigenvalues(0) - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(es.eigenvalues(1) - cplx(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(es.eigenvalues(2) - cplx(-3.0, 0.0)) < 1e-14);
    CHECK_FALSE(es.defective());

    CVector ties(3);
    ties << cplx(-1.0, -2.0), cplx(-1.0, 2.0), cplx(0.0, 0.0);
    const auto order = numerics::sorted_order(ties);
    CHECK(order == std::vector<Eigen::Index>{2, 1, 0});
}

TEST_CASE("Jordan block is flagged defective") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK(numerics::eig_general(m).defective());
}

TEST_CASE("random matrix reconstructs from biorthogonal eigenpairs") {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd m(20, 20);
    for (Eigen::Index i = 0; i < 20; ++i)
        for (Eigen::Index j = 0; j < 20; ++j) m(i, j) = cplx(nd(gen), nd(gen));
    const auto es = numerics::eig_general(m);
    Eigen::MatrixXcd rec = Eigen::MatrixXcd::Zero(20, 20);
    for (Eigen::Index k = 0; k < 20; ++k)
        rec += es.eigenvalues(k) * es.right_vectors.col(k) * es.left_vectors.row(k);
    CHECK((rec - m).norm() / m.norm() < 1e-7);
    CHECK((es.left_vectors * es.right_vectors - Eigen::MatrixXcd::Identity(20, 20)).norm() < 1e-9);
    for (Eigen::Index k = 0; k < 20; ++k) CHECK(es.right_vectors.col(k).norm() == doctest::Approx(1.0));
    const CVector vals = numerics::eigenvalues_general(m);
    CHECK((vals - es.eigenvalues).norm() < 1e-10);
}

TEST_CASE("non-finite input is rejected") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(numerics::eig_general(m), InvalidParameter);
}

TEST_CASE("RK4 exponential decay and convergence order") {
    auto f = [](double, double y) { return -y; };
    numerics::OdeSettings s;
    s.step = 1e-3;
    s.t_max = 1.0;
    const auto path = numerics::integrate_ode(f, 1.0, s);
    CHECK(path.t.back() == doctest::Approx(1.0));
    CHECK(std::abs(path.y.back() - std::exp(-1.0)) < 1e-8);

    s.step = 0.1;
    const double e1 = std::abs(numerics::integrate_ode(f, 1.0, s).y.back() - std::exp(-1.0));
    s.step = 0.05;
    const double e2 = std::abs(numerics::integrate_ode(f, 1.0, s).y.back() - std::exp(-1.0));
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));

    s.step = 0.3;  // last step shortened to land on t_max
    const auto short_path = numerics::integrate_ode(f, 1.0, s);
    CHECK(short_path.t.back() == doctest::Approx(1.0));
}

TEST_CASE("RK4 harmonic oscillator energy drift") {
    auto f = [](double, const Eigen::Vector2d& y) { return Eigen::Vector2d(y(1), -y(0)); };
    numerics::OdeSettings s;
    s.step = 1e-3;
    s.t_max = 200.0 * PI;
    s.sample_every = 1000;
    const auto path = numerics::integrate_ode(f, Eigen::Vector2d(1.0, 0.0), s);
    const double e = 0.5 * path.y.back().squaredNorm();
    CHECK(std::abs(e - 0.5) < 1e-6);
}

TEST_CASE("RK4 reports blow-up") {
    auto f = [](double, double y) { return y * y; };
    numerics::OdeSettings s;
    s.step = 0.01;
    s.t_max = 5.0;
    CHECK_THROWS_AS(numerics::integrate_ode(f, 1.0, s), NumericalError);
}

TEST_CASE("kernel basis") {
    CHECK(numerics::kernel_basis(Eigen::MatrixXcd::Identity(4, 4), 1e-12).cols() == 0);
    CHECK(numerics::kernel_basis(Eigen::MatrixXcd::Zero(3, 3), 1e-12).cols() == 3);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(3, 3);
    p(1, 1) = 1.0;
    p(2, 2) = 1.0;
    const auto k = numerics::kernel_basis(p, 1e-12);
    REQUIRE(k.cols() == 1);
    CHECK(std::abs(std::abs(k(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("shift-invert Arnoldi matches dense eigenvalues") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    const int n = 200;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, cplx(-0.05 * i, 0.3 * std::sin(i)));
        if (i + 1 < n) trip.emplace_back(i, i + 1, cplx(0.1 * nd(gen), 0.0));
        if (i > 0) trip.emplace_back(i, i - 1, cplx(0.1 * nd(gen), 0.0));
    }
    SparseOp a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    const CVector dense = numerics::eigenvalues_general(Eigen::MatrixXcd(a));
    numerics::ArnoldiOptions opt;
    opt.n_wanted = 4;
    const cplx shift(0.1, 0.0);
    const auto res = numerics::eigs_shift_invert(a, shift, opt);
    REQUIRE(res.eigenvalues.size() >= 4);
    std::vector<double> dist;
    for (Eigen::Index k = 0; k < dense.size(); ++k) dist.push_back(std::abs(dense(k) - shift));
    std::sort(dist.begin(), dist.end());
    for (Eigen::Index k = 0; k < 4; ++k) {
        double nearest = 1e300;
        for (Eigen::Index q = 0; q < dense.size(); ++q)
            nearest = std::min(nearest, std::abs(dense(q) - res.eigenvalues(k)));
        CHECK(nearest < 1e-8);
        CHECK(res.residuals(k) < 1e-8);
        CHECK(std::abs(res.eigenvalues(k) - shift) <= dist[3] + 1e-9);
    }
}
