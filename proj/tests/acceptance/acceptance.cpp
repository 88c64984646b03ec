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

// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Usage: sslab_acceptance [--criterion N] (all criteria when omitted).

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sslab/sslab.hpp"

using namespace sslab;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
    void note(const std::string& what) { lines.push_back("info  " + what); }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

ModelParams model(int n, double omega, double theta) {
    ModelParams p;
    p.n_spins = n;
    p.omega = omega;
    p.theta = theta;
    return p;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    const long n = std::lround((hi - lo) / step);
    for (long i = 0; i <= n; ++i) g.push_back(lo + step * static_cast<double>(i));
    return g;
}

Operator projector(const CVector& v) { return v * v.adjoint(); }

// 1. Strong-symmetry kernel
Outcome c1() {
    Outcome o;
    const auto sp = liouvillian::liouvillian_spectrum(liouvillian::build_liouvillian(model(10, 0.8, 0.25 * PI)));
    int zeros = 0;
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k) zeros += std::abs(sp.eigenvalues(k)) < 1e-9;
    o.check(zeros == 11, fmt("eigenvalues with |lambda| < 1e-9: %d (want 11)", zeros));
    const double a = liouvillian::adr(sp).value;
    o.check(a < 1e-9, fmt("ADR = %.3e (want < 1e-9)", a));
    return o;
}

// 2. Rotating-wave spectrum at strong drive
Outcome c2() {
    Outcome o;
    for (double theta : {0.0, PI / 8}) {
        const ModelParams p = model(20, 200.0, theta);
        const auto sp = liouvillian::liouvillian_spectrum(liouvillian::build_liouvillian(p));
        std::vector<cplx> closed;
        for (int q = 0; q <= 20; ++q)
            for (int k = 0; k <= 20 - q; ++k)
                for (int sg : {1, -1}) closed.push_back(liouvillian::rwa_eigenvalue(p, q, k, sg));
        double worst = 0.0, worst_cluster = 0.0;
        for (Eigen::Index mu = 0; mu < sp.eigenvalues.size(); ++mu) {
            double best = 1e300;
            for (const auto& c : closed) best = std::min(best, std::abs(c - sp.eigenvalues(mu)));
            worst = std::max(worst, best);
            const double im = sp.eigenvalues(mu).imag() / p.omega;
            worst_cluster = std::max(worst_cluster, std::abs(im - std::round(im)));
        }
        o.check(worst < 0.05, fmt("theta=%.4f: max distance to closed form %.4f (want < 0.05)", theta, worst));
        o.check(worst_cluster < 0.01,
                fmt("theta=%.4f: max |Im/Omega - nearest integer| %.2e (want < 0.01)", theta, worst_cluster));
    }
    return o;
}

// 3. Gap against the quadratic-boson value
Outcome c3() {
    Outcome o;
    const double target = std::sqrt(0.75);
    double prev = 1e300;
    for (int n : {50, 100, 200}) {
        const double a = liouvillian::adr_sparse(liouvillian::build_liouvillian(model(n, 0.5, 0.0))).value;
        const double err = std::abs(a - target);
        o.check(err < 10.0 / n, fmt("N=%d: ADR %.5f, |ADR - 0.86603| = %.5f (want < %.3f)", n, a, err, 10.0 / n));
        o.check(err < prev, fmt("N=%d: error decreases with N", n));
        prev = err;
    }
    return o;
}

// 4. Magnetization below the critical drive
Outcome c4() {
    Outcome o;
    const double wc = mean_field::critical_omega(PI / 8);
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const ModelParams p = model(100, 0.1 * i * wc, PI / 8);
        const Operator rho = liouvillian::steady_state(liouvillian::build_liouvillian(p));
        const double sz = (spin::build_spin_operators(p).sz * rho).trace().real() / p.j();
        const double m = *mean_field::magnetization(p);
        o.note(fmt("Omega/Omega_c=%.1f: <s_z> %.5f, M %.5f", 0.1 * i, sz, m));
        worst = std::max(worst, std::abs(sz - m));
    }
    o.check(worst < 0.05, fmt("max |<s_z> - M| = %.4f (want < 0.05)", worst));
    return o;
}

// 5. Spin squeezing of the undriven steady state
Outcome c5() {
    Outcome o;
    const ModelParams p = model(100, 0.0, PI / 8);
    const Operator rho = liouvillian::steady_state(liouvillian::build_liouvillian(p));
    const auto r = hp::spin_squeezing_numeric(rho, spin::build_spin_operators(p));
    const double rel = std::abs(r.xi2 / std::tan(PI / 8) - 1.0);
    o.check(rel < 0.10, fmt("xi^2 = %.5f vs tan(pi/8) = %.5f, relative %.4f (want < 0.10)", r.xi2, std::tan(PI / 8), rel));
    o.check(std::abs(r.phi) < 0.05, fmt("optimal angle %.2e rad (want |phi| < 0.05)", r.phi));
    return o;
}

// 6. Trajectory average against the master equation
Outcome c6() {
    Outcome o;
    const ModelParams p = model(10, 0.5, 0.0);
    Operator rho0 = Operator::Zero(11, 11);
    rho0(10, 10) = 1.0;
    trajectories::EnsembleOptions opt;
    opt.trajectory.dt = 1e-3;
    opt.trajectory.sample_dt = 5.0;
    const auto recs = trajectories::run_ensemble(p, rho0, 5.0, 1000, opt);
    const auto exact = liouvillian::evolve_density(liouvillian::build_liouvillian(p), rho0, {5.0});
    const double td = liouvillian::trace_distance(trajectories::ensemble_density(recs, 1), exact[0]);
    o.check(td < 0.05, fmt("trace distance at t=5: %.4f (want < 0.05)", td));
    return o;
}

// 7. Dissipative freezing
Outcome c7() {
    Outcome o;
    const ModelParams p = model(10, 0.8, 0.25 * PI);
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    const CVector psi0 = (basis[5].vector + basis[8].vector + basis[10].vector) / std::sqrt(3.0);
    trajectories::EnsembleOptions opt;
    opt.trajectory.dt = 1e-3;
    opt.trajectory.sample_dt = 0.1;
    const long n = 600;
    const auto recs = trajectories::run_ensemble(p, projector(psi0), 110.0, n, opt);
    long frozen = 0, fits = 0, good_fits = 0;
    std::map<int, long> picks;
    for (const auto& r : recs) {
        const auto rep = trajectories::freezing_report(r, basis);
        if (!rep.frozen || rep.freeze_time > 100.0) continue;
        ++frozen;
        ++picks[static_cast<int>(std::lround(rep.selected_m))];
        // m = 0 freezes without jumps; every other sector needs the fit.
        if (rep.fit_valid) {
            ++fits;
            good_fits += rep.fit_r2 > 0.95;
        }
    }
    const double ff = static_cast<double>(frozen) / n;
    o.check(ff >= 0.95, fmt("frozen by t=100: %ld/%ld = %.3f (want >= 0.95)", frozen, n, ff));
    const double gf = fits > 0 ? static_cast<double>(good_fits) / fits : 0.0;
    o.check(fits > 0 && gf >= 0.95, fmt("exponential fits with R^2 > 0.95: %ld/%ld = %.3f (want >= 0.95)", good_fits, fits, gf));
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / static_cast<double>(frozen));
    for (int m : {0, 3, 5}) {
        const double f = frozen > 0 ? static_cast<double>(picks[m]) / frozen : 0.0;
        o.check(std::abs(f - 1.0 / 3) <= 3.0 * sigma,
                fmt("selection frequency m=%d: %.3f (want within 3 sigma = %.3f of 1/3)", m, f, 3.0 * sigma));
    }
    long other = 0;
    for (const auto& [m, c] : picks)
        if (m != 0 && m != 3 && m != 5) other += c;
    o.check(other == 0, fmt("selections outside {0, 3, 5}: %ld", other));
    return o;
}

// 8. Counting distribution at the strong-symmetry point
Outcome c8() {
    Outcome o;
    const ModelParams p = model(20, 0.8, 0.25 * PI);
    const double horizon = 3000.0;
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    Operator rho0 = Operator::Zero(21, 21);
    for (int m = 1; m <= 3; ++m) rho0 += projector(basis[static_cast<size_t>(10 + m)].vector) / 3.0;
    const auto exact = counting::exact_counting_pmf({{1.0, 1.0 / 3}, {2.0, 1.0 / 3}, {3.0, 1.0 / 3}}, p, horizon);
    trajectories::EnsembleOptions opt;
    opt.trajectory.dt = 0.01;
    const auto mc = counting::mc_counting_pmf(p, rho0, horizon, 800, opt);
    const double tv = counting::binned_total_variation(mc.samples, exact.p);
    o.check(tv < 0.05, fmt("binned total variation MC vs exact: %.4f (want < 0.05)", tv));
    const auto modes = counting::find_modes(exact.p);
    std::string found;
    for (long k : modes) found += " " + std::to_string(k);
    o.note("modes of the exact mixture:" + found);
    const bool three = modes.size() == 3;
    for (int m = 1; m <= 3; ++m) {
        const double want = 300.0 * m * m;
        const double got = three ? static_cast<double>(modes[static_cast<size_t>(m - 1)]) : -1.0;
        o.check(three && std::abs(got - want) <= 0.05 * want,
                fmt("mode for m=%d at %.0f (want %.0f within 5%%)", m, got, want));
        const double model_rate = trajectories::sector_jump_rate(m, p) * horizon;
        o.note(fmt("model sector mean (Gamma/J)<D^dag D>_m T = %.0f for m=%d", model_rate, m));
    }
    return o;
}

// 9. SCGF kink and crossover sharpening
Outcome c9() {
    Outcome o;
    const ModelParams p = model(20, 0.8, 0.25 * PI);
    const auto c = counting::scgf(p, {0.0}, 1e-4);
    o.check(std::abs(c.left_derivative) < 0.01 * p.j(),
            fmt("left derivative at s=0: %.3e (want 0 within 1%% of Gamma J)", c.left_derivative));
    const double want = p.gamma * p.j();
    o.check(std::abs(c.right_derivative - want) < 0.01 * want,
            fmt("right derivative at s=0: %.4f (want Gamma J = %.1f within 1%%)", c.right_derivative, want));
    o.note(fmt("model value (Gamma/J)<D^dag D>_{m=J} = %.4f", trajectories::sector_jump_rate(p.j(), p)));

    double prev = 0.0;
    const auto s = grid(-1.0, 1.0, 0.01);
    for (int n : {4, 10, 20}) {
        const auto act = counting::tilted_activity(model(n, 4.0, 0.0), s, 1e-3);
        double slope = 0.0;
        for (size_t i = 1; i < s.size(); ++i) slope = std::max(slope, (act[i] - act[i - 1]) / (s[i] - s[i - 1]));
        o.check(slope > prev, fmt("theta=0, Omega=4, N=%d: max d<k>_s/ds = %.3f (want > previous N)", n, slope));
        prev = slope;
    }
    return o;
}

// 10. Legendre round trip and plateau
Outcome c10() {
    Outcome o;
    const ModelParams p = model(20, 0.8, 0.25 * PI);
    const auto s = grid(-1.0, 1.0, 0.01);
    const auto curve = counting::scgf(p, s, 1e-4);
    const double dk = 0.01;
    const auto k = grid(0.0, 60.0, dk);
    const auto rf = counting::rate_function(curve, k);
    const auto back = counting::legendre_to_scgf(rf, s);
    double worst = 0.0;
    for (size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(back[i] - curve.lambda[i]));
    o.check(worst < 1e-3, fmt("max |lambda - Legendre(phi)| on the s grid: %.2e (want < 1e-3)", worst));
    o.check(rf.plateau, "plateau detected");
    o.check(std::abs(rf.plateau_low) <= dk, fmt("plateau lower edge %.4f (want 0 within %.2f)", rf.plateau_low, dk));
    const double high = p.gamma * p.j();
    o.check(std::abs(rf.plateau_high - high) <= dk,
            fmt("plateau upper edge %.4f (want Gamma J = %.1f within %.2f)", rf.plateau_high, high, dk));
    o.note(fmt("model upper edge (Gamma/J)<D^dag D>_{m=J} = %.4f", trajectories::sector_jump_rate(p.j(), p)));
    return o;
}

// 11. Emission spectrum
Outcome c11() {
    Outcome o;
    {
        const ModelParams p = model(50, 1.2, 0.0);
        const auto l = liouvillian::build_liouvillian(p);
        const Operator rho = liouvillian::steady_state(l);
        // Fine grid over the sidebands, coarse tails out to |omega| = 50.
        std::vector<double> w = grid(-50.0, -3.05, 0.05);
        for (double x : grid(-3.0, 3.0, 0.002)) w.push_back(x);
        for (double x : grid(3.05, 50.0, 0.05)) w.push_back(x);
        std::vector<double> s;
        bool with_delta = true;
        try {
            const auto sp = liouvillian::liouvillian_spectrum(l);
            s = emission::broadened_spectrum(emission::emission_spectrum(l, sp, rho, w));
            o.note("spectral decomposition route");
        } catch (const DefectiveSpectrum& e) {
            o.note(std::string("decomposition refused (") + e.what() + "); resolvent route");
            s = emission::resolvent_spectrum(l, rho, w);
            with_delta = false;
        }
        const auto plus = emission::peak_in_window(w, s, 0.2, 3.0);
        const auto minus = emission::peak_in_window(w, s, -3.0, -0.2);
        o.check(std::abs(plus.omega - p.omega) < 0.05,
                fmt("Omega=1.2, N=50: upper sideband at %.4f (want %.2f within 0.05)", plus.omega, p.omega));
        o.check(std::abs(minus.omega + p.omega) < 0.05,
                fmt("Omega=1.2, N=50: lower sideband at %.4f (want %.2f within 0.05)", minus.omega, -p.omega));
        o.note(fmt("mean-field orbit frequency sqrt(Omega^2 - Omega_c^2) = %.4f", std::sqrt(1.44 - 1.0)));
        const Operator d = spin::jump_operator(p);
        const double ddag_d = (d.adjoint() * d * rho).trace().real();
        const double coherent = with_delta ? 0.0 : std::norm((d * rho).trace());
        const double integral = emission::integrate(w, s) + coherent;
        o.check(std::abs(integral / ddag_d - 1.0) < 0.02,
                fmt("sum rule: integral %.5f (coherent part %.2e) vs <D^dag D> %.5f (want within 2%%)", integral,
                    coherent, ddag_d));
    }
    {
        std::vector<double> lx, ly;
        for (int n : {20, 40, 80}) {
            const ModelParams p = model(n, 2.0, 0.0);
            const auto l = liouvillian::build_liouvillian(p);
            const Operator rho = liouvillian::steady_state(l);
            const auto coarse_w = grid(0.3, 3.5, 0.01);
            const auto coarse = emission::resolvent_spectrum(l, rho, coarse_w);
            const auto guess = emission::peak_in_window(coarse_w, coarse, 0.3, 3.5);
            const double span = std::max(0.05, 6.0 * guess.half_width);
            const auto fine_w = grid(guess.omega - span, guess.omega + span, span / 300.0);
            const auto fine = emission::resolvent_spectrum(l, rho, fine_w);
            const auto pk = emission::peak_in_window(fine_w, fine, fine_w.front(), fine_w.back());
            o.note(fmt("Omega=2, N=%d: peak at %.4f, half-width %.5f", n, pk.omega, pk.half_width));
            o.check(pk.resolved, fmt("N=%d: half-maximum crossings found", n));
            lx.push_back(std::log(static_cast<double>(n)));
            ly.push_back(std::log(pk.half_width));
        }
        const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
        double sxx = 0.0, sxy = 0.0;
        for (int i = 0; i < 3; ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        const double slope = sxy / sxx;
        o.check(slope >= -1.2 && slope <= -0.8, fmt("fitted width exponent p = %.3f (want in [-1.2, -0.8])", slope));
    }
    {
        const ModelParams p = model(20, 0.8, 0.25 * PI);
        const auto l = liouvillian::build_liouvillian(p);
        const auto sp = liouvillian::liouvillian_spectrum(l);
        Operator rho0 = Operator::Zero(21, 21);
        rho0(0, 0) = 1.0;
        const Operator rho = liouvillian::steady_state_projection(sp, rho0);
        const auto res = emission::emission_spectrum(l, sp, rho, grid(-1.0, 1.0, 0.01));
        double weight = 0.0;
        for (const auto& dpk : res.deltas)
            if (std::abs(dpk.omega) < 1e-9) weight += dpk.l_weight;
        o.check(weight > 0.0, fmt("theta=pi/4: delta weight at omega=0 is %.4f (want > 0)", weight));
    }
    return o;
}

// 12. Mean-field invariants
Outcome c12() {
    Outcome o;
    double norm_drift = 0.0;
    const std::vector<mean_field::BlochVector> starts = {
        mean_field::from_angles({0.4, 1.0}), mean_field::from_angles({2.0, -2.0}), mean_field::from_angles({1.5, 0.3})};
    for (const auto& p : {model(10, 0.5, 0.0), model(10, 1.2, 0.0), model(10, 0.3, PI / 8), model(10, 0.9, 1.2)})
        for (const auto& s0 : starts) {
            const auto path = mean_field::mf_flow(s0, p, 100.0, 1e-3, 100);
            for (const auto& s : path.s) norm_drift = std::max(norm_drift, std::abs(s.norm() - 1.0));
        }
    o.check(norm_drift < 1e-8, fmt("max | |s| - 1 | over t=100: %.2e (want < 1e-8)", norm_drift));
    double resid = 0.0;
    for (double th : {0.0, PI / 8, 0.6, 1.0, 1.4}) {
        const double wc = std::abs(mean_field::critical_omega(th));
        for (double f : {0.0, 0.3, 0.7, 0.95}) {
            const ModelParams p = model(10, f * wc, th);
            resid = std::max(resid, mean_field::mf_derivatives(mean_field::fixed_point(p), p).norm());
        }
    }
    o.check(resid < 1e-12, fmt("max fixed-point residual %.2e (want < 1e-12)", resid));
    double sx_drift = 0.0;
    const ModelParams sym = model(10, 0.8, 0.25 * PI);
    for (const auto& s0 : starts) {
        const auto path = mean_field::mf_flow(s0, sym, 100.0, 1e-3, 100);
        for (const auto& s : path.s) sx_drift = std::max(sx_drift, std::abs(s.x() - s0.x()));
    }
    o.check(sx_drift < 1e-8, fmt("theta=pi/4: max |s_x(t) - s_x(0)| = %.2e (want < 1e-8)", sx_drift));
    return o;
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::map<int, std::pair<std::string, std::function<Outcome()>>> table = {
        {1, {"strong-symmetry kernel", c1}},
        {2, {"rotating-wave spectrum", c2}},
        {3, {"quadratic-boson gap", c3}},
        {4, {"magnetization", c4}},
        {5, {"spin squeezing", c5}},
        {6, {"trajectory vs master equation", c6}},
        {7, {"dissipative freezing", c7}},
        {8, {"counting distribution", c8}},
        {9, {"SCGF kink and crossover", c9}},
        {10, {"Legendre round trip and plateau", c10}},
        {11, {"emission spectrum", c11}},
        {12, {"mean-field invariants", c12}},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            which.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
            return 2;
        }
    }
    if (which.empty())
        for (const auto& [id, entry] : criteria()) which.push_back(id);
    bool all = true;
    for (int id : which) {
        const auto it = criteria().find(id);
        if (it == criteria().end()) {
            std::fprintf(stderr, "unknown criterion %d\n", id);
            return 2;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it->second.second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %2d  %-32s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, it->second.first.c_str(), secs);
        for (const auto& line : o.lines) std::printf("        %s\n", line.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
