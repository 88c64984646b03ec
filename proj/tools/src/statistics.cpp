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

#include <algorithm>

#include "experiments_impl.hpp"

namespace sslab::cli {

RunOutcome counting_run(const json& c, int jobs) {
    const ModelParams p = model_params(c);
    const auto ms = get_grid(c, "initial.m");
    const auto ws = get_grid(c, "initial.weight");
    if (ms.size() != ws.size()) throw UsageError("initial.m and initial.weight differ in length");
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    double total = 0.0;
    for (double w : ws) {
        if (!(w >= 0.0)) throw UsageError("initial.weight must be >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw UsageError("initial.weight sums to zero");
    std::vector<counting::SectorWeight> sectors;
    Operator rho0 = Operator::Zero(p.dim(), p.dim());
    for (size_t i = 0; i < ms.size(); ++i) {
        const auto& v = basis[static_cast<size_t>(ladder_index(ms[i], p, "initial.m"))].vector;
        rho0 += ws[i] / total * v * v.adjoint();
        sectors.push_back({ms[i], ws[i] / total});
    }
    const double horizon = get_double(c, "run.horizon");
    const long n_traj = get_long(c, "run.n_traj");
    const bool want_exact = get_bool(c, "run.exact");
    const bool want_fourier = get_bool(c, "run.fourier");
    trajectories::EnsembleOptions eo;
    eo.trajectory.dt = get_double(c, "run.dt");
    eo.base_seed = static_cast<std::uint64_t>(get_long(c, "run.base_seed"));
    eo.jobs = jobs;

    Run run("counting", c, jobs);
    std::vector<counting::CountingDistribution> dists(3);
    std::vector<bool> ok(3, false);
    auto attempt = [&](int slot, const char* what, auto&& f) {
        try {
            dists[static_cast<size_t>(slot)] = f();
            ok[static_cast<size_t>(slot)] = true;
        } catch (const std::exception& e) {
            run.failures().record(slot, failure_point(p, what), e);
        }
    };
    if (want_exact) attempt(0, "exact", [&] { return counting::exact_counting_pmf(sectors, p, horizon); });
    if (n_traj > 0) attempt(1, "monte-carlo", [&] { return counting::mc_counting_pmf(p, rho0, horizon, n_traj, eo); });
    if (want_fourier) {
        const long k_max = has(c, "run.k_max") ? get_long(c, "run.k_max")
                           : ok[0]               ? dists[0].k_max()
                                                 : -1;
        if (k_max < 0) throw UsageError("run.k_max is required for the Fourier route without the exact one");
        attempt(2, "fourier", [&] { return counting::fourier_counting_pmf(p, rho0, horizon, k_max); });
    }
    long k_top = 0;
    for (int s = 0; s < 3; ++s)
        if (ok[static_cast<size_t>(s)]) k_top = std::max(k_top, dists[static_cast<size_t>(s)].k_max());
    auto& out = run.dataset("distribution", {"K", "p_exact", "p_mc", "p_fourier"},
                            "jump-count distribution P(K, T); nan where a route was not run");
    for (long k = 0; k <= k_top; ++k) {
        std::vector<double> row = {double(k)};
        for (int s = 0; s < 3; ++s) {
            const auto& d = dists[static_cast<size_t>(s)];
            row.push_back(ok[static_cast<size_t>(s)] && k <= d.k_max() ? d.p[static_cast<size_t>(k)] : NaN);
        }
        out.row(row);
    }
    const char* names[] = {"exact", "monte_carlo", "fourier"};
    for (int s = 0; s < 3; ++s) {
        if (!ok[static_cast<size_t>(s)]) continue;
        const auto& d = dists[static_cast<size_t>(s)];
        run.results()[names[s]] = {{"mean", d.mean()},
                                   {"variance", d.variance()},
                                   {"modes", counting::find_modes(d.p)},
                                   {"truncated_mass", d.truncated_mass},
                                   {"warnings", d.warnings}};
    }
    if (ok[1]) {
        auto& samples = run.dataset("samples", {"trajectory", "count"}, "raw Monte Carlo jump counts");
        for (size_t i = 0; i < dists[1].samples.size(); ++i) samples.row({double(i), double(dists[1].samples[i])});
        if (ok[0])
            run.results()["binned_total_variation_mc_vs_exact"] =
                counting::binned_total_variation(dists[1].samples, dists[0].p);
    }
    return {run.finish(), run.dir()};
}

RunOutcome tilted_scgf(const json& c, int jobs) {
    const ModelParams base = model_params(c);
    const auto ns = get_grid(c, "scan.N");
    const auto s = get_grid(c, "scan.s");
    const double h = get_double(c, "run.h");
    const double ha = get_double(c, "run.activity_h");
    const long k_points = get_long(c, "run.k_points");
    if (k_points < 2) throw UsageError("run.k_points must be >= 2");
    Run run("tilted-scgf", c, jobs);
    auto& curve_out = run.dataset("scgf", {"N", "s", "lambda", "activity", "lambda_from_rate_function"},
                                  "tilted generator: SCGF lambda(s), tilted activity d lambda/ds, and the Legendre "
                                  "round trip of the rate function");
    auto& rate_out = run.dataset("rate_function", {"N", "k", "phi"}, "large-deviation rate function phi(k)");
    auto& sum = run.dataset("summary",
                            {"N", "left_derivative", "right_derivative", "plateau", "plateau_low", "plateau_high",
                             "activity", "mandel_q", "discontinuous"},
                            "one-sided SCGF derivatives at s = 0, rate-function plateau, activity and Mandel Q");
    for (size_t idx = 0; idx < ns.size(); ++idx) {
        ModelParams p = base;
        p.n_spins = static_cast<int>(std::lround(ns[idx]));
        try {
            validate(p);
            const auto curve = counting::scgf(p, s, h, jobs);
            const auto act = counting::tilted_activity(p, s, ha, jobs);
            const double k_hi = 1.05 * std::max(1e-12, *std::max_element(act.begin(), act.end()));
            std::vector<double> k(static_cast<size_t>(k_points));
            for (long i = 0; i < k_points; ++i) k[static_cast<size_t>(i)] = k_hi * double(i) / double(k_points - 1);
            const auto rf = counting::rate_function(curve, k);
            const auto back = counting::legendre_to_scgf(rf, s);
            for (size_t i = 0; i < s.size(); ++i) curve_out.row({double(p.n_spins), s[i], curve.lambda[i], act[i], back[i]});
            for (size_t i = 0; i < k.size(); ++i) rate_out.row({double(p.n_spins), rf.k[i], rf.phi[i]});
            std::vector<double> row = {double(p.n_spins), curve.left_derivative, curve.right_derivative,
                                       rf.plateau ? 1.0 : 0.0, rf.plateau ? rf.plateau_low : NaN,
                                       rf.plateau ? rf.plateau_high : NaN, NaN, NaN, NaN};
            try {
                const auto am = counting::activity_and_mandel(p, h);
                row[6] = am.activity;
                row[7] = am.mandel_q;
                row[8] = am.discontinuous ? 1.0 : 0.0;
            } catch (const std::exception& e) {
                run.failures().record(long(idx), failure_point(p, "activity_and_mandel"), e);
            }
            sum.row(row);
        } catch (const std::exception& e) {
            run.failures().record(long(idx), failure_point(p, "scgf"), e);
        }
    }
    return {run.finish(), run.dir()};
}

RunOutcome emission_run(const json& c, int jobs) {
    const ModelParams p = model_params(c);
    const auto w = get_grid(c, "spectrum.omega");
    const double gamma_det = get_double(c, "spectrum.gamma_det");
    const std::string method = get_string(c, "spectrum.method");
    const long dense_max = get_long(c, "spectrum.dense_max_N");
    const double min_rel = get_double(c, "spectrum.peak_min_rel");
    if (method != "auto" && method != "decomposition" && method != "resolvent")
        throw UsageError("spectrum.method must be auto, decomposition or resolvent");
    if (!(gamma_det > 0.0)) throw UsageError("spectrum.gamma_det must be > 0");
    for (size_t i = 1; i < w.size(); ++i)
        if (!(w[i] > w[i - 1])) throw UsageError("spectrum.omega must be strictly increasing");

    Run run("emission", c, jobs);
    try {
        const auto l = liouvillian::build_liouvillian(p);
        const Operator rho = steady_state_for(p, c);
        const Operator d = spin::jump_operator(p);
        const double ddag_d = expect(d.adjoint() * d, rho);
        std::vector<double> cont, broad;
        json deltas = json::array();
        std::string route = method;
        if (method == "auto") route = (p.n_spins <= dense_max || at_strong_symmetry(p)) ? "decomposition" : "resolvent";
        if (route == "decomposition") {
            try {
                const auto sp = liouvillian::liouvillian_spectrum(l);
                run.results()["condition_estimate"] = sp.condition_estimate;
                const auto res = emission::emission_spectrum(l, sp, rho, w, jobs);
                cont = res.continuous;
                broad = emission::broadened_spectrum(res, gamma_det);
                for (const auto& dp : res.deltas)
                    deltas.push_back({{"omega", dp.omega}, {"L_weight", dp.l_weight}, {"K_weight", dp.k_weight}});
            } catch (const DefectiveSpectrum& e) {
                if (method != "auto" || at_strong_symmetry(p)) throw;
                run.results()["decomposition_refused"] = e.what();
                route = "resolvent";
            }
        }
        if (route == "resolvent") {
            cont = emission::resolvent_spectrum(l, rho, w, jobs);
            const double coherent = std::norm((d * rho).trace());
            deltas.push_back({{"omega", 0.0}, {"L_weight", coherent}, {"K_weight", 0.0}});
            broad = cont;
            const double half = 0.5 * gamma_det;
            for (size_t i = 0; i < w.size(); ++i) broad[i] += coherent * half / (half * half + w[i] * w[i]) / PI;
        }
        run.results()["route"] = route;
        run.results()["ddag_d"] = ddag_d;
        run.results()["integral_broadened"] = emission::integrate(w, broad);
        auto& out = run.dataset("spectrum", {"omega", "S_continuous", "S_broadened"},
                                "emission spectrum: continuous part and detector-broadened total");
        for (size_t i = 0; i < w.size(); ++i) out.row({w[i], cont[i], broad[i]});
        auto& peaks = run.dataset("peaks", {"omega", "height", "half_width", "resolved"},
                                  "local maxima of the broadened spectrum");
        for (const auto& pk : emission::find_peaks(w, broad, min_rel))
            peaks.row({pk.omega, pk.height, pk.resolved ? pk.half_width : NaN, pk.resolved ? 1.0 : 0.0});
        run.attach_json("deltas", deltas);
    } catch (const std::exception& e) {
        run.failures().record(0, failure_point(p, "spectrum"), e);
    }
    return {run.finish(), run.dir()};
}

}  // namespace sslab::cli
