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

#include <map>

#include "experiments_impl.hpp"

namespace sslab::cli {

RunOutcome mean_field_flow(const json& c, int jobs) {
    const ModelParams p = model_params(c);
    const auto theta0 = get_grid(c, "flow.Theta0");
    const auto phi0 = get_grid(c, "flow.Phi0");
    const double t_max = get_double(c, "flow.t_max");
    const double step = get_double(c, "flow.step");
    const int every = static_cast<int>(get_long(c, "flow.sample_every"));
    const double tol = get_double(c, "flow.return_tol");
    std::vector<std::pair<double, double>> starts;
    for (double a : theta0)
        for (double b : phi0) starts.push_back({a, b});
    Run run("mean-field-flow", c, jobs);
    try {
        const auto fp = mean_field::fixed_point(p);
        run.results()["fixed_point"] = {fp.x(), fp.y(), fp.z()};
    } catch (const OutOfValidity&) {
        run.results()["fixed_point"] = nullptr;
    }
    std::vector<mean_field::FlowPath> paths(starts.size());
    std::vector<std::vector<double>> summary(starts.size());
    parallel_for(static_cast<long>(starts.size()), jobs, [&](long i) {
        const auto [a, b] = starts[static_cast<size_t>(i)];
        std::vector<double> r = {double(i), a, b, NaN, NaN, NaN, NaN, NaN, NaN};
        try {
            const auto s0 = mean_field::from_angles({a, b});
            auto path = mean_field::mf_flow(s0, p, t_max, step, every);
            const auto rec = mean_field::first_return(path, s0, tol);
            r[3] = rec.returned ? 1.0 : 0.0;
            r[4] = rec.returned ? rec.time : NaN;
            r[5] = rec.returned ? rec.distance : NaN;
            const auto& last = path.s.back();
            r[6] = last.x();
            r[7] = last.y();
            r[8] = last.z();
            paths[static_cast<size_t>(i)] = std::move(path);
        } catch (const std::exception& e) {
            run.failures().record(i, failure_point(p, "flow", {{"Theta0", a}, {"Phi0", b}}), e);
        }
        summary[static_cast<size_t>(i)] = std::move(r);
    });
    auto& flow = run.dataset("flow", {"trajectory", "t", "sx", "sy", "sz"}, "mean-field Bloch-vector trajectories");
    for (size_t i = 0; i < paths.size(); ++i)
        for (size_t k = 0; k < paths[i].t.size(); ++k)
            flow.row({double(i), paths[i].t[k], paths[i].s[k].x(), paths[i].s[k].y(), paths[i].s[k].z()});
    auto& sum = run.dataset("summary",
                            {"trajectory", "Theta0", "Phi0", "returned", "return_time", "return_distance", "final_sx",
                             "final_sy", "final_sz"},
                            "per-trajectory first return to the initial point (closed orbits) and final state");
    for (const auto& r : summary) sum.row(r);
    return {run.finish(), run.dir()};
}

RunOutcome trajectory_freezing(const json& c, int jobs) {
    const ModelParams p = model_params(c);
    const auto ms = get_grid(c, "initial.m");
    const auto amps = get_grid(c, "initial.amplitude");
    if (ms.size() != amps.size()) throw UsageError("initial.m and initial.amplitude differ in length");
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    CVector psi0 = CVector::Zero(p.dim());
    for (size_t i = 0; i < ms.size(); ++i)
        psi0 += amps[i] * basis[static_cast<size_t>(ladder_index(ms[i], p, "initial.m"))].vector;
    if (psi0.norm() == 0.0) throw UsageError("initial state has zero norm");
    psi0.normalize();
    const long n_traj = get_long(c, "run.n_traj");
    const double t_max = get_double(c, "run.t_max");
    trajectories::EnsembleOptions eo;
    eo.trajectory.dt = get_double(c, "run.dt");
    eo.trajectory.sample_dt = get_double(c, "run.sample_dt");
    eo.base_seed = static_cast<std::uint64_t>(get_long(c, "run.base_seed"));
    eo.jobs = jobs;
    trajectories::FreezingOptions fo;
    fo.threshold = get_double(c, "freezing.threshold");
    fo.confirmation_window = get_double(c, "freezing.confirmation_window");
    fo.fit_start = get_double(c, "freezing.fit_start");
    fo.fit_floor = get_double(c, "freezing.fit_floor");
    const long keep = has(c, "run.save_trajectories") ? get_long(c, "run.save_trajectories") : 0;

    Run run("trajectory-freezing", c, jobs);
    try {
        const auto recs = trajectories::run_ensemble(p, psi0 * psi0.adjoint(), t_max, n_traj, eo);
        auto& sum = run.dataset("summary",
                                {"trajectory", "seed", "n_jumps", "frozen", "selected_m", "freeze_time", "fit_valid",
                                 "fit_rate", "fit_r2"},
                                "per-trajectory freezing report in the S_x basis");
        std::map<long, long> picks;
        long frozen = 0, fits = 0, good = 0;
        for (size_t i = 0; i < recs.size(); ++i) {
            const auto rep = trajectories::freezing_report(recs[i], basis, fo);
            sum.row({double(i), double(recs[i].seed), double(recs[i].n_jumps), rep.frozen ? 1.0 : 0.0,
                     rep.frozen ? rep.selected_m : NaN, rep.frozen ? rep.freeze_time : NaN, rep.fit_valid ? 1.0 : 0.0,
                     rep.fit_valid ? rep.fit_rate : NaN, rep.fit_valid ? rep.fit_r2 : NaN});
            if (rep.frozen) {
                ++frozen;
                ++picks[std::lround(2.0 * rep.selected_m)];
                if (rep.fit_valid) {
                    ++fits;
                    good += rep.fit_r2 > 0.95;
                }
            }
            if (static_cast<long>(i) < keep) {
                std::vector<std::string> cols = {"t"};
                for (double m : rep.m_values) cols.push_back("p(m=" + format_number(m) + ")");
                auto& tr = run.dataset("trajectory_" + std::to_string(i), cols,
                                       "S_x sector occupations along trajectory " + std::to_string(i));
                for (Eigen::Index k = 0; k < rep.occupations.rows(); ++k) {
                    std::vector<double> row = {rep.t[static_cast<size_t>(k)]};
                    for (Eigen::Index m = 0; m < rep.occupations.cols(); ++m) row.push_back(rep.occupations(k, m));
                    tr.row(row);
                }
                auto& jumps = run.dataset("trajectory_" + std::to_string(i) + "_jumps", {"jump", "t"},
                                          "jump times of trajectory " + std::to_string(i));
                for (size_t k = 0; k < recs[i].jump_times.size(); ++k) jumps.row({double(k), recs[i].jump_times[k]});
            }
        }
        auto& sel = run.dataset("selection", {"m", "count", "frequency", "expected", "sigma"},
                                "selected sector frequencies among frozen trajectories vs initial weights");
        double norm = 0.0;
        for (double a : amps) norm += a * a;
        for (size_t i = 0; i < ms.size(); ++i) {
            const double expected = amps[i] * amps[i] / norm;
            const long count = picks[std::lround(2.0 * ms[i])];
            const double f = frozen > 0 ? double(count) / double(frozen) : NaN;
            const double sigma = frozen > 0 ? std::sqrt(expected * (1.0 - expected) / double(frozen)) : NaN;
            sel.row({ms[i], double(count), f, expected, sigma});
        }
        run.results()["frozen_fraction"] = double(frozen) / double(n_traj);
        run.results()["fits"] = fits;
        run.results()["fits_r2_above_0.95"] = good;
    } catch (const std::exception& e) {
        run.failures().record(0, failure_point(p, "ensemble"), e);
    }
    return {run.finish(), run.dir()};
}

}  // namespace sslab::cli
