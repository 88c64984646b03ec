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
#include <map>

#include "experiments_impl.hpp"

namespace sslab::cli {

namespace {

struct Point {
    ModelParams p;
    long index;
};

std::vector<Point> omega_theta_points(const json& c, ModelParams base) {
    std::vector<Point> pts;
    for (double th : get_grid(c, "scan.theta"))
        for (double w : get_grid(c, "scan.omega")) {
            base.theta = th;
            base.omega = w;
            pts.push_back({base, static_cast<long>(pts.size())});
        }
    return pts;
}

}  // namespace

RunOutcome phase_scan(const json& c, int jobs) {
    const ModelParams base = model_params(c);
    const auto pts = omega_theta_points(c, base);
    Run run("phase-scan", c, jobs);
    std::vector<std::vector<double>> rows(pts.size());
    parallel_for(static_cast<long>(pts.size()), jobs, [&](long i) {
        const ModelParams& p = pts[static_cast<size_t>(i)].p;
        double m = NaN;
        try {
            if (const auto mm = mean_field::magnetization(p)) m = *mm;
        } catch (const OutOfValidity&) {
        }
        std::vector<double> r = {p.omega, p.theta, NaN, NaN, NaN, NaN, mean_field::critical_omega(p.theta, p.gamma), m};
        try {
            const Operator rho = steady_state_for(p, c);
            const auto ops = spin::build_spin_operators(p);
            const Operator d = spin::jump_operator(ops, p.theta);
            const Operator n1 = d.adjoint() * d;
            const double dd = expect(n1, rho);
            r[2] = expect(ops.sz, rho) / p.j();
            r[4] = p.gamma / p.j() * dd;
            // g2 is undefined in the dark state.
            if (dd > 1e-12 * p.j()) r[5] = expect(d.adjoint() * n1 * d, rho) / (dd * dd);
            try {
                r[3] = hp::spin_squeezing_numeric(rho, ops).xi2;
            } catch (const std::exception& e) {
                run.failures().record(i, failure_point(p, "xi2"), e);
            }
        } catch (const std::exception& e) {
            run.failures().record(i, failure_point(p, "steady_state"), e);
        }
        rows[static_cast<size_t>(i)] = std::move(r);
    });
    auto& out = run.dataset("phase_scan", {"omega", "theta", "sz", "xi2", "activity", "g2", "omega_c", "mf_magnetization"},
                            "steady-state observables per (omega, theta); sz = <S_z>/J, activity = (Gamma/J)<D^dag D>, "
                            "g2 = <D^dag^2 D^2>/<D^dag D>^2, omega_c = critical drive, mf_magnetization = mean-field "
                            "s_z (nan where no fixed point)");
    for (const auto& r : rows) out.row(r);
    return {run.finish(), run.dir()};
}

RunOutcome gap_map(const json& c, int jobs) {
    const ModelParams base = model_params(c);
    const auto pts = omega_theta_points(c, base);
    const long dense_max = has(c, "run.dense_max_N") ? get_long(c, "run.dense_max_N") : 30;
    Run run("gap", c, jobs);
    std::vector<std::vector<double>> rows(pts.size());
    parallel_for(static_cast<long>(pts.size()), jobs, [&](long i) {
        const ModelParams& p = pts[static_cast<size_t>(i)].p;
        std::vector<double> r = {p.omega, p.theta, NaN, NaN, mean_field::critical_omega(p.theta, p.gamma), NaN};
        try {
            const auto l = liouvillian::build_liouvillian(p);
            const double a = p.n_spins <= dense_max ? liouvillian::adr(liouvillian::liouvillian_spectrum(l)).value
                                                    : liouvillian::adr_sparse(l).value;
            r[2] = a;
            r[3] = std::log10(a);
        } catch (const std::exception& e) {
            run.failures().record(i, failure_point(p, "adr"), e);
        }
        try {
            r[5] = hp::hp_gap(p);
        } catch (const OutOfValidity&) {
        }
        rows[static_cast<size_t>(i)] = std::move(r);
    });
    auto& out = run.dataset("gap", {"omega", "theta", "adr", "log10_adr", "omega_c", "hp_gap"},
                            "asymptotic decay rate per (omega, theta); hp_gap = quadratic-boson prediction "
                            "(nan outside its validity)");
    std::map<double, std::pair<double, double>> minima;  // theta -> (omega, adr)
    for (const auto& r : rows) {
        out.row(r);
        if (!std::isfinite(r[2])) continue;
        auto it = minima.find(r[1]);
        if (it == minima.end() || r[2] < it->second.second) minima[r[1]] = {r[0], r[2]};
    }
    auto& mins = run.dataset("gap_minimum", {"theta", "omega_at_min", "adr_min", "omega_c"},
                             "minimum of the ADR over the omega grid at each theta");
    for (const auto& [th, v] : minima) mins.row({th, v.first, v.second, mean_field::critical_omega(th, base.gamma)});
    return {run.finish(), run.dir()};
}

RunOutcome liouville_spectrum(const json& c, int jobs) {
    const ModelParams p = model_params(c);
    const bool compare = has(c, "run.compare_rwa") && get_bool(c, "run.compare_rwa");
    Run run("liouville-spectrum", c, jobs);
    try {
        const auto sp = liouvillian::liouvillian_spectrum(liouvillian::build_liouvillian(p));
        run.results()["condition_estimate"] = sp.condition_estimate;
        run.results()["defective"] = sp.defective;
        run.results()["n_steady"] = sp.steady.size();
        run.results()["adr"] = liouvillian::adr(sp).value;
        run.results()["warnings"] = sp.warnings;
        std::vector<cplx> closed;
        std::vector<std::array<double, 3>> labels;
        if (compare) {
            try {
                for (int q = 0; q <= p.n_spins; ++q)
                    for (int k = 0; k <= p.n_spins - q; ++k)
                        for (int sg : {1, -1}) {
                            closed.push_back(liouvillian::rwa_eigenvalue(p, q, k, sg));
                            labels.push_back({double(q), double(k), double(sg)});
                        }
            } catch (const std::exception& e) {
                closed.clear();
                labels.clear();
                run.failures().record(0, failure_point(p, "rwa_eigenvalue"), e);
            }
        }
        auto& out = run.dataset("eigenvalues", {"index", "re", "im", "rwa_re", "rwa_im", "rwa_distance"},
                                "Liouvillian eigenvalues (descending real part) and the nearest rotating-wave value");
        for (Eigen::Index mu = 0; mu < sp.eigenvalues.size(); ++mu) {
            const cplx l = sp.eigenvalues(mu);
            double best = NaN;
            cplx near(NaN, NaN);
            for (const auto& z : closed)
                if (!(std::abs(z - l) >= best)) {
                    best = std::abs(z - l);
                    near = z;
                }
            out.row({double(mu), l.real(), l.imag(), near.real(), near.imag(), best});
        }
        if (!closed.empty()) {
            auto& rwa = run.dataset("rwa_eigenvalues", {"q", "k", "sign", "re", "im"},
                                    "closed-form rotating-wave eigenvalues lambda^sign_{q,k}");
            for (size_t i = 0; i < closed.size(); ++i)
                rwa.row({labels[i][0], labels[i][1], labels[i][2], closed[i].real(), closed[i].imag()});
        }
    } catch (const std::exception& e) {
        run.failures().record(0, failure_point(p, "spectrum"), e);
    }
    return {run.finish(), run.dir()};
}

RunOutcome squeezing(const json& c, int jobs) {
    const ModelParams base = model_params(c);
    std::vector<Point> pts;
    for (double n : get_grid(c, "scan.N"))
        for (double th : get_grid(c, "scan.theta")) {
            ModelParams p = base;
            p.n_spins = static_cast<int>(std::lround(n));
            p.theta = th;
            try {
                validate(p);
            } catch (const std::exception& e) {
                throw UsageError(std::string("scan: ") + e.what());
            }
            pts.push_back({p, static_cast<long>(pts.size())});
        }
    Run run("squeezing", c, jobs);
    std::vector<std::vector<double>> rows(pts.size());
    parallel_for(static_cast<long>(pts.size()), jobs, [&](long i) {
        const ModelParams& p = pts[static_cast<size_t>(i)].p;
        std::vector<double> r = {double(p.n_spins), p.theta, NaN, NaN, NaN, NaN, NaN};
        try {
            const Operator rho = steady_state_for(p, c);
            const auto ops = spin::build_spin_operators(p);
            r[2] = expect(ops.sz, rho) / p.j();
            const auto sq = hp::spin_squeezing_numeric(rho, ops);
            r[3] = sq.xi2;
            r[4] = sq.phi;
        } catch (const std::exception& e) {
            run.failures().record(i, failure_point(p, "xi2"), e);
        }
        try {
            r[5] = hp::spin_squeezing_analytic(p);
        } catch (const OutOfValidity&) {
        }
        try {
            r[6] = hp::spin_squeezing_closed_form(p);
        } catch (const OutOfValidity&) {
        }
        rows[static_cast<size_t>(i)] = std::move(r);
    });
    auto& out = run.dataset("squeezing", {"N", "theta", "sz", "xi2", "phi", "xi2_hp", "xi2_closed_form"},
                            "steady-state squeezing parameter; xi2_hp and xi2_closed_form are the quadratic-boson "
                            "predictions (nan outside their validity)");
    for (const auto& r : rows) out.row(r);
    return {run.finish(), run.dir()};
}

}  // namespace sslab::cli
