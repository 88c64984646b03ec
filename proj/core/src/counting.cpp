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

#include "sslab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "sslab/errors.hpp"
#include "sslab/parallel.hpp"

namespace sslab::counting {

namespace {

// Sizes up to this N use dense eigenvalues for lambda(s).
constexpr int DENSE_SCGF_MAX_SPINS = 24;

double poisson_pmf(long k, double mean) {
    if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

// Second divided difference of lambda at grid index i.
double curvature(const ScgfCurve& c, size_t i) {
    const double l = (c.lambda[i] - c.lambda[i - 1]) / (c.s[i] - c.s[i - 1]);
    const double r = (c.lambda[i + 1] - c.lambda[i]) / (c.s[i + 1] - c.s[i]);
    return 2.0 * (r - l) / (c.s[i + 1] - c.s[i - 1]);
}

// A kink shows up as a curvature spike against both neighbours; parabolic
// refinement is only applied where the curvature varies slowly.
bool locally_smooth(const ScgfCurve& c, size_t i) {
    const double mid = curvature(c, i);
    const double side = std::max(curvature(c, i - 1), curvature(c, i + 1));
    return mid <= 2.0 * side + 1e-12;
}

}  // namespace

double CountingDistribution::mean() const {
    double m = 0.0;
    for (size_t k = 0; k < p.size(); ++k) m += k * p[k];
    return m;
}

double CountingDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (size_t k = 0; k < p.size(); ++k) v += (k - m) * (k - m) * p[k];
    return v;
}

CountingDistribution exact_counting_pmf(const std::vector<SectorWeight>& weights, const ModelParams& params,
                                        double horizon, long k_max) {
    validate(params);
    if (!at_strong_symmetry(params))
        throw OutOfValidity("exact_counting_pmf: the Poisson-mixture form holds only at theta = pi/4");
    if (!(horizon >= 0.0)) throw InvalidParameter("exact_counting_pmf: horizon must be >= 0");
    if (weights.empty()) throw InvalidParameter("exact_counting_pmf: no sector weights");
    double total = 0.0;
    double top_mean = 0.0;
    for (const auto& w : weights) {
        if (w.c < 0.0) throw InvalidParameter("exact_counting_pmf: weights must be nonnegative");
        total += w.c;
        if (w.c > 0.0) top_mean = std::max(top_mean, trajectories::sector_jump_rate(w.m, params) * horizon);
    }
    if (std::abs(total - 1.0) > 1e-10) throw InvalidParameter("exact_counting_pmf: weights must sum to 1");
    if (k_max < 0) k_max = static_cast<long>(std::ceil(top_mean + 8.0 * std::sqrt(top_mean))) + 1;
    CountingDistribution d;
    d.horizon = horizon;
    d.source = "exact";
    d.p.assign(static_cast<size_t>(k_max) + 1, 0.0);
    for (const auto& w : weights) {
        if (w.c == 0.0) continue;
        const double mean = trajectories::sector_jump_rate(w.m, params) * horizon;
        for (long k = 0; k <= k_max; ++k) d.p[static_cast<size_t>(k)] += w.c * poisson_pmf(k, mean);
    }
    d.truncated_mass = std::max(0.0, 1.0 - std::accumulate(d.p.begin(), d.p.end(), 0.0));
    return d;
}

CountingDistribution mc_counting_pmf(const ModelParams& params, const Operator& rho0, double horizon, long n_traj,
                                     const trajectories::EnsembleOptions& opt) {
    auto eo = opt;
    eo.trajectory.sample_dt = 0.0;
    const auto recs = trajectories::run_ensemble(params, rho0, horizon, n_traj, eo);
    CountingDistribution d;
    d.horizon = horizon;
    d.source = "monte-carlo";
    d.n_samples = n_traj;
    long kmax = 0;
    for (const auto& r : recs) {
        d.samples.push_back(r.n_jumps);
        kmax = std::max(kmax, r.n_jumps);
    }
    std::vector<long> counts(static_cast<size_t>(kmax) + 1, 0);
    for (long k : d.samples) ++counts[static_cast<size_t>(k)];
    d.p.resize(counts.size());
    for (size_t k = 0; k < counts.size(); ++k) d.p[k] = static_cast<double>(counts[k]) / static_cast<double>(n_traj);
    if (n_traj < 50) d.warnings.push_back("fewer than 50 trajectories; histogram statistics are poor");
    return d;
}

liouvillian::Superoperator tilted_liouvillian(const ModelParams& params, double s) {
    if (!std::isfinite(s)) throw InvalidParameter("tilted_liouvillian: s must be finite");
    validate(params);
    const auto ops = spin::build_spin_operators(params);
    liouvillian::Superoperator l;
    l.params = params;
    l.matrix = liouvillian::lindblad_generator(params.omega * ops.sx,
                                               {{params.gamma / params.j(), spin::jump_operator(ops, params.theta)}},
                                               std::exp(s));
    return l;
}

CountingDistribution fourier_counting_pmf(const ModelParams& params, const Operator& rho0, double horizon,
                                          long k_max) {
    validate(params);
    if (k_max < 0) throw InvalidParameter("fourier_counting_pmf: k_max must be >= 0");
    const Eigen::Index n = params.dim();
    if (rho0.rows() != n || rho0.cols() != n) throw ContractViolation("fourier_counting_pmf: rho0 dimension");
    long m = 1;
    while (m < 2 * (k_max + 1)) m *= 2;
    const auto ops = spin::build_spin_operators(params);
    const Operator h = params.omega * ops.sx;
    const Operator d = spin::jump_operator(ops, params.theta);
    const double rate = params.gamma / params.j();
    const Eigen::MatrixXcd base = Eigen::MatrixXcd(liouvillian::lindblad_generator(h, {{rate, d}}, 0.0));
    // Jump part alone: w = 1 minus w = 0 with no Hamiltonian.
    const Operator zero = Operator::Zero(n, n);
    const Eigen::MatrixXcd jump = Eigen::MatrixXcd(liouvillian::lindblad_generator(zero, {{rate, d}}, 1.0)) -
                                  Eigen::MatrixXcd(liouvillian::lindblad_generator(zero, {{rate, d}}, 0.0));
    const CVector x0 = liouvillian::vec(rho0);
    const CVector tr = liouvillian::vec(Operator::Identity(n, n));
    std::vector<cplx> g(static_cast<size_t>(m));
    const long half = m / 2;
    for (long j = 0; j <= half; ++j) {
        const double phi = 2.0 * PI * static_cast<double>(j) / static_cast<double>(m);
        const Eigen::MatrixXcd w = (base + std::polar(1.0, phi) * jump) * horizon;
        const Eigen::MatrixXcd e = w.exp();
        g[static_cast<size_t>(j)] = tr.dot(e * x0);
    }
    for (long j = half + 1; j < m; ++j) g[static_cast<size_t>(j)] = std::conj(g[static_cast<size_t>(m - j)]);
    Eigen::FFT<double> fft;
    std::vector<cplx> out;
    fft.fwd(out, g);
    CountingDistribution dist;
    dist.horizon = horizon;
    dist.source = "fourier";
    dist.p.resize(static_cast<size_t>(k_max) + 1);
    for (long k = 0; k <= k_max; ++k)
        dist.p[static_cast<size_t>(k)] = std::max(0.0, out[static_cast<size_t>(k)].real() / static_cast<double>(m));
    dist.truncated_mass = std::max(0.0, 1.0 - std::accumulate(dist.p.begin(), dist.p.end(), 0.0));
    return dist;
}

double scgf_value(const ModelParams& params, double s) {
    const auto l = tilted_liouvillian(params, s);
    if (params.n_spins <= DENSE_SCGF_MAX_SPINS) {
        const CVector ev = numerics::eigenvalues_general(l.dense());
        return ev(0).real();
    }
    // The leading eigenvalue is real with a positive eigenmatrix rho, so
    // lambda(s) = (e^s - 1) (Gamma/J) Tr[D^dag D rho] lies between the extreme
    // eigenvalues of D^dag D. A real shift just above that bound has lambda(s)
    // as its nearest eigenvalue.
    const Operator d = spin::jump_operator(params);
    const Eigen::VectorXd dd = Eigen::SelfAdjointEigenSolver<Operator>(d.adjoint() * d).eigenvalues();
    const double factor = (std::exp(s) - 1.0) * params.gamma / params.j();
    const double bound = std::max(factor * dd.minCoeff(), factor * dd.maxCoeff());
    const double shift = bound + 1e-3 * params.gamma * std::max(1.0, std::abs(bound));
    numerics::ArnoldiOptions ao;
    ao.n_wanted = 4;
    const auto res = numerics::eigs_shift_invert(l.matrix, cplx(shift, 0.0), ao);
    double best = -std::numeric_limits<double>::infinity();
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index q = 0; q < res.eigenvalues.size(); ++q) {
        const double dist = std::abs(res.eigenvalues(q) - shift);
        if (dist < best_dist) {
            best_dist = dist;
            best = res.eigenvalues(q).real();
        }
    }
    return best;
}

ScgfCurve scgf(const ModelParams& params, const std::vector<double>& s_grid, double h, int jobs) {
    if (!std::is_sorted(s_grid.begin(), s_grid.end())) throw InvalidParameter("scgf: the s grid must be ascending");
    if (!(h > 0.0)) throw InvalidParameter("scgf: h must be > 0");
    ScgfCurve c;
    c.s = s_grid;
    c.h = h;
    c.lambda.assign(s_grid.size(), 0.0);
    const std::vector<double> extra = {-2.0 * h, -h, 0.0, h, 2.0 * h};
    std::vector<double> ev(extra.size());
    const long n_grid = static_cast<long>(s_grid.size());
    parallel_for(n_grid + static_cast<long>(extra.size()), jobs, [&](long i) {
        if (i < n_grid)
            c.lambda[static_cast<size_t>(i)] = scgf_value(params, s_grid[static_cast<size_t>(i)]);
        else
            ev[static_cast<size_t>(i - n_grid)] = scgf_value(params, extra[static_cast<size_t>(i - n_grid)]);
    });
    // Second-order one-sided differences.
    c.right_derivative = (-3.0 * ev[2] + 4.0 * ev[3] - ev[4]) / (2.0 * h);
    c.left_derivative = (3.0 * ev[2] - 4.0 * ev[1] + ev[0]) / (2.0 * h);
    return c;
}

std::vector<double> tilted_activity(const ModelParams& params, const std::vector<double>& s_grid, double h,
                                    int jobs) {
    if (!(h > 0.0)) throw InvalidParameter("tilted_activity: h must be > 0");
    std::vector<double> out(s_grid.size());
    parallel_for(static_cast<long>(s_grid.size()), jobs, [&](long i) {
        const double s = s_grid[static_cast<size_t>(i)];
        out[static_cast<size_t>(i)] = (scgf_value(params, s + h) - scgf_value(params, s - h)) / (2.0 * h);
    });
    return out;
}

ActivityResult activity_and_mandel(const ModelParams& params, double h) {
    if (!(h > 0.0)) throw InvalidParameter("activity_and_mandel: h must be > 0");
    const double l0 = scgf_value(params, 0.0);
    const double lp = scgf_value(params, h);
    const double lm = scgf_value(params, -h);
    const double lp2 = scgf_value(params, 2.0 * h);
    const double lm2 = scgf_value(params, -2.0 * h);
    ActivityResult r;
    r.right_derivative = (-3.0 * l0 + 4.0 * lp - lp2) / (2.0 * h);
    r.left_derivative = (3.0 * l0 - 4.0 * lm + lm2) / (2.0 * h);
    r.discontinuous = std::abs(r.right_derivative - r.left_derivative) > 10.0 * h;
    r.activity = (lp - lm) / (2.0 * h);
    r.richardson_delta = std::abs(r.activity - (lp2 - lm2) / (4.0 * h));
    const double second = (lp - 2.0 * l0 + lm) / (h * h);
    r.mandel_q = r.activity > 0.0 ? second / r.activity - 1.0 : std::numeric_limits<double>::quiet_NaN();
    try {
        const auto rho = liouvillian::steady_state(liouvillian::build_liouvillian(params));
        const Operator d = spin::jump_operator(params);
        r.steady_state_activity = params.gamma / params.j() * (d.adjoint() * d * rho).trace().real();
    } catch (const SingularityError&) {
        r.steady_state_activity = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

RateFunction rate_function(const ScgfCurve& curve, const std::vector<double>& k_grid) {
    const size_t n = curve.s.size();
    if (n < 3 || curve.lambda.size() != n) throw InvalidParameter("rate_function: curve needs >= 3 points");
    double scale = 1.0;
    for (double v : curve.lambda) scale = std::max(scale, std::abs(v));
    for (size_t i = 1; i + 1 < n; ++i) {
        const double s1 = (curve.lambda[i] - curve.lambda[i - 1]) / (curve.s[i] - curve.s[i - 1]);
        const double s2 = (curve.lambda[i + 1] - curve.lambda[i]) / (curve.s[i + 1] - curve.s[i]);
        if (s2 - s1 < -1e-8 * std::max(1.0, std::abs(s1)) * std::max(1.0, scale))
            throw NumericalError("rate_function: lambda(s) is not convex near s = " + std::to_string(curve.s[i]));
    }
    RateFunction rf;
    rf.k = k_grid;
    rf.phi.resize(k_grid.size());
    for (size_t q = 0; q < k_grid.size(); ++q) {
        const double k = k_grid[q];
        size_t best = 0;
        double bv = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            const double g = k * curve.s[i] - curve.lambda[i];
            if (g > bv) {
                bv = g;
                best = i;
            }
        }
        if (best > 1 && best + 2 < n && locally_smooth(curve, best)) {
            // Parabola through the neighbours of the grid maximum.
            const double x0 = curve.s[best - 1], x1 = curve.s[best], x2 = curve.s[best + 1];
            const double y0 = k * x0 - curve.lambda[best - 1], y1 = bv, y2 = k * x2 - curve.lambda[best + 1];
            const double d1 = (y1 - y0) / (x1 - x0);
            const double d2 = (y2 - y1) / (x2 - x1);
            const double a = (d2 - d1) / (x2 - x0);
            if (a < 0.0) {
                const double xv = 0.5 * (x0 + x1) - d1 / (2.0 * a);
                if (xv > x0 && xv < x2) bv = std::max(bv, y0 + d1 * (xv - x0) + a * (xv - x0) * (xv - x1));
            }
        }
        rf.phi[q] = bv;
    }
    if (curve.right_derivative - curve.left_derivative > 10.0 * curve.h) {
        rf.plateau = true;
        rf.plateau_low = curve.left_derivative;
        rf.plateau_high = curve.right_derivative;
    }
    return rf;
}

std::vector<double> legendre_to_scgf(const RateFunction& rf, const std::vector<double>& s_grid) {
    std::vector<double> out(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (size_t q = 0; q < rf.k.size(); ++q) best = std::max(best, rf.k[q] * s_grid[i] - rf.phi[q]);
        out[i] = best;
    }
    return out;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    const size_t n = std::max(p.size(), q.size());
    double tv = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const double a = k < p.size() ? p[k] : 0.0;
        const double b = k < q.size() ? q[k] : 0.0;
        tv += std::abs(a - b);
    }
    return 0.5 * tv;
}

double binned_total_variation(const std::vector<long>& samples, const std::vector<double>& pmf) {
    if (samples.size() < 2) throw InvalidParameter("binned_total_variation: need at least two samples");
    std::vector<long> s = samples;
    std::sort(s.begin(), s.end());
    const size_t n = s.size();
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const size_t lo = static_cast<size_t>(std::floor(pos));
        const size_t hi = std::min(n - 1, lo + 1);
        return s[lo] + (pos - lo) * (s[hi] - s[lo]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const long width = std::max<long>(1, static_cast<long>(std::ceil(2.0 * iqr / std::cbrt(static_cast<double>(n)))));
    const long top = std::max<long>(s.back(), static_cast<long>(pmf.size()) - 1);
    const long n_bins = top / width + 1;
    std::vector<double> emp(static_cast<size_t>(n_bins), 0.0), ref(static_cast<size_t>(n_bins), 0.0);
    for (long k : s) emp[static_cast<size_t>(k / width)] += 1.0 / static_cast<double>(n);
    for (size_t k = 0; k < pmf.size(); ++k) ref[k / static_cast<size_t>(width)] += pmf[k];
    return total_variation(emp, ref);
}

std::vector<long> find_modes(const std::vector<double>& p, double min_rel, double dip_ratio) {
    std::vector<long> peaks;
    if (p.empty()) return peaks;
    const double top = *std::max_element(p.begin(), p.end());
    const long n = static_cast<long>(p.size());
    for (long k = 0; k < n; ++k) {
        const bool left = k == 0 || p[k] > p[k - 1];
        const bool right = k == n - 1 || p[k] >= p[k + 1];
        if (left && right && p[k] >= min_rel * top && p[k] > 0.0) peaks.push_back(k);
    }
    bool merged = true;
    while (merged && peaks.size() > 1) {
        merged = false;
        for (size_t i = 0; i + 1 < peaks.size(); ++i) {
            const long a = peaks[i];
            const long b = peaks[i + 1];
            const double valley = *std::min_element(p.begin() + a, p.begin() + b + 1);
            if (valley > dip_ratio * std::min(p[a], p[b])) {
                if (p[a] >= p[b])
                    peaks.erase(peaks.begin() + static_cast<long>(i) + 1);
                else
                    peaks.erase(peaks.begin() + static_cast<long>(i));
                merged = true;
                break;
            }
        }
    }
    return peaks;
}

}  // namespace sslab::counting
