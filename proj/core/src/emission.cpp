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

#include "sslab/emission.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/SparseLU>

#include "sslab/errors.hpp"
#include "sslab/parallel.hpp"

namespace sslab::emission {

namespace {

// Grid points handed to one worker at a time.
constexpr long CHUNK = 512;

void check_stationary(const liouvillian::Superoperator& l, const Operator& rho_ss, const char* who) {
    const Eigen::Index n = l.hilbert_dim();
    if (rho_ss.rows() != n || rho_ss.cols() != n)
        throw ContractViolation(std::string(who) + ": rho_ss has the wrong dimension");
    const double r = (l.matrix * liouvillian::vec(rho_ss)).norm();
    if (!(r < 1e-8))
        throw ContractViolation(std::string(who) + ": rho_ss is not stationary (|L rho_ss| = " + std::to_string(r) +
                                ")");
}

// c_mu = Tr[a rho_R,mu] Tr[rho_L,mu rho_ss a^dag]
CVector mode_weights(const liouvillian::Superoperator& l, const liouvillian::LiouvillianSpectrum& spectrum,
                     const Operator& rho_ss) {
    if (spectrum.defective)
        throw DefectiveSpectrum("emission: spectrum is near an exceptional point; mode weights are undefined");
    const Operator a = spin::jump_operator(l.params);
    // Tr[a X] = vec(a^T) . vec(X)
    const CVector a_row = liouvillian::vec(Operator(a.transpose()));
    const CVector x = liouvillian::vec(Operator(rho_ss * a.adjoint()));
    const CVector left_part = spectrum.left * x;
    const CVector right_part = spectrum.right.transpose() * a_row;
    return right_part.cwiseProduct(left_part);
}

void for_chunks(long n, int jobs, const std::function<void(long, long)>& body) {
    const long n_chunks = (n + CHUNK - 1) / CHUNK;
    parallel_for(n_chunks, jobs, [&](long c) { body(c * CHUNK, std::min(n, (c + 1) * CHUNK)); });
}

}  // namespace

std::vector<cplx> two_time_correlator(const liouvillian::Superoperator& l,
                                      const liouvillian::LiouvillianSpectrum& spectrum, const Operator& rho_ss,
                                      const std::vector<double>& tau_grid) {
    check_stationary(l, rho_ss, "two_time_correlator");
    const CVector c = mode_weights(l, spectrum, rho_ss);
    std::vector<cplx> out(tau_grid.size());
    for (size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] >= 0.0)) throw InvalidParameter("two_time_correlator: tau must be >= 0");
        cplx acc = 0.0;
        for (Eigen::Index mu = 0; mu < c.size(); ++mu) acc += c(mu) * std::exp(spectrum.eigenvalues(mu) * tau_grid[i]);
        out[i] = acc;
    }
    return out;
}

SpectrumResult emission_spectrum(const liouvillian::Superoperator& l,
                                 const liouvillian::LiouvillianSpectrum& spectrum, const Operator& rho_ss,
                                 const std::vector<double>& omega_grid, int jobs) {
    check_stationary(l, rho_ss, "emission_spectrum");
    const CVector c = mode_weights(l, spectrum, rho_ss);
    SpectrumResult res;
    res.omega = omega_grid;
    res.zero_tolerance = spectrum.zero_tolerance;
    res.continuous.assign(omega_grid.size(), 0.0);
    const bool unique = spectrum.steady.size() == 1;
    std::vector<Eigen::Index> lossy;
    const double weight_scale = std::max(1e-300, c.cwiseAbs().maxCoeff());
    for (Eigen::Index mu = 0; mu < c.size(); ++mu) {
        res.total_weight += c(mu).real();
        const bool zero_real = std::find(spectrum.zero_real.begin(), spectrum.zero_real.end(), mu) !=
                               spectrum.zero_real.end();
        if (!zero_real) {
            lossy.push_back(mu);
            continue;
        }
        if (unique && std::abs(c(mu).imag()) > 1e-8 * std::max(1.0, weight_scale))
            throw ConsistencyError("emission_spectrum: dispersive weight " + std::to_string(c(mu).imag()) +
                                   " on a delta term with a unique steady state");
        res.deltas.push_back({-spectrum.eigenvalues(mu).imag(), c(mu).real(), unique ? 0.0 : c(mu).imag(), mu});
    }
    for_chunks(static_cast<long>(omega_grid.size()), jobs, [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            const double w = omega_grid[static_cast<size_t>(i)];
            double s = 0.0;
            for (Eigen::Index mu : lossy) {
                const double half = -spectrum.eigenvalues(mu).real();
                const double detune = w + spectrum.eigenvalues(mu).imag();
                s += (half * c(mu).real() - detune * c(mu).imag()) / (half * half + detune * detune);
            }
            res.continuous[static_cast<size_t>(i)] = s / PI;
        }
    });
    return res;
}

std::vector<double> broadened_spectrum(const SpectrumResult& result, double gamma_det) {
    if (!(gamma_det > 0.0)) throw InvalidParameter("broadened_spectrum: gamma_det must be > 0");
    std::vector<double> out = result.continuous;
    const double half = 0.5 * gamma_det;
    for (size_t i = 0; i < out.size(); ++i) {
        for (const auto& d : result.deltas) {
            const double detune = result.omega[i] - d.omega;
            out[i] += (half * d.l_weight - detune * d.k_weight) / (half * half + detune * detune) / PI;
        }
    }
    return out;
}

std::vector<double> resolvent_spectrum(const liouvillian::Superoperator& l, const Operator& rho_ss,
                                       const std::vector<double>& omega_grid, int jobs) {
    check_stationary(l, rho_ss, "resolvent_spectrum");
    const Eigen::Index n = l.hilbert_dim();
    const Eigen::Index nn = n * n;
    const Operator a = spin::jump_operator(l.params);
    const Operator x_op = rho_ss * a.adjoint();
    CVector rhs = -liouvillian::vec(Operator(x_op - x_op.trace() * rho_ss));
    // Row 0 becomes Tr y = 0, which the exact solution satisfies for every omega.
    rhs(0) = 0.0;
    const CVector a_row = liouvillian::vec(Operator(a.transpose()));
    std::vector<Eigen::Triplet<cplx>> base;
    base.reserve(static_cast<size_t>(l.matrix.nonZeros() + nn));
    for (int col = 0; col < l.matrix.outerSize(); ++col)
        for (SparseOp::InnerIterator it(l.matrix, col); it; ++it)
            if (it.row() != 0) base.emplace_back(static_cast<int>(it.row()), col, it.value());
    for (Eigen::Index i = 0; i < n; ++i) base.emplace_back(0, static_cast<int>(i + n * i), cplx(1.0, 0.0));
    std::vector<double> out(omega_grid.size());
    parallel_for(static_cast<long>(omega_grid.size()), jobs, [&](long i) {
        const double w = omega_grid[static_cast<size_t>(i)];
        auto trip = base;
        for (Eigen::Index k = 1; k < nn; ++k) trip.emplace_back(static_cast<int>(k), static_cast<int>(k), cplx(0.0, w));
        SparseOp m(nn, nn);
        m.setFromTriplets(trip.begin(), trip.end());
        m.makeCompressed();
        Eigen::SparseLU<SparseOp, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(m);
        if (lu.info() != Eigen::Success)
            throw SingularityError("resolvent_spectrum: factorization failed at omega = " + std::to_string(w));
        const CVector y = lu.solve(rhs);
        if (!y.allFinite())
            throw SingularityError("resolvent_spectrum: non-finite solution at omega = " + std::to_string(w));
        out[static_cast<size_t>(i)] = a_row.cwiseProduct(y).sum().real() / PI;
    });
    return out;
}

double integrate(const std::vector<double>& grid, const std::vector<double>& values) {
    if (grid.size() != values.size()) throw InvalidParameter("integrate: size mismatch");
    double s = 0.0;
    for (size_t i = 1; i < grid.size(); ++i) s += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
    return s;
}

namespace {

Peak analyse_peak(const std::vector<double>& g, const std::vector<double>& v, size_t i) {
    Peak p;
    p.omega = g[i];
    p.height = v[i];
    if (i > 0 && i + 1 < g.size()) {
        const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom < 0.0) {
            const double shift = 0.5 * (y0 - y2) / denom;
            const double h = 0.5 * (g[i + 1] - g[i - 1]);
            p.omega = g[i] + shift * h;
            p.height = y1 - 0.25 * (y0 - y2) * shift;
        }
    }
    const double half = 0.5 * p.height;
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = left;
    for (size_t k = i; k > 0; --k)
        if (v[k - 1] <= half) {
            left = g[k - 1] + (half - v[k - 1]) * (g[k] - g[k - 1]) / (v[k] - v[k - 1]);
            break;
        }
    for (size_t k = i; k + 1 < g.size(); ++k)
        if (v[k + 1] <= half) {
            right = g[k] + (v[k] - half) * (g[k + 1] - g[k]) / (v[k] - v[k + 1]);
            break;
        }
    p.resolved = std::isfinite(left) && std::isfinite(right);
    if (p.resolved) p.half_width = 0.5 * (right - left);
    return p;
}

}  // namespace

std::vector<Peak> find_peaks(const std::vector<double>& grid, const std::vector<double>& values, double min_rel) {
    if (grid.size() != values.size()) throw InvalidParameter("find_peaks: size mismatch");
    std::vector<Peak> out;
    if (grid.size() < 3) return out;
    const double top = *std::max_element(values.begin(), values.end());
    for (size_t i = 1; i + 1 < grid.size(); ++i)
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] >= min_rel * top)
            out.push_back(analyse_peak(grid, values, i));
    return out;
}

Peak peak_in_window(const std::vector<double>& grid, const std::vector<double>& values, double lo, double hi) {
    if (grid.size() != values.size()) throw InvalidParameter("peak_in_window: size mismatch");
    size_t best = grid.size();
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] >= lo && grid[i] <= hi && (best == grid.size() || values[i] > values[best])) best = i;
    if (best == grid.size()) throw InvalidParameter("peak_in_window: window contains no grid points");
    return analyse_peak(grid, values, best);
}

}  // namespace sslab::emission
