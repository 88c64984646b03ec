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

#include "helpers.hpp"

namespace sslab::cli {

int ladder_index(double m, const ModelParams& p, const std::string& where) {
    const double k = m + p.j();
    if (std::abs(k - std::round(k)) > 1e-9 || k < -1e-9 || k > p.n_spins + 1e-9)
        throw UsageError(where + ": m = " + format_number(m) + " is not in -J..J for N = " + std::to_string(p.n_spins));
    return static_cast<int>(std::lround(k));
}

Operator initial_sz_state(const json& config, const ModelParams& p) {
    int k = 0;
    if (has(config, "initial.m_z")) {
        const json& v = at(config, "initial.m_z");
        if (v == "down")
            k = 0;
        else if (v == "up")
            k = p.n_spins;
        else
            k = ladder_index(parse_value(v, "initial.m_z"), p, "initial.m_z");
    }
    Operator rho = Operator::Zero(p.dim(), p.dim());
    rho(k, k) = 1.0;
    return rho;
}

Operator steady_state_for(const ModelParams& p, const json& config) {
    if (!at_strong_symmetry(p)) return liouvillian::steady_state(liouvillian::build_liouvillian(p));
    const Operator rho0 = initial_sz_state(config, p);
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    Operator rho = Operator::Zero(p.dim(), p.dim());
    for (const auto& e : basis) rho += (e.vector.adjoint() * rho0 * e.vector)(0, 0).real() * e.vector * e.vector.adjoint();
    return rho;
}

double expect(const Operator& op, const Operator& rho) { return (op * rho).trace().real(); }

json point_json(const ModelParams& p) {
    return {{"N", p.n_spins}, {"omega", p.omega}, {"theta", p.theta}, {"gamma", p.gamma}};
}

json failure_point(const ModelParams& p, const std::string& quantity, const json& extra) {
    json j = point_json(p);
    j["quantity"] = quantity;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

}  // namespace sslab::cli
