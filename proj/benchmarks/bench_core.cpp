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

#include <benchmark/benchmark.h>

#include "sslab/sslab.hpp"

using namespace sslab;

namespace {

ModelParams model(int n, double omega, double theta) {
    ModelParams p;
    p.n_spins = n;
    p.omega = omega;
    p.theta = theta;
    return p;
}

void BM_BuildLiouvillian(benchmark::State& st) {
    const ModelParams p = model(static_cast<int>(st.range(0)), 0.5, PI / 8);
    for (auto _ : st) benchmark::DoNotOptimize(liouvillian::build_liouvillian(p).matrix.nonZeros());
}
BENCHMARK(BM_BuildLiouvillian)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& st) {
    const auto l = liouvillian::build_liouvillian(model(static_cast<int>(st.range(0)), 0.5, PI / 8));
    for (auto _ : st) benchmark::DoNotOptimize(liouvillian::steady_state(l).trace());
}
BENCHMARK(BM_SteadyState)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& st) {
    const auto l = liouvillian::build_liouvillian(model(static_cast<int>(st.range(0)), 0.5, 0.0));
    for (auto _ : st) benchmark::DoNotOptimize(liouvillian::liouvillian_spectrum(l).eigenvalues.size());
}
BENCHMARK(BM_DenseSpectrum)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_SparseAdr(benchmark::State& st) {
    const auto l = liouvillian::build_liouvillian(model(static_cast<int>(st.range(0)), 0.5, 0.0));
    for (auto _ : st) benchmark::DoNotOptimize(liouvillian::adr_sparse(l).value);
}
BENCHMARK(BM_SparseAdr)->Arg(50)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_Trajectory(benchmark::State& st) {
    const ModelParams p = model(static_cast<int>(st.range(0)), 0.8, PI / 4);
    const auto basis = spin::hermitian_eigenbasis(spin::build_spin_operators(p).sx);
    const CVector psi = basis.back().vector;
    trajectories::TrajectoryOptions opt;
    opt.dt = 1e-3;
    std::uint64_t seed = 1;
    for (auto _ : st) benchmark::DoNotOptimize(trajectories::run_trajectory(p, psi, 1.0, seed++, opt).n_jumps);
    st.SetItemsProcessed(st.iterations() * 1000);
}
BENCHMARK(BM_Trajectory)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ScgfValue(benchmark::State& st) {
    const ModelParams p = model(static_cast<int>(st.range(0)), 0.8, PI / 4);
    for (auto _ : st) benchmark::DoNotOptimize(counting::scgf_value(p, 0.3));
}
BENCHMARK(BM_ScgfValue)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MeanFieldFlow(benchmark::State& st) {
    const ModelParams p = model(1, 1.2, 0.0);
    const auto s0 = mean_field::from_angles({0.7, 0.2});
    for (auto _ : st) benchmark::DoNotOptimize(mean_field::mf_flow(s0, p, 10.0, 1e-3, 100).s.size());
}
BENCHMARK(BM_MeanFieldFlow)->Unit(benchmark::kMillisecond);

void BM_ResolventSpectrum(benchmark::State& st) {
    const auto l = liouvillian::build_liouvillian(model(static_cast<int>(st.range(0)), 2.0, 0.0));
    const Operator rho = liouvillian::steady_state(l);
    const std::vector<double> w = {0.5, 1.0, 1.5, 2.0};
    for (auto _ : st) benchmark::DoNotOptimize(emission::resolvent_spectrum(l, rho, w).front());
}
BENCHMARK(BM_ResolventSpectrum)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
