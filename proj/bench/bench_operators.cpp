// Serial vs OpenMP kernels, and the linear-time engine vs backward induction.

#include "imc/inference.hpp"
#include "imc/oracle.hpp"
#include "imc/recursion.hpp"
#include "imc/transition.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace imc;

namespace {

ImpreciseMarkovChain interval_model(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> e(1.0);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    auto row = [&] {
        std::vector<double> c(n), lo(n), hi(n);
        double s = 0;
        for (double& v : c) s += (v = e(rng));
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::max(0.0, c[i] / s - u(rng));
            hi[i] = std::min(1.0, c[i] / s + u(rng));
        }
        return CredalRow::intervals(lo, hi);
    };
    ImpreciseMarkovChain m{StateSpace::numbered(n), row(), {}};
    for (std::size_t x = 0; x < n; ++x) m.rows.push_back(row());
    return m;
}

Gamble ramp(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i % 7) - 3.0;
    return Gamble(std::move(v));
}

void BM_UpperT(benchmark::State& st, Execution ex) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto m = interval_model(n, 1);
    const Gamble f = ramp(n);
    for (auto _ : st) benchmark::DoNotOptimize(upper_T(m, f, {ex, nullptr}));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

void BM_ExtendedUpper(benchmark::State& st, Execution ex) {
    const auto m = interval_model(8, 2);
    const auto horizon = static_cast<std::size_t>(st.range(0));
    std::vector<double> v(static_cast<std::size_t>(std::pow(8.0, static_cast<double>(horizon))));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 13) * 0.1;
    const HistoryFunction F(8, horizon, std::move(v));
    for (auto _ : st) benchmark::DoNotOptimize(extended_upper(m, F, {ex, nullptr}));
}

void BM_Engine(benchmark::State& st) {
    const auto m = interval_model(4, 3);
    const auto spec = spec_hitting_probability(4, {0}, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(conditional_bounds(m, spec));
}

void BM_Oracle(benchmark::State& st) {
    const auto m = interval_model(4, 3);
    const auto F = oracle::materialize_tau(spec_hitting_probability(4, {0}, static_cast<std::size_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(oracle::naive_conditional_bounds(m, F));
}

} // namespace

BENCHMARK_CAPTURE(BM_UpperT, serial, Execution::serial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_UpperT, parallel, Execution::parallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_ExtendedUpper, serial, Execution::serial)->Arg(4)->Arg(6);
BENCHMARK_CAPTURE(BM_ExtendedUpper, parallel, Execution::parallel)->Arg(4)->Arg(6);
BENCHMARK(BM_Engine)->Arg(4)->Arg(8)->Arg(64)->Arg(1024);
BENCHMARK(BM_Oracle)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
