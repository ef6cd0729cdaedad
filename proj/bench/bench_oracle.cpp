// Compares the OpenMP oracle kernels against the serial reference.
// Build target: niep3_bench (requires google-benchmark).

#include <benchmark/benchmark.h>

#include "niep3/oracle.hpp"

using namespace niep3;
using oracle::ScanConfig;

namespace {

constexpr MatrixClass kClasses[] = {
    MatrixClass::General, MatrixClass::Symmetric, MatrixClass::Stochastic,
    MatrixClass::SymmetricStochastic, MatrixClass::DoublyStochastic};

void BM_necessity_serial(benchmark::State& state) {
    ScanConfig cfg;
    cfg.trials = static_cast<int>(state.range(1));
    cfg.seed = 42;
    const MatrixClass cls = kClasses[state.range(0)];
    for (auto _ : state) {
        auto res = oracle::serial::necessity_trial(cls, cfg);
        benchmark::DoNotOptimize(res.failures.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_necessity_omp(benchmark::State& state) {
    ScanConfig cfg;
    cfg.trials = static_cast<int>(state.range(1));
    cfg.seed = 42;
    const MatrixClass cls = kClasses[state.range(0)];
    for (auto _ : state) {
        auto res = oracle::necessity_trial(cls, cfg);
        benchmark::DoNotOptimize(res.failures.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_omega_scan_serial(benchmark::State& state) {
    ScanConfig cfg;
    cfg.grid_n = static_cast<int>(state.range(0));
    const Spectrum s = Spectrum::real_triple(1, 0.4, 0.1);
    for (auto _ : state) {
        auto res = oracle::serial::omega_scan(MatrixClass::DoublyStochastic, s, 0.64, cfg);
        benchmark::DoNotOptimize(res.feasible);
    }
    state.SetItemsProcessed(state.iterations() * cfg.grid_n);
}

void BM_omega_scan_omp(benchmark::State& state) {
    ScanConfig cfg;
    cfg.grid_n = static_cast<int>(state.range(0));
    const Spectrum s = Spectrum::real_triple(1, 0.4, 0.1);
    for (auto _ : state) {
        auto res = oracle::omega_scan(MatrixClass::DoublyStochastic, s, 0.64, cfg);
        benchmark::DoNotOptimize(res.feasible);
    }
    state.SetItemsProcessed(state.iterations() * cfg.grid_n);
}

void BM_range_audit_serial(benchmark::State& state) {
    ScanConfig cfg;
    const Spectrum s = Spectrum::real_triple(1, 0.4, 0.1);
    for (auto _ : state) {
        auto res = oracle::serial::range_audit(MatrixClass::DoublyStochastic, s, cfg);
        benchmark::DoNotOptimize(res.max_endpoint_gap);
    }
}

void BM_range_audit_omp(benchmark::State& state) {
    ScanConfig cfg;
    const Spectrum s = Spectrum::real_triple(1, 0.4, 0.1);
    for (auto _ : state) {
        auto res = oracle::range_audit(MatrixClass::DoublyStochastic, s, cfg);
        benchmark::DoNotOptimize(res.max_endpoint_gap);
    }
}

}  // namespace

BENCHMARK(BM_necessity_serial)->ArgsProduct({{0, 1, 2, 3, 4}, {20000}});
BENCHMARK(BM_necessity_omp)->ArgsProduct({{0, 1, 2, 3, 4}, {20000}});
BENCHMARK(BM_omega_scan_serial)->Arg(100000);
BENCHMARK(BM_omega_scan_omp)->Arg(100000);
BENCHMARK(BM_range_audit_serial);
BENCHMARK(BM_range_audit_omp);

BENCHMARK_MAIN();
