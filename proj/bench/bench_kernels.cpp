// Kernel benchmarks: the OpenMP meta-distribution simulation against the
// serial reference implementation, plus the point samplers and the analytic
// building blocks they feed.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "sirmeta/common.hpp"
#include "sirmeta/gil_pelaez.hpp"
#include "sirmeta/metasim.hpp"
#include "sirmeta/moments.hpp"
#include "sirmeta/process.hpp"
#include "sirmeta/rng.hpp"
#include "sirmeta/sampling.hpp"

namespace {

using namespace sirmeta;

std::vector<double> bench_thetas() {
    std::vector<double> t;
    for (double db = -15.0; db <= 15.0; db += 5.0) t.push_back(db);
    return t;
}

// ~640 points per realization at density 0.1.
constexpr double kHalfExtent = 40.0;
constexpr std::uint64_t kRealizations = 32;

void bm_simulate_fast(benchmark::State& state) {
    const std::vector<TierSpec> tiers{make_tier(ProcessKind{Poisson{}}, 0.1, 1.0, 4.0)};
    const auto thetas = bench_thetas();
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto em = simulate_meta(tiers, Window{kHalfExtent}, thetas, {0.9}, kRealizations,
                                      seed++);
        benchmark::DoNotOptimize(em.isr.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * kRealizations);
}
BENCHMARK(bm_simulate_fast)->Unit(benchmark::kMillisecond);

void bm_simulate_reference(benchmark::State& state) {
    const std::vector<TierSpec> tiers{make_tier(ProcessKind{Poisson{}}, 0.1, 1.0, 4.0)};
    const auto thetas = bench_thetas();
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto em = simulate_meta_reference(tiers, Window{kHalfExtent}, thetas, {0.9},
                                                kRealizations, seed++);
        benchmark::DoNotOptimize(em.isr.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * kRealizations);
}
BENCHMARK(bm_simulate_reference)->Unit(benchmark::kMillisecond);

void bm_sampler(benchmark::State& state, const ProcessKind& kind) {
    const Window w{kHalfExtent};
    std::uint64_t idx = 0;
    for (auto _ : state) {
        auto rng = make_stream(7, idx++, 0);
        const auto pts = sample_process(kind, 0.1, w, rng);
        benchmark::DoNotOptimize(pts.points.data());
    }
}

void bm_sample_ppp(benchmark::State& s) {
    bm_sampler(s, ProcessKind{Poisson{}});
}
void bm_sample_lattice(benchmark::State& s) {
    bm_sampler(s, ProcessKind{TriangularLattice{eta_for_density(0.1)}});
}
void bm_sample_perturbed(benchmark::State& s) {
    const double eta = eta_for_density(0.1);
    bm_sampler(s, ProcessKind{PerturbedTriangularLattice{eta, 0.5 * eta}});
}
void bm_sample_gauss_poisson(benchmark::State& s) {
    bm_sampler(s, ProcessKind{GaussPoisson{1.0 / 15.0, 0.5, 1.0}});
}
void bm_sample_matern(benchmark::State& s) {
    bm_sampler(s, ProcessKind{MaternCluster{0.01, 10.0, 4.0}});
}
BENCHMARK(bm_sample_ppp);
BENCHMARK(bm_sample_lattice);
BENCHMARK(bm_sample_perturbed);
BENCHMARK(bm_sample_gauss_poisson);
BENCHMARK(bm_sample_matern);

void bm_mb_ppp_imaginary(benchmark::State& state) {
    double t = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mb_ppp(std::complex<double>(0.0, t), 0.5, 1.0));
        t += 0.1;
    }
}
BENCHMARK(bm_mb_ppp_imaginary);

void bm_gil_pelaez_ppp(benchmark::State& state) {
    const auto m = [](double t) { return mb_ppp(std::complex<double>(0.0, t), 0.5, 1.0); };
    for (auto _ : state) benchmark::DoNotOptimize(gil_pelaez(m, 0.9));
}
BENCHMARK(bm_gil_pelaez_ppp)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
