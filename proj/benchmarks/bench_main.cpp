#include "khsq/classify.hpp"
#include "khsq/complex.hpp"
#include "khsq/integer.hpp"
#include "khsq/link.hpp"
#include "khsq/steenrod.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

using namespace khsq;

namespace {

const std::string kTable = KHSQ_DATA_DIR "/knots.pdtab";
const char* const kKnots[] = {"8_19", "10_124"};

void BM_Complex(benchmark::State& state) {
    LinkDiagram d = load_named(kTable, kKnots[state.range(0)]);
    for (auto _ : state) {
        KhComplex c(d);
        benchmark::DoNotOptimize(c.q_gradings());
    }
    state.SetLabel(kKnots[state.range(0)]);
}
BENCHMARK(BM_Complex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Homology(benchmark::State& state) {
    KhComplex c(load_named(kTable, kKnots[state.range(0)]));
    Parity p = state.range(1) ? Parity::Odd : Parity::Even;
    for (auto _ : state) benchmark::DoNotOptimize(khovanov_homology(c, p, Ring::Z));
    state.SetLabel(std::string(kKnots[state.range(0)]) + (state.range(1) ? " odd" : " even"));
}
BENCHMARK(BM_Homology)->Args({0, 0})->Args({0, 1})->Args({1, 0})->Args({1, 1})->Unit(benchmark::kMillisecond);

void BM_St(benchmark::State& state) {
    KhComplex c(load_named(kTable, kKnots[state.range(0)]));
    for (auto _ : state) benchmark::DoNotOptimize(st(c, static_cast<int>(state.range(1))));
    state.SetLabel(std::string(kKnots[state.range(0)]) + " l=" + std::to_string(state.range(1)));
}
BENCHMARK(BM_St)->Args({0, 1})->Args({0, 3})->Args({1, 1})->Args({1, 3})->Unit(benchmark::kMillisecond);

void BM_Q(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<FacetCycle> zs;
    while (zs.size() < 64) {
        FacetCycle z;
        int r = 3 + static_cast<int>(rng() % 6);
        for (int k = 0; k < r; ++k) {
            int a;
            do a = static_cast<int>(rng() % 9);
            while (!z.empty() && a == z.back().a);
            z.push_back({a, static_cast<int>(rng() & 1), (rng() & 1) ? 1 : -1, false});
        }
        if (z.front().a == z.back().a) continue;
        try {
            Q(z);
        } catch (const std::exception&) {
            continue;
        }
        zs.push_back(z);
    }
    for (auto _ : state)
        for (const auto& z : zs) benchmark::DoNotOptimize(Q_k(z, 3));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(zs.size()));
}
BENCHMARK(BM_Q);

void BM_SparseSmith(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    GradedMatrix m(Ring::Z, n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (rng() & 1) m.columns[c].push_back({static_cast<std::uint32_t>(r), (rng() & 1) ? 1 : -1});
    for (auto _ : state) benchmark::DoNotOptimize(sparse_smith(m));
}
BENCHMARK(BM_SparseSmith)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
