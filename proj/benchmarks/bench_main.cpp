#include <benchmark/benchmark.h>

#include "crflat/crfields.hpp"
#include "crflat/detlab.hpp"
#include "crflat/flatten.hpp"
#include "crflat/manifold.hpp"

using namespace crflat;

namespace {

Jet dense_real_jet(int n, int order, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Jet j(n, order);
    for (int t = 0; t < 40; ++t) {
        MultiIndex idx = MultiIndex::zero(n);
        int deg = static_cast<int>(rng.below(order + 1));
        for (int d = 0; d < deg; ++d) {
            int slot = static_cast<int>(rng.below(2 * n));
            if (slot < n)
                idx.alpha[slot]++;
            else
                idx.beta[slot - n]++;
        }
        CNum c(rng.small_rat(3, 2), rng.small_rat(3, 2));
        j.add_coeff(idx, c);
        j.add_coeff(idx.conj(), c.conj());
    }
    return j;
}

void BM_JetProduct(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    Jet a = dense_real_jet(2, order, 11), b = dense_real_jet(2, order, 12);
    for (auto _ : state) {
        Jet c = mul_trunc(a, b);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_JetProduct)->Arg(6)->Arg(8)->Arg(10);

void BM_ResidualIII(benchmark::State& state) {
    ManifoldJet m = fixture("cubic_nonminimal", {{"order", std::to_string(state.range(0))}});
    for (auto _ : state) {
        Jet r = residual_III(m);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_ResidualIII)->Arg(8)->Arg(10);

void BM_StructuredDet(benchmark::State& state) {
    const int mhat = static_cast<int>(state.range(0));
    for (auto _ : state) {
        UniPoly d = det_structured(MatKind::Rplus, mhat);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_StructuredDet)->Arg(2)->Arg(3)->Arg(4);

void BM_NormalizeOrder(benchmark::State& state) {
    const int m0 = static_cast<int>(state.range(0));
    ManifoldJet m = fixture("appendix_random",
                            {{"seed", "7"}, {"m", "3"}, {"order", std::to_string(m0 + 2)}});
    for (auto _ : state) {
        auto out = normalize_order(m, m0);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_NormalizeOrder)->Arg(4)->Arg(6)->Arg(8);

void BM_RigidityKernel(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    std::vector<Rat> lambda{Rat(1, 8), Rat(1, 4)};
    for (auto _ : state) {
        RigidityResult r = rigidity_kernel(2, lambda, degree);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_RigidityKernel)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
