#include <benchmark/benchmark.h>

#include "betamaps/beta_exact.hpp"
#include "betamaps/bfg.hpp"
#include "betamaps/oracle.hpp"
#include "betamaps/rp2.hpp"

using namespace betamaps;

namespace {

void BM_CumulantExact(benchmark::State& state) {
    Profile p{{static_cast<int>(state.range(0))}};
    for (auto _ : state) benchmark::DoNotOptimize(cumulant_exact(p));
}
BENCHMARK(BM_CumulantExact)->Arg(4)->Arg(6)->Arg(8);

void BM_CumulantExactThreaded(benchmark::State& state) {
    Profile p{{8}};
    for (auto _ : state)
        benchmark::DoNotOptimize(cumulant_exact(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CumulantExactThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_PsiRoundTrip(benchmark::State& state) {
    MotzkinBridge g{parse_perm("(1,2,3,4)(5,6,7)(8,9,10,11,12)(13,14,15,16)"),
                    {2, 1, 0, 1, 2, 1, 1, 1, 1, 2, 3, 2, 3, 2, 1, 2}};
    Perm sigma = parse_perm("(1,5,14)(6,8)(11,13)", range_set(16));
    for (auto _ : state) {
        SuitablyLabelledMap m = psi(g, sigma);
        benchmark::DoNotOptimize(psi_inverse(m));
    }
}
BENCHMARK(BM_PsiRoundTrip);

void BM_EnumerateMaps(benchmark::State& state) {
    Perm theta = theta_of_profile({{static_cast<int>(state.range(0))}});
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_suitably_labelled(theta));
}
BENCHMARK(BM_EnumerateMaps)->Arg(4)->Arg(6);

void BM_ProjectiveRoundTrip(benchmark::State& state) {
    SuitablyLabelledMap sq{HalfEdgeMap{parse_perm("(1,8)(2,3)(4,5)(6,7)"),
                                       parse_perm("(1,2)(3,4)(5,6)(7,8)")},
                           {0, 1, 1, 0, 0, 1, 1, 0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(from_projective(to_projective(sq)));
}
BENCHMARK(BM_ProjectiveRoundTrip);

void BM_DirectExpectation(benchmark::State& state) {
    Profile p{{4}};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            moment_by_direct_expectation(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DirectExpectation)->Arg(3)->Arg(5);

void BM_McSample(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_sample({{2}}, 20, 2.0, 10000, 7,
                                           static_cast<int>(state.range(0))));
}
BENCHMARK(BM_McSample)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
