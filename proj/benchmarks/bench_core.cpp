#include <benchmark/benchmark.h>

#include "subcover/generate.hpp"
#include "subcover/reduction.hpp"
#include "subcover/solvers.hpp"
#include "subcover/subdivision.hpp"

using namespace subcover;

static void BM_BuildSubdivision(benchmark::State& state) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::guillotine;
    spec.rooms = static_cast<int>(state.range(0));
    spec.seed = 7;
    SegmentSet segs = generate(spec);
    for (auto _ : state) {
        auto sub = build_subdivision(segs);
        benchmark::DoNotOptimize(sub.face_count());
    }
}
BENCHMARK(BM_BuildSubdivision)->Arg(16)->Arg(64)->Arg(256);

static void BM_GreedyStab(benchmark::State& state) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::guillotine;
    spec.rooms = static_cast<int>(state.range(0));
    spec.seed = 7;
    auto sub = build_subdivision(generate(spec));
    for (auto _ : state) {
        auto sol = greedy_stab(sub);
        benchmark::DoNotOptimize(sol.size());
    }
}
BENCHMARK(BM_GreedyStab)->Arg(16)->Arg(64)->Arg(256);

static void BM_ExactStabGadget(benchmark::State& state) {
    auto sub = build_subdivision(variable_gadget_segments(Problem::stab, 1));
    for (auto _ : state) {
        auto sol = exact_stab(sub, FaceFilter::rect());
        benchmark::DoNotOptimize(sol.size());
    }
}
BENCHMARK(BM_ExactStabGadget);

static void BM_LocalSearchStab(benchmark::State& state) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::guillotine;
    spec.rooms = 12;
    spec.seed = 3;
    auto sub = build_subdivision(generate(spec));
    for (auto _ : state) {
        auto sol = local_search_stab(sub, {3, 100000});
        benchmark::DoNotOptimize(sol.size());
    }
}
BENCHMARK(BM_LocalSearchStab);

static void BM_BuildReduction(benchmark::State& state) {
    Rp3SatInstance inst;
    inst.variables = static_cast<int>(state.range(0));
    inst.clauses.push_back({{1, -2, 3}, Side::top});
    for (auto _ : state) {
        auto out = build_stab_reduction(inst, Variant::rect);
        benchmark::DoNotOptimize(out.target);
    }
}
BENCHMARK(BM_BuildReduction)->Arg(3)->Arg(6);

static void BM_VerifyLemma(benchmark::State& state) {
    Rp3SatInstance inst;
    inst.variables = 3;
    inst.clauses.push_back({{1, -2, 3}, Side::top});
    for (auto _ : state) {
        auto rep = verify_lemma(inst, Problem::stab, Variant::rect);
        benchmark::DoNotOptimize(rep.forward_ok);
    }
}
BENCHMARK(BM_VerifyLemma);

BENCHMARK_MAIN();
