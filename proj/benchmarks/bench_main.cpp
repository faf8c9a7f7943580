#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gxcalc/catalog.hpp"
#include "gxcalc/consistency.hpp"
#include "gxcalc/protocols.hpp"

using namespace gxcalc;

namespace {

const SkeletalCategory& ising() {
    static const SkeletalCategory c = catalog_builtin("ising1");
    return c;
}

const SkeletalCategory& ty() {
    static const SkeletalCategory c = catalog_builtin("ty_z3");
    return c;
}

const SkeletalCategory& bilayer() {
    static const SkeletalCategory c = catalog_builtin("bilayer_ising_z2x_partial");
    return c;
}

void BM_BuildRep(benchmark::State& state) {
    const auto& c = ising();
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_rep(c, c.L("sigma"), n, c.L("1")));
}
BENCHMARK(BM_BuildRep)->DenseRange(4, 10, 2);

void BM_Closure(benchmark::State& state) {
    const auto& c = ty();
    BraidRep r = build_rep(c, c.L("X1"), 4, c.L("1"));
    for (auto _ : state) benchmark::DoNotOptimize(projective_closure(r, 100000));
}
BENCHMARK(BM_Closure);

void BM_Pentagon(benchmark::State& state) {
    static const SkeletalCategory c = catalog_builtin("bilayer_ising");
    for (auto _ : state) benchmark::DoNotOptimize(check_pentagon(c));
}
BENCHMARK(BM_Pentagon);

void BM_Heptagon(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(check_heptagon(ty()));
}
BENCHMARK(BM_Heptagon);

void BM_SolveDefectR(benchmark::State& state) {
    const auto& c = ty();
    Label X = c.L("X1");
    std::vector<RKey> keys;
    for (Label a : c.ring().channels(X, X)) keys.push_back({X.id, X.id, a.id});
    for (auto _ : state) benchmark::DoNotOptimize(solve_defect_R(c, keys));
}
BENCHMARK(BM_SolveDefectR)->Unit(benchmark::kMillisecond);

void BM_TGate(benchmark::State& state) {
    TGateOptions o;
    o.assume_trivial_u_eta = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tgate_closed_form(bilayer()));
        benchmark::DoNotOptimize(tgate_diagrammatic(bilayer(), o));
    }
}
BENCHMARK(BM_TGate);

void BM_Protocol(benchmark::State& state) {
    std::ifstream in(std::filesystem::path(GXCALC_SOURCE_DIR) / "corpus" / "t_gate_protocol.dsl");
    std::stringstream ss;
    ss << in.rdbuf();
    Diagram d = parse_diagram(ss.str());
    for (auto _ : state) benchmark::DoNotOptimize(run_protocol(d, bilayer()));
}
BENCHMARK(BM_Protocol);

void BM_EvaluateWord(benchmark::State& state) {
    Diagram d = parse_diagram(
        "strands 6 : sigma sigma sigma sigma sigma sigma\n"
        "braid+ 1\nbraid- 3\nbraid+ 2\nbraid+ 4\nbraid- 5\nbraid+ 3\nloop psi 2 3\ntwist 6\n");
    EvalOptions o;
    o.total = ising().L("1");
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(d, ising(), o));
}
BENCHMARK(BM_EvaluateWord);

}  // namespace

BENCHMARK_MAIN();
