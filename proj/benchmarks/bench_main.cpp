// Microbenchmarks for the hot paths: depth, identity-tail closures, product
// equality exponents, the twisted-conjugacy solver, recurrence solving, and
// the restricted-shift support sweep.

#include "nubshift/abelian.hpp"
#include "nubshift/limits.hpp"
#include "nubshift/series.hpp"
#include "nubshift/structure.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

namespace {

using namespace nubshift;

GroupShiftSFT sum_rule_graph() {
    const GroupPtr g = direct_product(make_cyclic(2), make_cyclic(2));
    std::vector<BlockCode> codes;
    for (Sym y0 = 0; y0 < 2; ++y0)
        for (Sym y1 = 0; y1 < 2; ++y1)
            for (Sym x1 = 0; x1 < 2; ++x1)
                codes.push_back(static_cast<BlockCode>(2 * ((y0 + y1) % 2) + y0) +
                                4 * static_cast<BlockCode>(2 * x1 + y1));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return GroupShiftSFT::from_codes(g, 2, codes);
}

void BM_depth_full_s3(benchmark::State& state) {
    const GroupShiftSFT h = GroupShiftSFT::full_shift(make_symmetric3());
    for (auto _ : state) benchmark::DoNotOptimize(depth(h).depth);
}
BENCHMARK(BM_depth_full_s3);

void BM_nub_of_graph(benchmark::State& state) {
    const GroupShiftSFT h = sum_rule_graph();
    for (auto _ : state) benchmark::DoNotOptimize(nub(h).index_in_host);
}
BENCHMARK(BM_nub_of_graph);

void BM_prodeq_graph(benchmark::State& state) {
    const GroupShiftSFT h = sum_rule_graph();
    for (auto _ : state) benchmark::DoNotOptimize(prodeq_k(h));
}
BENCHMARK(BM_prodeq_graph);

void BM_eta_solve_s3(benchmark::State& state) {
    const EPWord f = EPWord::finitely_supported(make_symmetric3(), -3, {1, 4, 2, 5, 3, 1});
    for (auto _ : state) benchmark::DoNotOptimize(eta_solve(f, 2));
}
BENCHMARK(BM_eta_solve_s3);

void BM_solve_recurrence_f5(benchmark::State& state) {
    const FpLaurent q(5, 0, {1, 2, 0, 3, 1});
    for (auto _ : state) benchmark::DoNotOptimize(solve_recurrence(5, q).elements.size());
}
BENCHMARK(BM_solve_recurrence_f5);

void BM_composition_factors_s3(benchmark::State& state) {
    const GroupShiftSFT h = GroupShiftSFT::full_shift(make_symmetric3());
    for (auto _ : state) benchmark::DoNotOptimize(composition_factors(h).size());
}
BENCHMARK(BM_composition_factors_s3);

void BM_support_growth_p3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(support_growth_exhaustive(3, 8));
}
BENCHMARK(BM_support_growth_p3);

} // namespace

BENCHMARK_MAIN();
