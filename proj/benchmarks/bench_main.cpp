#include "genuslab/asymptotics.hpp"
#include "genuslab/characters.hpp"
#include "genuslab/enumerator.hpp"
#include "genuslab/forms.hpp"
#include "genuslab/frobenian.hpp"
#include "genuslab/sieve.hpp"

#include <benchmark/benchmark.h>

using namespace genuslab;

namespace {

void BM_EnumerateQuadratic(benchmark::State& state) {
    const FiniteAbelianGroup g{2};
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(g, state.range(0), {}).final().genus_sum);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnumerateQuadratic)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_EnumerateGroup(benchmark::State& state, const char* literal) {
    const auto g = FiniteAbelianGroup::parse(literal);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(g, 200'000, {}).final().count);
    state.SetItemsProcessed(state.iterations() * 200'000);
}
BENCHMARK_CAPTURE(BM_EnumerateGroup, Z3, "3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateGroup, V4, "2,2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateGroup, Z4, "4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateGroup, Z12, "12")->Unit(benchmark::kMillisecond);

void BM_EnumerateThreads(benchmark::State& state) {
    EnumerationOptions options;
    options.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(FiniteAbelianGroup{2, 2}, 500'000, {}, options).final().count);
}
BENCHMARK(BM_EnumerateThreads)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FactorSegment(benchmark::State& state) {
    const auto base = PrimeTable::build(10'000);
    std::vector<FactoredInteger> out;
    for (auto _ : state) {
        factor_segment(90'000'000, 90'000'000 + (1 << 15), base, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * (1 << 15));
}
BENCHMARK(BM_FactorSegment);

void BM_DiscreteLog(benchmark::State& state) {
    const auto s = unit_group_structure(1'000'003, 1);
    std::int64_t u = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.discrete_log(u));
        u = u * 7 % 1'000'003;
    }
}
BENCHMARK(BM_DiscreteLog);

void BM_FrobenianMean(benchmark::State& state) {
    const SubgroupOfQStar minus_one = SubgroupOfQStar::parse("-1");
    for (auto _ : state) {
        benchmark::DoNotOptimize(frobenian_mean_empirical(FiniteAbelianGroup{4}, minus_one, {}, 100'000).empirical);
    }
}
BENCHMARK(BM_FrobenianMean)->Unit(benchmark::kMillisecond);

void BM_PredictConstant(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(predict_leading_constant(FiniteAbelianGroup{2, 2}, {}, 1'000'000).fields);
}
BENCHMARK(BM_PredictConstant)->Unit(benchmark::kMillisecond);

void BM_FormsOracle(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(forms_oracle_table(10'000).size());
}
BENCHMARK(BM_FormsOracle)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so main is defined here.
BENCHMARK_MAIN();
