#include <benchmark/benchmark.h>

#include "cmt/families.hpp"
#include "cmt/rank.hpp"
#include "cmt/towers.hpp"

using namespace cmt;

namespace {

std::string table_path(const std::string& name) { return std::string(CMT_DATA_DIR) + "/tables/" + name; }

void BM_SieveSerial(benchmark::State& state) {
  auto form = binary_form(3);
  for (auto _ : state) benchmark::DoNotOptimize(squarefree_sieve(form, state.range(0)));
}

void BM_SieveParallel(benchmark::State& state) {
  auto form = binary_form(3);
  for (auto _ : state) benchmark::DoNotOptimize(squarefree_sieve_parallel(form, state.range(0)));
}

void BM_TableSerial(benchmark::State& state) {
  auto exp = load_expected(table_path("ED_expected.csv"));
  auto data = load_table(table_path("ED.csv"));
  for (auto _ : state) benchmark::DoNotOptimize(reproduce_table(exp, data));
}

void BM_TableParallel(benchmark::State& state) {
  auto exp = load_expected(table_path("ED_expected.csv"));
  auto data = load_table(table_path("ED.csv"));
  for (auto _ : state) benchmark::DoNotOptimize(reproduce_table_parallel(exp, data));
}

std::vector<TowerJob> tower_jobs() {
  std::vector<TowerJob> jobs;
  for (long D = 1; D <= 12; ++D) {
    jobs.push_back({false, 5, D});
    jobs.push_back({false, 7, D});
    if (D % 13) jobs.push_back({true, 13, D});
  }
  return jobs;
}

void BM_TowersSerial(benchmark::State& state) {
  auto jobs = tower_jobs();
  for (auto _ : state) benchmark::DoNotOptimize(build_towers_serial(jobs));
}

void BM_TowersParallel(benchmark::State& state) {
  auto jobs = tower_jobs();
  for (auto _ : state) benchmark::DoNotOptimize(build_towers_parallel(jobs));
}

}  // namespace

BENCHMARK(BM_SieveSerial)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveParallel)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TableSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TableParallel)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_TowersSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TowersParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
