#include <benchmark/benchmark.h>

#include <random>

#include "dualseq/barcode.hpp"
#include "dualseq/dualnum.hpp"
#include "dualseq/linalg.hpp"
#include "dualseq/phantom.hpp"

using namespace dualseq;

namespace {

Matrix random_matrix(const Field& f, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long long> d(0, static_cast<long long>(f.characteristic()) - 1);
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, d(gen));
  return m;
}

std::vector<Seq> projective_grid(const Field& f) {
  std::vector<Seq> out;
  for (int a = -3; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) out.push_back(Seq::interval(f, a, b));
  for (int b = -3; b <= 3; ++b) out.push_back(Seq::interval(f, kNegInf, b));
  return out;
}

void BM_Reduce(benchmark::State& s) {
  Matrix m = random_matrix(Field::prime(32003), static_cast<std::size_t>(s.range(0)), 7);
  for (auto _ : s) benchmark::DoNotOptimize(reduce(m).rank);
}

void BM_ReduceSerial(benchmark::State& s) {
  Matrix m = random_matrix(Field::prime(32003), static_cast<std::size_t>(s.range(0)), 7);
  for (auto _ : s) benchmark::DoNotOptimize(reduce_serial(m).rank);
}

void BM_PhantomScan(benchmark::State& s) {
  auto grid = projective_grid(Field::prime(2));
  for (auto _ : s) benchmark::DoNotOptimize(phantom_scan(grid, 12).size());
}

void BM_PhantomScanSerial(benchmark::State& s) {
  auto grid = projective_grid(Field::prime(2));
  for (auto _ : s) benchmark::DoNotOptimize(phantom_scan_serial(grid, 12).size());
}

void BM_Decompose(benchmark::State& s) {
  std::map<Interval, std::size_t> bars;
  for (int a = -4; a <= 4; ++a)
    for (int b = a; b <= 4; ++b) bars[Interval(a, b)] = static_cast<std::size_t>(s.range(0));
  Seq v = assemble(Field::prime(5), bars);
  for (auto _ : s) benchmark::DoNotOptimize(decompose(v).total());
}

}  // namespace

BENCHMARK(BM_Reduce)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReduceSerial)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhantomScan)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhantomScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decompose)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
