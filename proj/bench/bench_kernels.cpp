#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "szego/kernels.hpp"
#include "szego/szego_flow.hpp"

using namespace szego;

namespace {

std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (cplx& x : v) x = cplx(g(rng), g(rng));
  return v;
}

template <void (*Matvec)(std::span<const cplx>, std::span<const cplx>, std::span<cplx>)>
void BM_hankel_matvec(benchmark::State& st) {
  const auto N = static_cast<std::size_t>(st.range(0));
  std::vector<cplx> c = random_vec(2 * N - 1, 1), x = random_vec(N, 2), y(N);
  for (auto _ : st) {
    Matvec(c, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  st.SetComplexityN(st.range(0));
}

BENCHMARK(BM_hankel_matvec<kernels::hankel_matvec_dense_serial>)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_hankel_matvec<kernels::hankel_matvec_dense_omp>)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_hankel_matvec<kernels::hankel_matvec_fft>)->RangeMultiplier(4)->Range(64, 16384);

// q x q matrix of random degree-q polynomials evaluated on 4q roots of unity.
PolyMatrix random_polymatrix(std::size_t q) {
  PolyMatrix m(q, std::vector<Poly>(q));
  unsigned seed = 3;
  for (auto& row : m)
    for (Poly& p : row) p = Poly(random_vec(q + 1, seed++));
  return m;
}

template <kernels::PointwiseDetMinors (*Kernel)(const PolyMatrix&, std::span<const cplx>)>
void BM_det_minors(benchmark::State& st) {
  const auto q = static_cast<std::size_t>(st.range(0));
  PolyMatrix m = random_polymatrix(q);
  std::vector<cplx> pts(4 * q);
  for (std::size_t p = 0; p < pts.size(); ++p) pts[p] = std::polar(1.0, kTwoPi * p / pts.size());
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(m, pts));
}

BENCHMARK(BM_det_minors<kernels::det_minors_serial>)->DenseRange(2, 8, 2);
BENCHMARK(BM_det_minors<kernels::det_minors_omp>)->DenseRange(2, 8, 2);

void BM_szego_rhs(benchmark::State& st) {
  Symbol u = Symbol::from_coeffs(random_vec(static_cast<std::size_t>(st.range(0)), 4));
  for (auto _ : st) benchmark::DoNotOptimize(szego_rhs(u));
}

BENCHMARK(BM_szego_rhs)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
