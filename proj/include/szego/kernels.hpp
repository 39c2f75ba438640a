#pragma once

// Data-parallel inner loops. Each kernel has a serial reference used by the
// tests and the benchmark; the OpenMP variants must agree with it to rounding.

#include <span>
#include <vector>

#include "szego/algebra.hpp"
#include "szego/types.hpp"

namespace szego::kernels {

/// Threads used by the *_omp kernels; capped by SZEGO_THREADS when set.
int thread_count();
void set_thread_cap(int cap);

/// y_n = sum_k c_{n+k} x_k for n, k < N, c taken as zero past its end.
void hankel_matvec_dense_serial(std::span<const cplx> c, std::span<const cplx> x,
                                std::span<cplx> y);
void hankel_matvec_dense_omp(std::span<const cplx> c, std::span<const cplx> x,
                             std::span<cplx> y);
/// Same product through a circulant embedding of length >= 2N-1.
void hankel_matvec_fft(std::span<const cplx> c, std::span<const cplx> x,
                       std::span<cplx> y);

/// Determinant and all first minors of entries(z) at every point z.
/// det[p] and minors[(k*q + j)*P + p] for P points.
struct PointwiseDetMinors {
  std::vector<cplx> det;
  std::vector<cplx> minors;
};
PointwiseDetMinors det_minors_serial(const PolyMatrix& entries,
                                     std::span<const cplx> points);
PointwiseDetMinors det_minors_omp(const PolyMatrix& entries,
                                  std::span<const cplx> points);

}  // namespace szego::kernels
