#include "szego/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

#include <omp.h>

#include "szego/error.hpp"
#include "szego/fft.hpp"

namespace szego::kernels {

namespace {

std::atomic<int> g_cap{0};

int env_cap() {
  static const int cap = [] {
    const char* s = std::getenv("SZEGO_THREADS");
    if (!s) return 0;
    int v = std::atoi(s);
    return v > 0 ? v : 0;
  }();
  return cap;
}

void check_sizes(std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) fail(Errc::invalid_argument, "hankel matvec: size mismatch");
}

// Gaussian elimination with partial pivoting on a q x q scratch matrix.
cplx det_in_place(std::vector<cplx>& a, std::size_t q) {
  cplx det{1.0};
  for (std::size_t col = 0; col < q; ++col) {
    std::size_t piv = col;
    double best = std::abs(a[col * q + col]);
    for (std::size_t r = col + 1; r < q; ++r) {
      double v = std::abs(a[r * q + col]);
      if (v > best) best = v, piv = r;
    }
    if (best == 0.0) return cplx{};
    if (piv != col) {
      for (std::size_t c = 0; c < q; ++c) std::swap(a[piv * q + c], a[col * q + c]);
      det = -det;
    }
    cplx p = a[col * q + col];
    det *= p;
    for (std::size_t r = col + 1; r < q; ++r) {
      cplx f = a[r * q + col] / p;
      if (f == cplx{}) continue;
      for (std::size_t c = col; c < q; ++c) a[r * q + c] -= f * a[col * q + c];
    }
  }
  return det;
}

void det_minors_at(const PolyMatrix& entries, cplx z, std::size_t p, std::size_t P,
                   PointwiseDetMinors& out) {
  std::size_t q = entries.size();
  std::vector<cplx> vals(q * q);
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t j = 0; j < q; ++j) vals[k * q + j] = entries[k][j](z);
  std::vector<cplx> work = vals;
  out.det[p] = det_in_place(work, q);
  if (q == 1) {
    out.minors[p] = 1.0;
    return;
  }
  std::size_t m = q - 1;
  std::vector<cplx> sub(m * m);
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t j = 0; j < q; ++j) {
      std::size_t idx = 0;
      for (std::size_t r = 0; r < q; ++r) {
        if (r == k) continue;
        for (std::size_t c = 0; c < q; ++c) {
          if (c == j) continue;
          sub[idx++] = vals[r * q + c];
        }
      }
      out.minors[(k * q + j) * P + p] = det_in_place(sub, m);
    }
}

PointwiseDetMinors det_minors_impl(const PolyMatrix& entries, std::span<const cplx> points,
                                   bool parallel) {
  std::size_t q = entries.size();
  for (const auto& row : entries)
    if (row.size() != q) fail(Errc::invalid_argument, "det_minors: matrix not square");
  std::size_t P = points.size();
  PointwiseDetMinors out;
  out.det.assign(P, cplx{});
  out.minors.assign(q * q * P, cplx{});
  const long n = static_cast<long>(P);
  if (parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long p = 0; p < n; ++p)
      det_minors_at(entries, points[static_cast<std::size_t>(p)], static_cast<std::size_t>(p), P, out);
  } else {
    for (long p = 0; p < n; ++p)
      det_minors_at(entries, points[static_cast<std::size_t>(p)], static_cast<std::size_t>(p), P, out);
  }
  return out;
}

}  // namespace

int thread_count() {
  int n = omp_get_max_threads();
  int cap = g_cap.load();
  if (cap <= 0) cap = env_cap();
  return cap > 0 ? std::min(n, cap) : n;
}

void set_thread_cap(int cap) { g_cap.store(cap > 0 ? cap : 0); }

void hankel_matvec_dense_serial(std::span<const cplx> c, std::span<const cplx> x,
                                std::span<cplx> y) {
  check_sizes(x, y);
  std::size_t N = x.size();
  for (std::size_t n = 0; n < N; ++n) {
    cplx acc{};
    std::size_t kmax = c.size() > n ? std::min(N, c.size() - n) : 0;
    for (std::size_t k = 0; k < kmax; ++k) acc += c[n + k] * x[k];
    y[n] = acc;
  }
}

void hankel_matvec_dense_omp(std::span<const cplx> c, std::span<const cplx> x,
                             std::span<cplx> y) {
  check_sizes(x, y);
  const long N = static_cast<long>(x.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (long n = 0; n < N; ++n) {
    std::size_t un = static_cast<std::size_t>(n);
    cplx acc{};
    std::size_t kmax = c.size() > un ? std::min(x.size(), c.size() - un) : 0;
    for (std::size_t k = 0; k < kmax; ++k) acc += c[un + k] * x[k];
    y[un] = acc;
  }
}

void hankel_matvec_fft(std::span<const cplx> c, std::span<const cplx> x, std::span<cplx> y) {
  check_sizes(x, y);
  std::size_t N = x.size();
  if (N == 0) return;
  std::size_t L = fft::next_power_of_two(2 * N - 1);
  // With x'_j = x_{N-1-j}, y_n is entry N-1+n of the linear convolution c * x'.
  std::vector<cplx> a(L, cplx{}), b(L, cplx{});
  std::size_t nc = std::min(c.size(), 2 * N - 1);
  for (std::size_t k = 0; k < nc; ++k) a[k] = c[k];
  for (std::size_t j = 0; j < N; ++j) b[j] = x[N - 1 - j];
  fft::transform(a, fft::Direction::forward);
  fft::transform(b, fft::Direction::forward);
  for (std::size_t k = 0; k < L; ++k) a[k] *= b[k];
  fft::transform(a, fft::Direction::backward);
  double inv = 1.0 / static_cast<double>(L);
  for (std::size_t n = 0; n < N; ++n) y[n] = a[N - 1 + n] * inv;
}

PointwiseDetMinors det_minors_serial(const PolyMatrix& entries, std::span<const cplx> points) {
  return det_minors_impl(entries, points, false);
}

PointwiseDetMinors det_minors_omp(const PolyMatrix& entries, std::span<const cplx> points) {
  return det_minors_impl(entries, points, true);
}

}  // namespace szego::kernels
