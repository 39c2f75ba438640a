#include "szego/aak.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "szego/error.hpp"
#include "szego/fft.hpp"

namespace szego {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::size_t numerical_rank(const std::vector<double>& sv, double floor) {
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x > floor; }));
}

CircleGrid samples_of(const CVec& x, std::size_t M) {
  std::vector<cplx> c = to_std(x);
  return grid_transform(std::span<const cplx>(c), M);
}

}  // namespace

SchmidtVector schmidt_from(const Symbol& u, const CVec& v, double s) {
  if (!(s > 0.0)) fail(Errc::invalid_argument, "Schmidt vector needs s > 0");
  CVec h = v + apply_H(u, v) / s;
  if (h.norm() <= 1e-8 * v.norm()) {
    CVec iv = kI * v;
    h = iv + apply_H(u, iv) / s;
    if (h.norm() <= 1e-8 * v.norm()) fail(Errc::numerical_failure, "both Schmidt candidates vanish");
  }
  h /= h.norm();
  SchmidtVector out{s, h, (apply_H(u, h) - s * h).norm() / s};
  return out;
}

SchmidtVector schmidt_vector(const HankelPair& pair, double s) {
  EigenSystem es = pair_eigs(pair, false);
  if (es.size() == 0) fail(Errc::invalid_argument, "symbol is numerically zero");
  double target = s * s;
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < es.values.size(); ++j)
    if (std::abs(es.values(j) - target) < std::abs(es.values(best) - target)) best = j;
  if (std::abs(es.values(best) - target) > 1e-6 * std::max(target, es.values(0)))
    fail(Errc::invalid_argument, "s^2 = " + fmt(target) + " is not an eigenvalue of H_u^2");
  return schmidt_from(pair.u, es.vectors.col(best), s);
}

AAKResult best_approx(const Symbol& u, std::size_t k) {
  if (k == 0) fail(Errc::invalid_argument, "best_approx needs k >= 1");
  const std::size_t N = u.N();
  AAKResult res;
  res.k = k;
  res.singular_values = hankel_singular_values(u);
  const std::vector<double>& sv = res.singular_values;
  if (sv.empty() || !(sv[0] > 0.0)) fail(Errc::invalid_argument, "symbol is numerically zero");
  const double floor = 1e-12 * sv[0];

  if (k >= sv.size() || sv[k] <= floor) {
    // Gamma_u already has rank <= k.
    res.r = u;
    res.v = Symbol::from_coeffs(std::vector<cplx>(N, cplx{}));
    res.L = N;
    res.rank_r = numerical_rank(sv, 1e-9 * sv[0]);
    res.certificate_ok = res.rank_r <= k;
    if (!res.certificate_ok) res.message = "rank of Gamma_u exceeds k";
    return res;
  }
  if (sv[k - 1] - sv[k] <= 1e-8 * sv[0])
    fail(Errc::invalid_argument, "no gap above s_k: s_{k-1} = " + fmt(sv[k - 1]) + ", s_k = " + fmt(sv[k]));
  const double s = sv[k];
  res.s = s;

  HankelPair pair = build_pair(u);
  EigenSystem es = pair_eigs(pair, false);
  if (es.size() <= k) fail(Errc::numerical_failure, "eigen-decomposition missed s_k");
  SchmidtVector sch = schmidt_from(u, es.vectors.col(static_cast<Eigen::Index>(k)), s);
  if (sch.residual > 1e-8) fail(Errc::numerical_failure, "Schmidt vector residual " + fmt(sch.residual));

  // phi = h / conj(h) on a grid of size 8L; v = s Pi(phi) must be resolved in L modes.
  std::size_t L = N;
  std::size_t M = fft::next_power_of_two(8 * N);
  std::vector<cplx> vc;
  for (int attempt = 0;; ++attempt) {
    if (M > (std::size_t{1} << 22)) fail(Errc::numerical_failure, "Fourier tail of s Pi(phi) not resolved");
    CircleGrid g = samples_of(sch.h, M);
    double hmax = 0.0, hmin = std::numeric_limits<double>::infinity();
    for (cplx x : g.samples) hmax = std::max(hmax, std::abs(x)), hmin = std::min(hmin, std::abs(x));
    if (hmin <= 1e-10 * hmax) {
      if (attempt >= 4) fail(Errc::numerical_failure, "Schmidt vector vanishes on the circle");
      M *= 2;
      continue;
    }
    res.unimodularity = 0.0;
    for (cplx& x : g.samples) {
      x = x / std::conj(x);
      res.unimodularity = std::max(res.unimodularity, std::abs(std::abs(x) - 1.0));
    }
    std::vector<cplx> coef = grid_coefficients(g);
    const std::size_t half = M / 2;
    std::size_t last = 0;
    for (std::size_t n = 0; n < half; ++n)
      if (std::abs(coef[n]) > 1e-14) last = n;
    L = std::max(N, last + 1);
    if (L > half / 2) {
      M *= 2;
      continue;
    }
    res.tail = 0.0;
    for (std::size_t n = L; n < half; ++n) res.tail = std::max(res.tail, std::abs(coef[n]));
    vc.assign(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(L));
    for (cplx& x : vc) x *= s;
    break;
  }
  if (res.unimodularity > 1e-8) fail(Errc::numerical_failure, "|phi| deviates from 1 by " + fmt(res.unimodularity));

  std::vector<cplx> rc(L, cplx{});
  for (std::size_t n = 0; n < L; ++n) rc[n] = (n < N ? u.coeffs[n] : cplx{}) - vc[n];
  res.L = L;
  res.v = Symbol::from_coeffs(vc);
  res.r = Symbol::from_coeffs(std::move(rc));

  std::vector<double> sv_v = hankel_singular_values(res.v);
  std::vector<double> sv_r = hankel_singular_values(res.r);
  res.distance = sv_v.empty() ? 0.0 : sv_v[0];
  res.rank_r = numerical_rank(sv_r, 1e-9 * sv[0]);
  bool dist_ok = std::abs(res.distance - s) <= 1e-7 * s;
  res.certificate_ok = dist_ok && res.rank_r == k;
  if (!dist_ok)
    res.message = "||Gamma_u - Gamma_r|| = " + fmt(res.distance) + " differs from s_k = " + fmt(s);
  else if (res.rank_r != k)
    res.message = "rank of Gamma_r is " + std::to_string(res.rank_r) + ", expected " + std::to_string(k);
  return res;
}

RatioCertificate ratio_certificate(const HankelPair& pair, const Cluster& cluster, std::size_t samples,
                                   unsigned seed) {
  if (cluster.from_K) fail(Errc::invalid_argument, "ratio certificate needs an H2 cluster");
  if (!(cluster.s > 0.0) || cluster.dim == 0) fail(Errc::invalid_argument, "ratio certificate needs s > 0");
  RatioCertificate cert;
  cert.s = cluster.s;
  cert.m = cluster.dim;
  const int d = static_cast<int>(cluster.dim) - 1;
  const std::size_t len = static_cast<std::size_t>(cluster.basis.rows());
  const std::size_t M = fft::next_power_of_two(std::max(2 * len + 2 * cluster.dim, 4 * cluster.dim + 1));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;

  for (std::size_t t = 0; t < samples; ++t) {
    CVec c(static_cast<Eigen::Index>(cluster.dim));
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = cplx(g(rng), g(rng));
    CVec h = cluster.basis * c;
    CVec f = cluster.s * h;
    CVec Hh = apply_H(pair.u, h);
    CircleGrid fg = samples_of(f, M), gg = samples_of(Hh, M);
    RatioFit fit = fit_ratio(fg, gg, d, d);
    if (fit.residual > 1e-6)
      fail(Errc::certificate_failed, "ratio fit residual " + fmt(fit.residual) + " at s = " + fmt(cert.s));

    double unimod = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
      cplx z = fg.point(k);
      cplx den = fit.den(z);
      if (den == cplx{}) fail(Errc::certificate_failed, "fitted ratio has a pole on the circle");
      unimod = std::max(unimod, std::abs(std::abs(fit.num(z) / den) - 1.0));
    }
    if (unimod > 1e-6) fail(Errc::certificate_failed, "ratio is not unimodular, deviation " + fmt(unimod));

    Poly refl = conj_reflect(fit.den, d);
    cplx inner{};
    double rn = 0.0;
    for (int k = 0; k <= d; ++k) {
      inner += std::conj(refl[static_cast<std::size_t>(k)]) * fit.num[static_cast<std::size_t>(k)];
      rn += std::norm(refl[static_cast<std::size_t>(k)]);
    }
    cplx phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx{1.0};
    double res2 = 0.0, nn = 0.0;
    for (int k = 0; k <= d; ++k) {
      res2 += std::norm(fit.num[static_cast<std::size_t>(k)] - phase * refl[static_cast<std::size_t>(k)]);
      nn += std::norm(fit.num[static_cast<std::size_t>(k)]);
    }
    double refl_res = std::sqrt(res2 / std::max(nn, rn));
    if (refl_res > 1e-6)
      fail(Errc::certificate_failed, "denominator is not the reflection of the numerator, residual " + fmt(refl_res));

    int inside = 0;
    if (d > 0)
      for (cplx r : poly_roots(fit.num)) inside += std::abs(r) < 1.0;
    cert.fit_residuals.push_back(fit.residual);
    cert.unimodularity.push_back(unimod);
    cert.reflection_residuals.push_back(refl_res);
    cert.roots_inside.push_back(inside);
  }
  return cert;
}

}  // namespace szego
