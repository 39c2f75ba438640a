#include "szego/szego_flow.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "szego/bateman.hpp"
#include "szego/error.hpp"
#include "szego/fft.hpp"
#include "szego/inverse_map.hpp"

namespace szego {

namespace {

// Values of sum_{n<N} c_n e^{2 pi i nk/M} at k = 0..M-1, M >= N.
std::vector<cplx> circle_values(std::span<const cplx> c, std::size_t M) {
  std::vector<cplx> buf(M, cplx{});
  std::copy(c.begin(), c.end(), buf.begin());
  fft::transform(buf, fft::Direction::backward);
  return buf;
}

// First N Fourier coefficients of grid samples.
std::vector<cplx> low_modes(std::vector<cplx> samples, std::size_t N) {
  const double inv = 1.0 / static_cast<double>(samples.size());
  fft::transform(samples, fft::Direction::forward);
  samples.resize(N);
  for (cplx& v : samples) v *= inv;
  return samples;
}

// First N coefficients of the product a b.
std::vector<cplx> truncated_product(std::span<const cplx> a, std::span<const cplx> b,
                                    std::size_t N) {
  if (N <= 64) {
    std::vector<cplx> out(N, cplx{});
    for (std::size_t i = 0; i < std::min(N, a.size()); ++i)
      for (std::size_t j = 0; i + j < N && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }
  const std::size_t M = fft::next_power_of_two(a.size() + b.size());
  std::vector<cplx> va = circle_values(a, M), vb = circle_values(b, M);
  for (std::size_t k = 0; k < M; ++k) va[k] *= vb[k];
  return low_modes(std::move(va), N);
}

CVec gamma_conj(const Symbol& u, const CVec& x) { return hankel_matvec(u.coeffs, CVec(x.conjugate())); }

double relative_change(double now, double ref) {
  double scale = std::abs(ref) > 0.0 ? std::abs(ref) : 1.0;
  return std::abs(now - ref) / scale;
}

}  // namespace

std::vector<double> Conserved::flat() const {
  std::vector<double> v{l2sq, momentum, energy};
  v.insert(v.end(), J.begin(), J.end());
  return v;
}

CVec resolvent_unit(const Symbol& u, double y) {
  const auto N = static_cast<Eigen::Index>(u.N());
  CVec e0 = CVec::Zero(N);
  if (N == 0) return e0;
  e0(0) = 1.0;
  if (u.N() <= kDenseLimit) {
    CMat G = hankel_matrix(u.coeffs, u.N());
    CMat A = CMat::Identity(N, N) + y * (G * G.adjoint());
    return A.llt().solve(e0);
  }
  // Conjugate gradients on the Hermitian positive operator I + y H_u^2.
  auto op = [&](const CVec& x) -> CVec { return x + y * gamma_conj(u, gamma_conj(u, x)); };
  CVec w = CVec::Zero(N);
  CVec r = e0, p = r;
  double rr = r.squaredNorm();
  for (int it = 0; it < 4 * N && std::sqrt(rr) > 1e-15; ++it) {
    CVec Ap = op(p);
    double alpha = rr / std::real(p.dot(Ap));
    w += alpha * p;
    r -= alpha * Ap;
    double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  if (std::sqrt(rr) > 1e-12) fail(Errc::numerical_failure, "resolvent solve did not converge");
  return w;
}

double j_resolvent(const Symbol& u, double y) {
  if (u.N() == 0) return 1.0;
  return std::real(resolvent_unit(u, y)(0));
}

Conserved conserved_quantities(const Symbol& u, std::span<const double> ys) {
  Conserved q;
  std::vector<double> l2, mom;
  for (std::size_t n = 0; n < u.N(); ++n) {
    double a = std::norm(u.coeffs[n]);
    l2.push_back(a);
    mom.push_back(static_cast<double>(n) * a);
  }
  q.l2sq = pairwise_sum(l2);
  q.momentum = pairwise_sum(mom);
  if (u.N() > 0) {
    std::vector<cplx> vals = circle_values(u.coeffs, 4 * u.N());
    std::vector<double> quart;
    quart.reserve(vals.size());
    for (cplx v : vals) quart.push_back(std::norm(v) * std::norm(v));
    q.energy = 0.25 * pairwise_sum(quart) / static_cast<double>(vals.size());
  }
  for (double y : ys) q.J.push_back(j_resolvent(u, y));
  return q;
}

Symbol szego_rhs(const Symbol& u) {
  const std::size_t N = u.N();
  if (N == 0) return u;
  std::vector<cplx> v = circle_values(u.coeffs, 3 * N);
  for (cplx& x : v) x *= std::norm(x);
  std::vector<cplx> c = low_modes(std::move(v), N);
  for (cplx& x : c) x *= -kI;
  return Symbol::from_coeffs(std::move(c));
}

Symbol hierarchy_field(const Symbol& u, double y) {
  if (!(y > 0.0)) fail(Errc::invalid_argument, "hierarchy parameter y must be positive");
  const std::size_t N = u.N();
  CVec w = resolvent_unit(u, y);
  CVec hw = gamma_conj(u, w);
  std::vector<cplx> ws = to_std(w), hs = to_std(hw);
  std::vector<cplx> c = truncated_product(ws, hs, N);
  for (cplx& x : c) x *= 2.0 * y * kI;
  return Symbol::from_coeffs(std::move(c));
}

FlowTrajectory direct_evolve(const Symbol& u0, double T, const FlowOptions& opts, Field field) {
  if (!(opts.dt > 0.0) || !(T >= 0.0)) fail(Errc::invalid_argument, "need dt > 0 and T >= 0");
  const double norm2 = u0.l2_norm() * u0.l2_norm();
  if (opts.dt * norm2 > 0.1)
    fail(Errc::step_size_failure, "dt ||u0||^2 = " + std::to_string(opts.dt * norm2) + " exceeds 0.1");

  FlowTrajectory traj;
  traj.field = field;
  traj.probes = opts.probes;
  traj.steps = T > 0.0 ? static_cast<std::size_t>(std::ceil(T / opts.dt - 1e-9)) : 0;
  const double h = traj.steps > 0 ? T / static_cast<double>(traj.steps) : opts.dt;
  traj.dt = h;
  const std::size_t every =
      opts.record_every > 0 ? opts.record_every : std::max<std::size_t>(1, traj.steps / 100);

  auto rhs = [&](const CVec& x) -> CVec {
    Symbol s = Symbol::from_coeffs(to_std(x));
    return to_cvec(field.hierarchy ? hierarchy_field(s, field.y).coeffs : szego_rhs(s).coeffs);
  };

  CVec x = to_cvec(u0.coeffs);
  std::vector<double> base;
  auto record = [&](double t) {
    FlowSample smp{t, to_std(x), conserved_quantities(Symbol::from_coeffs(to_std(x)), opts.probes)};
    std::vector<double> flat = smp.q.flat();
    if (base.empty()) {
      base = flat;
      traj.drift.assign(flat.size(), 0.0);
    }
    for (std::size_t i = 0; i < flat.size(); ++i)
      traj.drift[i] = std::max(traj.drift[i], relative_change(flat[i], base[i]));
    traj.samples.push_back(std::move(smp));
    traj.max_drift = *std::max_element(traj.drift.begin(), traj.drift.end());
    if (traj.max_drift > opts.drift_limit)
      fail(Errc::step_size_failure, "conserved drift " + std::to_string(traj.max_drift) +
                                        " at t = " + std::to_string(t) + "; reduce dt");
  };

  record(0.0);
  for (std::size_t k = 1; k <= traj.steps; ++k) {
    CVec k1 = rhs(x);
    CVec k2 = rhs(x + 0.5 * h * k1);
    CVec k3 = rhs(x + 0.5 * h * k2);
    CVec k4 = rhs(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (k % every == 0 || k == traj.steps) record(static_cast<double>(k) * h);
  }
  return traj;
}

SpectralData exact_evolve(const SpectralData& data, double t) {
  SpectralData out = data;
  for (std::size_t i = 0; i < data.n(); ++i) {
    double sign = i % 2 == 0 ? -1.0 : 1.0;  // (-1)^r with r = i + 1
    double s2 = data.s[i] * data.s[i];
    out.psi[i] = data.psi[i].rotated(-sign * s2 * t);
  }
  return out;
}

std::vector<double> hierarchy_speeds(const SpectralData& data, double y) {
  if (!(y > 0.0)) fail(Errc::invalid_argument, "hierarchy parameter y must be positive");
  double J = j_of_x(InterlacedValues::from_spectral(data), -y);
  std::vector<double> w;
  for (std::size_t i = 0; i < data.n(); ++i) {
    double sign = i % 2 == 0 ? 1.0 : -1.0;  // (-1)^{r-1}
    w.push_back(sign * 2.0 * y * J / (1.0 + y * data.s[i] * data.s[i]));
  }
  return w;
}

SpectralData hierarchy_exact_evolve(const SpectralData& data, double y, double t) {
  std::vector<double> w = hierarchy_speeds(data, y);
  SpectralData out = data;
  for (std::size_t i = 0; i < data.n(); ++i) out.psi[i] = data.psi[i].rotated(-w[i] * t);
  return out;
}

std::vector<double> exact_gaps(const Symbol& u0, const FlowTrajectory& traj, const AnalyzeOptions& opts) {
  SpectralData d0 = forward(u0, opts);
  std::vector<double> gaps;
  for (const FlowSample& smp : traj.samples) {
    SpectralData dt = traj.field.hierarchy ? hierarchy_exact_evolve(d0, traj.field.y, smp.t)
                                           : exact_evolve(d0, smp.t);
    Symbol ex = synthesize(dt).symbol(smp.c.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < smp.c.size(); ++n) acc += std::norm(smp.c[n] - ex.coeffs[n]);
    gaps.push_back(std::sqrt(acc));
  }
  return gaps;
}

Symbol traveling_wave_symbol(cplx alpha, int ell, int N, cplx p, std::size_t trunc) {
  if (ell < 0 || N <= ell) fail(Errc::invalid_argument, "traveling wave needs 0 <= ell < N");
  if (!(std::abs(p) < 1.0)) fail(Errc::invalid_argument, "traveling wave needs |p| < 1");
  Poly num = Poly::monomial(ell, alpha);
  Poly den = Poly::constant(1.0) - Poly::monomial(N, p);
  return Symbol::from_rational(RationalFunction(num, den), trunc);
}

WaveShape traveling_wave_shape(const Symbol& u, const AnalyzeOptions& opts) {
  WaveShape w;
  ForwardReport rep = analyze(u, opts);
  w.data = rep.data;
  const std::size_t n = rep.data.n();
  w.h_clusters = (n + 1) / 2;
  w.k_clusters = n / 2;
  for (const BlaschkeProduct& b : rep.data.psi) {
    const Poly& P = b.P();
    for (int k = 0; k < P.degree(); ++k)
      w.shape_residual = std::max(w.shape_residual, std::abs(P[static_cast<std::size_t>(k)]));
  }
  if (w.h_clusters != 1 || w.k_clusters > 1) {
    w.message = "expected one H cluster and at most one K cluster, got " +
                std::to_string(w.h_clusters) + " and " + std::to_string(w.k_clusters);
    return w;
  }
  if (w.shape_residual > 1e-6) {
    w.message = "Blaschke factors are not monomials (residual " + std::to_string(w.shape_residual) + ")";
    return w;
  }
  if (n == 2) {
    double rho2 = rep.data.s[0] * rep.data.s[0], sigma2 = rep.data.s[1] * rep.data.s[1];
    double m1 = rep.data.psi[0].degree();
    double ell = rep.data.psi[1].degree() + 1;
    double c = (rho2 - sigma2) / (m1 + ell);
    w.c_predicted = c;
    w.omega_predicted = rho2 - m1 * c;
  }
  w.ok = true;
  return w;
}

WaveFit fit_traveling_wave(const Symbol& u0, const Symbol& uT, double T) {
  const std::size_t N = std::min(u0.N(), uT.N());
  double cmax = 0.0;
  for (std::size_t n = 0; n < N; ++n) cmax = std::max(cmax, std::abs(u0.coeffs[n]));
  if (cmax == 0.0) fail(Errc::invalid_argument, "zero symbol");
  std::vector<std::size_t> modes;
  for (std::size_t n = 0; n < N; ++n)
    if (std::abs(u0.coeffs[n]) > 1e-10 * cmax) modes.push_back(n);

  // Weighted least squares omega + n c = lambda_n; single-mode data fixes only omega.
  auto solve = [&](const std::vector<double>& lam) {
    double sw = 0, sn = 0, snn = 0, sl = 0, snl = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      double wt = std::norm(u0.coeffs[modes[i]]), nn = static_cast<double>(modes[i]);
      sw += wt, sn += wt * nn, snn += wt * nn * nn, sl += wt * lam[i], snl += wt * nn * lam[i];
    }
    double det = sw * snn - sn * sn;
    if (modes.size() < 2 || det <= 1e-14 * sw * std::max(1.0, snn)) return std::pair{sl / sw, 0.0};
    return std::pair{(snn * sl - sn * snl) / det, (sw * snl - sn * sl) / det};
  };

  // Initial frequencies from the vector field, refined by the phases at T.
  Symbol du = szego_rhs(u0.resized(N));
  std::vector<double> lam;
  for (std::size_t n : modes) lam.push_back(std::real(kI * du.coeffs[n] / u0.coeffs[n]));
  auto [omega, c] = solve(lam);
  if (T > 0.0) {
    for (std::size_t i = 0; i < modes.size(); ++i) {
      std::size_t n = modes[i];
      double guess = omega + static_cast<double>(n) * c;
      cplx ratio = uT.coeffs[n] / u0.coeffs[n] * std::polar(1.0, guess * T);
      lam[i] = guess - std::arg(ratio) / T;
    }
    std::tie(omega, c) = solve(lam);
  }

  WaveFit fit{c, omega, 0.0};
  double acc = 0.0, ref = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    cplx model = u0.coeffs[n] * std::polar(1.0, -(omega + static_cast<double>(n) * c) * T);
    acc += std::norm(uT.coeffs[n] - model);
    ref += std::norm(u0.coeffs[n]);
  }
  fit.residual = std::sqrt(acc / ref);
  return fit;
}

TravelingWaveReport traveling_wave(cplx alpha, int ell, int N, cplx p, double T, double dt,
                                   std::size_t trunc) {
  TravelingWaveReport rep;
  rep.u = traveling_wave_symbol(alpha, ell, N, p, trunc);
  rep.shape = traveling_wave_shape(rep.u);
  if (!rep.shape.ok) return rep;
  FlowOptions fo;
  fo.dt = dt;
  FlowTrajectory traj = direct_evolve(rep.u, T, fo);
  rep.fit = fit_traveling_wave(rep.u, traj.final_state(), T);
  return rep;
}

Recurrence recurrence_diagnostic(const Symbol& u0, double T, std::size_t samples, double t_min,
                                 const AnalyzeOptions& opts) {
  if (samples < 2 || !(T > t_min)) fail(Errc::invalid_argument, "need samples >= 2 and T > t_min");
  SpectralData d0 = forward(u0, opts);
  const double norm = u0.l2_norm();
  Recurrence rec;
  rec.min_distance = std::numeric_limits<double>::infinity();
  rec.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    double t = t_min + (T - t_min) * static_cast<double>(k) / static_cast<double>(samples - 1);
    Symbol ut = synthesize(exact_evolve(d0, t)).symbol(u0.N());
    double acc = 0.0;
    for (std::size_t n = 0; n < u0.N(); ++n) acc += std::norm(ut.coeffs[n] - u0.coeffs[n]);
    double d = std::sqrt(acc) / norm;
    if (d < rec.min_distance) rec.min_distance = d, rec.t_at_min = t;
  }
  return rec;
}

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj, const std::vector<double>* gaps) {
  if (traj.samples.empty()) return;
  const std::size_t N = traj.samples.front().c.size();
  os << "t";
  for (std::size_t n = 0; n < N; ++n) os << ",re_c" << n << ",im_c" << n;
  os << ",L2sq,M,E";
  for (double y : traj.probes) os << ",J_" << y;
  if (gaps) os << ",gap";
  os << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const FlowSample& s = traj.samples[i];
    os << s.t;
    for (cplx c : s.c) os << ',' << c.real() << ',' << c.imag();
    os << ',' << s.q.l2sq << ',' << s.q.momentum << ',' << s.q.energy;
    for (double j : s.q.J) os << ',' << j;
    if (gaps) os << ',' << (*gaps)[i];
    os << '\n';
  }
}

}  // namespace szego
