// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "szego/aak.hpp"
#include "szego/bateman.hpp"
#include "szego/error.hpp"
#include "szego/forward_map.hpp"
#include "szego/inverse_map.hpp"
#include "szego/kernels.hpp"
#include "szego/sampling.hpp"
#include "szego/szego_flow.hpp"

using namespace szego;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    o = body();
  } catch (const Error& e) {
    o = {false, std::string("threw ") + errc_name(e.code()) + ": " + e.what()};
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  failures += !o.pass;
  std::printf("%s %2d %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    cplx x = k < a.size() ? a[k] : cplx{};
    cplx y = k < b.size() ? b[k] : cplx{};
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

double signed_quartic_sum(const SpectralData& d) {
  double e = 0.0;
  for (std::size_t r = 0; r < d.n(); ++r) e += (r % 2 == 0 ? 1.0 : -1.0) * std::pow(d.s[r], 4);
  return 0.25 * e;
}

Symbol monomial_symbol(std::size_t N, std::size_t k) {
  std::vector<cplx> c(N, cplx{});
  c[k] = 1.0;
  return Symbol::from_coeffs(c);
}

// Singular values of the finite Hankel matrix by dense SVD.
std::vector<double> svd_values(const std::vector<cplx>& c, std::size_t N) {
  Eigen::BDCSVD<CMat> svd(hankel_matrix(c, N));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

Outcome roundtrip_bijection() {
  constexpr std::size_t kCases = 50;
  constexpr double kSTol = 1e-8, kAngleTol = 1e-6, kPTol = 1e-6, kSeconds = 30.0;
  auto t0 = Clock::now();
  std::mt19937_64 rng(20261014);
  double s_err = 0.0, a_err = 0.0, p_err = 0.0;
  bool shapes = true;
  for (std::size_t i = 0; i < kCases; ++i) {
    SpectralRoundtrip r = spectral_roundtrip(random_spectral_data(rng));
    shapes &= r.shape_ok;
    s_err = std::max(s_err, r.s_error);
    a_err = std::max(a_err, r.angle_error);
    p_err = std::max(p_err, r.p_error);
  }
  double t = seconds_since(t0);
  bool ok = shapes && s_err < kSTol && a_err < kAngleTol && p_err < kPTol && t < kSeconds;
  return {ok, "s " + fmt(s_err) + " angle " + fmt(a_err) + " P " + fmt(p_err) + (shapes ? "" : " shape mismatch") +
                  ", " + fmt(t) + " s < 30 s"};
}

Outcome rank_one_closed_forms() {
  constexpr double kTol = 1e-9;
  const double alpha = 0.75, p = 0.5;
  const double lambda = alpha / (1.0 - p * p), mu = alpha * p / (1.0 - p * p);
  SpectralData d = forward(Symbol::from_rational(RationalFunction(Poly{alpha}, Poly{1.0, -p})));
  if (d.n() != 2) return {false, "n = " + std::to_string(d.n())};
  double e = std::max(std::abs(d.s[0] - lambda), std::abs(d.s[1] - mu));
  return {e < kTol, "s = (" + fmt(d.s[0]) + ", " + fmt(d.s[1]) + "), error " + fmt(e)};
}

Outcome multiplicity_case() {
  constexpr double kAnalyzeTol = 1e-8, kSynthTol = 1e-9;
  Symbol u = monomial_symbol(2, 1);
  // 2 x 2 oracle: Gamma = [[0, 1], [1, 0]] has both singular values 1.
  std::vector<double> sv = svd_values(u.coeffs, 2);
  ForwardReport rep = analyze(u);
  const SpectralData& d = rep.data;
  bool shape = d.n() == 1 && rep.dims[0] == 2;
  double e = shape ? std::abs(d.s[0] - sv[0]) + std::abs(sv[1] - sv[0]) : 1.0;
  if (shape) {
    // Psi_1 = z: phase 1 and P = z.
    e = std::max(e, std::abs(std::polar(1.0, -d.psi[0].angle()) - 1.0));
    e = std::max(e, max_abs_diff(d.psi[0].P().coeffs(), {0.0, 1.0}));
  }
  std::vector<cplx> zero{0.0};
  SpectralData z{{1.0}, {BlaschkeProduct::from_zeros(zero)}};
  Symbol back = synthesize(z).symbol(16);
  double se = max_abs_diff(back.coeffs, monomial_symbol(16, 1).coeffs);
  return {shape && e < kAnalyzeTol && se < kSynthTol,
          std::string(shape ? "one cluster, dim 2" : "wrong cluster shape") + ", analyze error " + fmt(e) +
              ", synthesize error " + fmt(se)};
}

Outcome bateman_suite() {
  constexpr double kIdentityTol = 1e-10, kHandTol = 1e-12;
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, identity_residuals(random_interlaced(rng, 6)).max());
  InterlacedValues hand{{4.0, 1.0}, {2.0, 0.0}};
  auto t = tau_squares(hand), k = kappa_squares(hand);
  double h = std::max({std::abs(t[0] - 12.8), std::abs(t[1] - 0.2), std::abs(k[0] - 9.0), std::abs(k[1] - 4.0)});
  return {worst < kIdentityTol && h < kHandTol, "identities " + fmt(worst) + ", hand case " + fmt(h)};
}

Outcome energy_identity() {
  constexpr double kExactTol = 1e-10, kRandomTol = 1e-8;
  Symbol u = Symbol::from_coeffs({3.0, 2.0});
  double grid = conserved_quantities(u).energy;
  double spec = signed_quartic_sum(forward(u));
  double e0 = std::max({std::abs(grid - 241.0 / 4.0), std::abs(spec - 241.0 / 4.0), std::abs(grid - spec)});
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Symbol v = random_rational_symbol(rng, 3, false);
    double g = conserved_quantities(v).energy;
    worst = std::max(worst, std::abs(g - signed_quartic_sum(forward(v))) / std::max(1.0, g));
  }
  return {e0 < kExactTol && worst < kRandomTol, "3+2z " + fmt(e0) + ", 20 random " + fmt(worst)};
}

Outcome flow_agreement() {
  constexpr std::size_t kN = 128;
  constexpr double kGapTol = 1e-6, kDriftTol = 1e-8, kSeconds = 60.0;
  auto t0 = Clock::now();
  std::vector<Symbol> starts{monomial_symbol(kN, 1),
                             Symbol::from_rational(RationalFunction(Poly{0.0, 0.75}, Poly{1.0, 0.0, -0.5}), kN)};
  std::mt19937_64 rng(6);
  for (int i = 0; i < 3; ++i) starts.push_back(random_flow_symbol(rng, 3, 3.0, kN));
  FlowOptions o;
  o.dt = 1e-3;
  double gap = 0.0, drift = 0.0;
  for (const Symbol& u : starts) {
    FlowTrajectory tr = direct_evolve(u, 1.0, o);
    Symbol exact = synthesize(exact_evolve(forward(u), 1.0)).symbol(kN);
    gap = std::max(gap, (to_cvec(tr.final_state().coeffs) - to_cvec(exact.coeffs)).norm());
    drift = std::max(drift, tr.max_drift);
  }
  double t = seconds_since(t0);
  return {gap < kGapTol && drift < kDriftTol && t < kSeconds,
          "gap " + fmt(gap) + ", drift " + fmt(drift) + ", " + fmt(t) + " s < 60 s"};
}

Outcome hierarchy_speeds_check() {
  constexpr double kRelTol = 1e-5, kT = 1e-3;
  std::vector<Symbol> symbols{Symbol::from_coeffs({3.0, 2.0}).resized(8),
                              Symbol::from_rational(RationalFunction(Poly{0.0, 0.75}, Poly{1.0, 0.0, -0.5}))};
  FlowOptions o;
  o.dt = 1e-4;
  double worst = 0.0;
  for (const Symbol& u : symbols) {
    SpectralData d0 = forward(u);
    for (double y : {0.5, 2.0}) {
      SpectralData d1 = forward(direct_evolve(u, kT, o, Field::hierarchy_flow(y)).final_state());
      if (d1.n() != d0.n()) return {false, "spectral shape changed along the flow"};
      InterlacedValues iv = InterlacedValues::from_spectral(d0);
      double J = j_of_x(iv, -y);
      for (std::size_t r = 0; r < d0.n(); ++r) {
        double omega = (r % 2 == 0 ? 1.0 : -1.0) * 2.0 * y * J / (1.0 + y * d0.s[r] * d0.s[r]);
        double dpsi = std::remainder(d1.psi[r].angle() - d0.psi[r].angle(), 2.0 * std::numbers::pi);
        // Psi_r = e^{-i psi_r} P_r / D_r and psi_r decreases at rate omega_r.
        worst = std::max(worst, std::abs(-dpsi / kT - omega) / std::abs(omega));
      }
    }
  }
  return {worst < kRelTol, "max relative speed error " + fmt(worst)};
}

Outcome aak_three_plus_two_z() {
  constexpr double kTol = 1e-7;
  Symbol u = Symbol::from_coeffs({3.0, 2.0});
  // 2 x 2 eigensystem of [[3, 2], [2, 0]]: eigenvalues 4 and -1.
  Eigen::Matrix2d g;
  g << 3.0, 2.0, 2.0, 0.0;
  Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(g).eigenvalues().cwiseAbs();
  double s1 = ev.minCoeff();
  AAKResult r = best_approx(u, 1);
  double e = std::abs(r.distance - s1);
  return {e < kTol && r.rank_r == 1 && std::abs(s1 - 1.0) < 1e-14,
          "distance " + fmt(r.distance) + " (oracle " + fmt(s1) + "), rank " + std::to_string(r.rank_r)};
}

Outcome real_diagnostics_check() {
  std::mt19937_64 rng(9);
  int bad = 0;
  std::string first;
  for (int i = 0; i < 20; ++i) {
    RealDiagnostics d = real_diagnostics(random_conditioned_real_symbol(rng, 4));
    if (!d.ok()) {
      ++bad;
      if (first.empty()) first = d.violations.front();
    }
  }
  return {bad == 0, std::to_string(20 - bad) + "/20 symbols pass" + (first.empty() ? "" : ": " + first)};
}

double best_time(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

Outcome fft_matvec() {
  constexpr double kEqualTol = 1e-12, kSpeedup = 10.0;
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  auto random_vec = [&](std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx& x : v) x = cplx(g(rng), g(rng));
    return v;
  };
  std::vector<cplx> c = random_vec(2 * 256 - 1), x = random_vec(256), yd(256), yf(256);
  kernels::hankel_matvec_dense_serial(c, x, yd);
  kernels::hankel_matvec_fft(c, x, yf);
  double scale = 0.0;
  for (cplx v : yd) scale = std::max(scale, std::abs(v));
  double err = max_abs_diff(yd, yf) / scale;

  const std::size_t N = 4096;
  c = random_vec(2 * N - 1);
  x = random_vec(N);
  yd.assign(N, cplx{});
  yf.assign(N, cplx{});
  kernels::hankel_matvec_fft(c, x, yf);  // plan creation stays out of the timing
  double td = best_time([&] { kernels::hankel_matvec_dense_serial(c, x, yd); }, 5);
  double tf = best_time([&] { kernels::hankel_matvec_fft(c, x, yf); }, 20);
  double speedup = td / tf;
  return {err < kEqualTol && speedup >= kSpeedup,
          "N=256 relative error " + fmt(err) + ", N=4096 speedup " + fmt(speedup) + "x"};
}

Outcome traveling_wave_check() {
  constexpr double kFitTol = 1e-6;
  TravelingWaveReport rep = traveling_wave(1.0, 1, 2, 0.5, 0.5, 1e-3, 128);
  if (!rep.shape.ok) return {false, "shape check: " + rep.shape.message};
  return {rep.fit.residual < kFitTol, "one H cluster, Psi monomial, c " + fmt(rep.fit.c) + " omega " +
                                          fmt(rep.fit.omega) + ", fit residual " + fmt(rep.fit.residual)};
}

}  // namespace

int main() {
  kernels::set_thread_cap(1);
  criterion(1, "round-trip bijection", roundtrip_bijection);
  criterion(2, "rank-one closed forms", rank_one_closed_forms);
  criterion(3, "multiplicity case u = z", multiplicity_case);
  criterion(4, "Bateman identities", bateman_suite);
  criterion(5, "energy identity", energy_identity);
  criterion(6, "direct vs exact flow", flow_agreement);
  criterion(7, "hierarchy angle speeds", hierarchy_speeds_check);
  criterion(8, "best rank-1 approximation", aak_three_plus_two_z);
  criterion(9, "real symbol diagnostics", real_diagnostics_check);
  criterion(10, "FFT Hankel matvec", fft_matvec);
  criterion(11, "traveling wave", traveling_wave_check);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
