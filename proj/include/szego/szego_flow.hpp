#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "szego/forward_map.hpp"
#include "szego/hankel.hpp"
#include "szego/spectral_data.hpp"

namespace szego {

inline constexpr std::array<double, 3> kJProbes{0.1, 1.0, 10.0};

struct Conserved {
  double l2sq = 0.0;      // sum |c_n|^2
  double momentum = 0.0;  // sum n |c_n|^2
  double energy = 0.0;    // mean |u|^4 / 4
  std::vector<double> J;  // J^y at the probe values

  /// l2sq, momentum, energy, J... in that order.
  std::vector<double> flat() const;
};

/// w = (I + y H_u^2)^{-1}(1) on the truncation.
CVec resolvent_unit(const Symbol& u, double y);
/// J^y(u) = (w | 1).
double j_resolvent(const Symbol& u, double y);

Conserved conserved_quantities(const Symbol& u, std::span<const double> ys = kJProbes);

/// -i Pi(|u|^2 u) on the N stored modes, dealiased on 3N points.
Symbol szego_rhs(const Symbol& u);
/// X_{J^y}(u) = 2iy w H_u(w), truncated to N modes.
Symbol hierarchy_field(const Symbol& u, double y);

struct Field {
  bool hierarchy = false;
  double y = 0.0;

  static Field szego() { return {}; }
  static Field hierarchy_flow(double y) { return {true, y}; }
};

struct FlowOptions {
  double dt = 1e-3;
  /// Steps between recorded samples; 0 records about 100 samples.
  std::size_t record_every = 0;
  double drift_limit = 1e-5;
  std::vector<double> probes{kJProbes.begin(), kJProbes.end()};
};

struct FlowSample {
  double t = 0.0;
  std::vector<cplx> c;
  Conserved q;
};

struct FlowTrajectory {
  Field field;
  std::vector<double> probes;
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<FlowSample> samples;  // first is t = 0, last is t = T
  /// Max relative deviation from the t = 0 value, per entry of Conserved::flat.
  std::vector<double> drift;
  double max_drift = 0.0;

  Symbol final_state() const { return Symbol::from_coeffs(samples.back().c); }
};

/// Classical RK4 on the N stored modes. Throws step-size-failure when
/// dt ||u0||^2 > 0.1 or when any conserved quantity drifts by more than
/// drift_limit (relative).
FlowTrajectory direct_evolve(const Symbol& u0, double T, const FlowOptions& opts = {},
                             Field field = Field::szego());

/// psi_r <- psi_r - (-1)^r s_r^2 t.
SpectralData exact_evolve(const SpectralData& data, double t);
/// omega_r = (-1)^{r-1} 2y J^y / (1 + y s_r^2).
std::vector<double> hierarchy_speeds(const SpectralData& data, double y);
/// Psi_r <- e^{i omega_r t} Psi_r.
SpectralData hierarchy_exact_evolve(const SpectralData& data, double y, double t);

/// l2 distance between each recorded sample and synthesize(exact_evolve(forward(u0), t)).
std::vector<double> exact_gaps(const Symbol& u0, const FlowTrajectory& traj,
                               const AnalyzeOptions& opts = {});

/// alpha z^ell / (1 - p z^N); rejects ell < 0, N <= ell, |p| >= 1.
Symbol traveling_wave_symbol(cplx alpha, int ell, int N, cplx p, std::size_t trunc = 0);

struct WaveShape {
  bool ok = false;
  std::string message;
  SpectralData data;
  std::size_t h_clusters = 0;
  std::size_t k_clusters = 0;
  /// max |P_k| below the leading coefficient over all Psi_r.
  double shape_residual = 0.0;
  /// From rho^2 = omega + (m-1)c and sigma^2 = omega - ell c; only with a K cluster.
  std::optional<double> c_predicted, omega_predicted;
};

/// One H cluster, at most one K cluster, each Psi a phase times a monomial.
WaveShape traveling_wave_shape(const Symbol& u, const AnalyzeOptions& opts = {});

struct WaveFit {
  double c = 0.0;
  double omega = 0.0;
  /// ||u(T) - e^{-i omega T} u0(e^{i(x - cT)})|| / ||u0||
  double residual = 0.0;
};

/// Fits omega + n c to the mode frequencies of u0 -> uT over time T.
WaveFit fit_traveling_wave(const Symbol& u0, const Symbol& uT, double T);

struct TravelingWaveReport {
  Symbol u;
  WaveShape shape;
  WaveFit fit;
};

/// Builds the wave, checks its spectral shape and fits a direct run over T.
TravelingWaveReport traveling_wave(cplx alpha, int ell, int N, cplx p, double T = 0.5,
                                   double dt = 1e-3, std::size_t trunc = 0);

struct Recurrence {
  double min_distance = 0.0;  // relative to ||u0||
  double t_at_min = 0.0;
  std::size_t samples = 0;
};

/// min over t_k in [t_min, T] of ||u(t_k) - u0|| / ||u0|| along the exact flow.
Recurrence recurrence_diagnostic(const Symbol& u0, double T, std::size_t samples, double t_min,
                                 const AnalyzeOptions& opts = {});

/// Header: t, re_c0, im_c0, ..., L2sq, M, E, J_<y>..., and gap when given.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj,
                          const std::vector<double>* gaps = nullptr);

}  // namespace szego
