#pragma once

#include <random>

#include "szego/bateman.hpp"
#include "szego/hankel.hpp"
#include "szego/spectral_data.hpp"

namespace szego {

struct SamplingOptions {
  std::size_t n_min = 1;
  std::size_t n_max = 4;
  int d_max = 2;
  double s_lo = 0.1;
  double s_hi = 10.0;
  /// Consecutive values satisfy (s_r - s_{r+1}) / s_r >= min_gap.
  double min_gap = 0.05;
  /// Blaschke zeros are drawn uniformly from the disc of this radius.
  double zero_radius = 0.9;
};

/// n log-uniform values in [s_lo, s_hi] with the gap condition, by rejection.
std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, const SamplingOptions& opts);
BlaschkeProduct random_blaschke(std::mt19937_64& rng, int degree, double zero_radius);
SpectralData random_spectral_data(std::mt19937_64& rng, const SamplingOptions& opts = {});
/// q in [1, q_max], sigma_q = 0 with probability 1/2.
InterlacedValues random_interlaced(std::mt19937_64& rng, std::size_t q_max,
                                   const SamplingOptions& opts = {});
/// Rational symbol of rank in [1, max_rank], poles of modulus <= max_pole.
/// Real coefficients when real is set.
Symbol random_rational_symbol(std::mt19937_64& rng, int max_rank, bool real, double max_pole = 0.7);

/// Real rational symbol redrawn until s_{rank-1} >= min_ratio * s_0, so no
/// singular value sits at the clustering resolution.
Symbol random_conditioned_real_symbol(std::mt19937_64& rng, int max_rank, double min_ratio = 1e-2);

/// Synthesized symbol with s in [0.2, 2], n <= 3 and Blaschke degrees <= 1,
/// kept only when its rank is <= max_rank, its norm <= max_norm and its Taylor
/// tail is resolved within N coefficients. Returned at truncation N.
Symbol random_flow_symbol(std::mt19937_64& rng, int max_rank, double max_norm, std::size_t N);

}  // namespace szego
