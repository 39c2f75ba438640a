#pragma once

#include <string>
#include <vector>

#include "szego/forward_map.hpp"
#include "szego/hankel.hpp"

namespace szego {

/// h with H_u(h) = s h.
struct SchmidtVector {
  double s = 0.0;
  CVec h;
  /// ||H_u(h) - s h|| / (s ||h||)
  double residual = 0.0;
};

/// Symmetrizes an eigenvector v of H_u^2 (eigenvalue s^2) into h = v + H_u(v)/s,
/// falling back to iv when that vanishes.
SchmidtVector schmidt_from(const Symbol& u, const CVec& v, double s);
/// Uses the H2 eigenvector whose eigenvalue is closest to s^2; throws
/// invalid-argument when none is within 1e-6 relative.
SchmidtVector schmidt_vector(const HankelPair& pair, double s);

struct AAKResult {
  std::size_t k = 0;
  double s = 0.0;                      // s_k(u), zero-based
  std::vector<double> singular_values;  // of Gamma_u
  Symbol r;                            // best rank-k approximant, L coefficients
  Symbol v;                            // u - r = s Pi(phi)
  std::size_t L = 0;
  double unimodularity = 0.0;  // max ||phi| - 1| on the grid
  double tail = 0.0;           // max |v_n| / s beyond L on the grid
  double distance = 0.0;       // ||Gamma_u - Gamma_r|| by SVD
  std::size_t rank_r = 0;
  bool certificate_ok = false;
  std::string message;
};

/// Best approximation of Gamma_u by a Hankel operator of rank k >= 1.
/// Throws invalid-argument when s_{k-1} = s_k numerically.
AAKResult best_approx(const Symbol& u, std::size_t k);

struct RatioCertificate {
  double s = 0.0;
  std::size_t m = 0;
  std::vector<double> fit_residuals;
  std::vector<double> unimodularity;
  /// ||num - e^{i theta} conj_reflect(den)|| / ||num|| per sample.
  std::vector<double> reflection_residuals;
  /// Roots of the numerator inside the open disc per sample (an inner ratio has m - 1).
  std::vector<int> roots_inside;
};

/// For random h in the cluster eigenspace, fits s h / H_u(h) with bounds
/// (m-1, m-1) and checks it is a unimodular ratio P / (z^{m-1} conj P(1/z)).
/// Throws certificate-failed when a sample does not pass.
RatioCertificate ratio_certificate(const HankelPair& pair, const Cluster& cluster,
                                   std::size_t samples = 3, unsigned seed = 7);

}  // namespace szego
