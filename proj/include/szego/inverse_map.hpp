#pragma once

#include <vector>

#include "szego/algebra.hpp"
#include "szego/forward_map.hpp"
#include "szego/hankel.hpp"
#include "szego/spectral_data.hpp"

namespace szego {

/// The q x q matrix built from spectral data, in both forms.
struct CMatrix {
  std::size_t q = 0;
  std::vector<double> rho, sigma;  // sigma_q = 0 for odd n
  std::vector<BlaschkeProduct> psi_odd;   // Psi_{2j-1}
  std::vector<BlaschkeProduct> psi_even;  // Psi_{2k}, Psi_{2q} = 1 for odd n
  /// Cleared polynomial entries c#_{kl}; row k, column l.
  PolyMatrix cleared;
  /// q + sum of the Blaschke degrees.
  int N = 0;

  /// Rational entry c_{kl}(z) = (rho_l - sigma_k z Psi_{2k} Psi_{2l-1}) / (rho_l^2 - sigma_k^2).
  cplx entry(std::size_t k, std::size_t l, cplx z) const;
};

CMatrix build_cmatrix(const SpectralData& data);

struct SynthesisResult {
  RationalFunction u;
  Poly Q;  // det of the cleared matrix, Q(0) = 1
  int N = 0;      // Hankel rank q + sum d_r
  int deg_Q = 0;  // N for even n, at most N - 1 for odd n
  std::vector<int> degrees;  // d_r
  /// h_j, u_j for j <= q and u'_k for k <= q (the last one belongs to the
  /// virtual sigma_q = 0 when n is odd).
  std::vector<RationalFunction> h, u_odd, u_even;
  /// Diagnostics for near-degenerate data.
  double q_min_root_modulus = 0.0;
  double q_min_on_circle = 0.0;  // min |Q| / max |Q| on the unit circle

  Symbol symbol(std::size_t N = 0) const { return Symbol::from_rational(u, N); }
};

/// Throws hypothesis-violation when Q loses degree or vanishes on the closed disc.
SynthesisResult synthesize(const SpectralData& data);

struct SynthesisResiduals {
  double ch = 0.0;             // max |sum_l c_kl h_l - 1|
  double drpr = 0.0;           // u'_k against kappa_k^2 sum_j u_j / (rho_j^2 - sigma_k^2)
  double decompositions = 0.0; // |sum_j u_j - sum_k u'_k| and both against u
};

/// Identities of the explicit formula, at 16 points of the unit circle.
SynthesisResiduals synthesis_residuals(const SpectralData& data, const SynthesisResult& res);

/// The explicit real formula with Gamma eigenvalues lambda_j and Gamma~
/// eigenvalues mu_k; requires |l1| > |m1| > |l2| > |m2| > 0.
RationalFunction fourvalue_formula(double l1, double m1, double l2, double m2);
/// Same data as spectral data: s = moduli, Psi of degree 0 carrying the signs.
SpectralData fourvalue_spectral_data(double l1, double m1, double l2, double m2);
/// (l1^2 - l2^2)(1 - p z) / (l1 - p z (l1 - l2) - l2 z^2).
RationalFunction collapsed_formula(double l1, double l2, double p);

struct SpectralRoundtrip {
  double s_error = 0.0;      // max relative error of s
  double angle_error = 0.0;  // max circular angle distance
  double p_error = 0.0;      // max P-coefficient distance
  bool shape_ok = true;      // n and every degree recovered
};

SpectralRoundtrip spectral_roundtrip(const SpectralData& data, const AnalyzeOptions& opts = {});
/// l2 distance of coefficients between u and synthesize(forward(u)).
double symbol_roundtrip(const Symbol& u, const AnalyzeOptions& opts = {});

}  // namespace szego
