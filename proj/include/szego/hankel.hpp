#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "szego/algebra.hpp"
#include "szego/types.hpp"

namespace szego {

/// Hardy-class symbol u = sum c_n z^n, truncated to N coefficients, with an
/// optional exact rational form.
struct Symbol {
  std::vector<cplx> coeffs;
  std::optional<RationalFunction> rational;

  std::size_t N() const noexcept { return coeffs.size(); }

  static Symbol from_coeffs(std::vector<cplx> c);
  /// N = 0 picks a truncation that resolves the Taylor tail to rounding level.
  static Symbol from_rational(RationalFunction fn, std::size_t N = 0);
  static Symbol from_poly(const Poly& p) { return from_coeffs(p.coeffs()); }

  /// Same symbol at another truncation; recomputed exactly when rational.
  Symbol resized(std::size_t N) const;
  /// |c_{N-1}| <= 1e-8 max |c_n|.
  bool resolved() const;
  double l2_norm() const;
  bool is_real(double tol = 1e-12) const;
};

/// Smallest truncation resolving the Taylor tail of fn to rounding level.
std::size_t resolved_truncation(const RationalFunction& fn);

/// Coefficients shifted left by one; the rational form becomes (u - u(0))/z.
Symbol shift_symbol(const Symbol& u);

/// y_n = sum_k c_{n+k} x_k with N = len(x).
std::vector<cplx> hankel_matvec(std::span<const cplx> c, std::span<const cplx> x);
CVec hankel_matvec(std::span<const cplx> c, const CVec& x);

/// H_u(h) = Gamma conj(h); antilinear.
CVec apply_H(const Symbol& u, const CVec& h);
/// K_u(h) = Gamma~ conj(h).
CVec apply_K(const Symbol& u, const CVec& h);

/// N x N matrix with entries c_{n+k}, zero beyond the stored coefficients.
CMat hankel_matrix(std::span<const cplx> c, std::size_t N);

struct HankelPair {
  Symbol u;
  Symbol u_shift;
  std::size_t N = 0;
  bool dense = false;
  /// Populated only when dense.
  CMat Gamma, Gamma_t, H2, K2;
  /// ||K2 - (H2 - u u*)|| / ||H2||, dense case only.
  double ku2_residual = 0.0;

  /// x -> H2 x and x -> K2 x through FFT matvecs (any N).
  CVec H2_apply(const CVec& x) const;
  CVec K2_apply(const CVec& x) const;
};

inline constexpr std::size_t kDenseLimit = 512;

/// Throws spectral-inconsistency when the K2 identity is violated.
HankelPair build_pair(const Symbol& u, std::size_t dense_limit = kDenseLimit);

struct EigenSystem {
  Eigen::VectorXd values;  // descending
  CMat vectors;            // orthonormal columns

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

using LinearOp = std::function<CVec(const CVec&)>;

/// Full dense decomposition of a Hermitian matrix.
EigenSystem hermitian_eigs(const CMat& A);
/// Block Krylov with full reorthogonalization; returns every pair whose
/// eigenvalue exceeds floor_rel * ||A||. Block size bounds the detectable
/// multiplicity.
EigenSystem block_krylov_eigs(const LinearOp& A, std::size_t N, double floor_rel = 1e-12,
                              std::size_t block = 8, std::size_t max_dim = 0,
                              unsigned seed = 12345);

/// Residual max_j ||A v_j - lambda_j v_j|| / ||A||.
double eig_residual(const LinearOp& A, const EigenSystem& es);

/// Eigen-decomposition of H2 (or K2) picking dense or Krylov by the pair.
EigenSystem pair_eigs(const HankelPair& pair, bool shifted);

/// Singular values of Gamma on the truncation, descending.
std::vector<double> hankel_singular_values(const Symbol& u, std::size_t dense_limit = kDenseLimit);

}  // namespace szego
