#pragma once

#include <span>
#include <vector>

#include "szego/algebra.hpp"
#include "szego/types.hpp"

namespace szego {

/// Psi(z) = e^{-i psi} P(z) / D(z), P monic of degree d with its roots in the
/// open unit disc and D = conj_reflect(P, d).
class BlaschkeProduct {
 public:
  /// Psi = 1.
  BlaschkeProduct();
  /// Throws invalid-argument unless P is monic and Schur.
  BlaschkeProduct(double angle, Poly monic_p);

  static BlaschkeProduct from_zeros(std::span<const cplx> zeros, double angle = 0.0);
  static BlaschkeProduct constant(double angle) { return BlaschkeProduct(angle, Poly{1.0}); }

  double angle() const noexcept { return angle_; }
  int degree() const noexcept { return P_.degree(); }
  const Poly& P() const noexcept { return P_; }
  const Poly& D() const noexcept { return D_; }
  /// Coefficients (a_1, ..., a_d) of P = z^d + a_1 z^{d-1} + ... + a_d.
  std::vector<cplx> schur_coefficients() const;

  cplx operator()(cplx z) const;
  /// Same rotation of the angle, P unchanged.
  BlaschkeProduct rotated(double dpsi) const;

 private:
  double angle_ = 0.0;
  Poly P_;
  Poly D_;
};

/// Angle reduced to [0, 2 pi).
double normalize_angle(double psi);
/// Distance on the circle between two angles.
double angle_distance(double a, double b);

/// Schur-Cohn test on (a_1, ..., a_d).
bool is_schur(std::span<const cplx> a);
/// Same test applied to a monic polynomial.
bool is_schur(const Poly& monic_p);

cplx blaschke_eval(const BlaschkeProduct& psi, cplx z);
BlaschkeProduct blaschke_mul(const BlaschkeProduct& a, const BlaschkeProduct& b);

/// max(circular angle distance, coefficient distance of the P polynomials).
double blaschke_distance(const BlaschkeProduct& a, const BlaschkeProduct& b);

}  // namespace szego
