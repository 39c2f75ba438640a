#include "szego/blaschke.hpp"

#include <cmath>
#include <numbers>

#include "szego/error.hpp"

namespace szego {

double normalize_angle(double psi) {
  double r = std::fmod(psi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angle_distance(double a, double b) {
  double d = normalize_angle(a - b);
  return std::min(d, kTwoPi - d);
}

bool is_schur(std::span<const cplx> a) {
  std::vector<cplx> cur(a.begin(), a.end());
  while (!cur.empty()) {
    std::size_t d = cur.size();
    cplx ad = cur[d - 1];
    double m = std::norm(ad);
    if (!(m < 1.0)) return false;
    std::vector<cplx> next(d - 1);
    for (std::size_t k = 1; k < d; ++k)
      next[k - 1] = (cur[k - 1] - ad * std::conj(cur[d - 1 - k])) / (1.0 - m);
    cur = std::move(next);
  }
  return true;
}

bool is_schur(const Poly& monic_p) {
  int d = monic_p.degree();
  if (d < 0) return false;
  std::vector<cplx> a(static_cast<std::size_t>(d));
  cplx lead = monic_p[static_cast<std::size_t>(d)];
  for (int k = 1; k <= d; ++k) a[static_cast<std::size_t>(k - 1)] = monic_p[static_cast<std::size_t>(d - k)] / lead;
  return is_schur(a);
}

BlaschkeProduct::BlaschkeProduct() : angle_(0.0), P_{1.0}, D_{1.0} {}

BlaschkeProduct::BlaschkeProduct(double angle, Poly monic_p)
    : angle_(normalize_angle(angle)) {
  int d = monic_p.degree();
  if (d < 0) fail(Errc::invalid_argument, "Blaschke product: P is zero");
  if (std::abs(monic_p[static_cast<std::size_t>(d)] - 1.0) > 1e-12)
    fail(Errc::invalid_argument, "Blaschke product: P is not monic");
  std::vector<cplx> c(monic_p.coeffs().begin(), monic_p.coeffs().begin() + d + 1);
  c.back() = 1.0;
  P_ = Poly(std::move(c));
  if (!is_schur(P_)) fail(Errc::invalid_argument, "Blaschke product: P has a root outside the open disc");
  D_ = conj_reflect(P_, d);
}

BlaschkeProduct BlaschkeProduct::from_zeros(std::span<const cplx> zeros, double angle) {
  for (cplx p : zeros)
    if (!(std::abs(p) < 1.0)) fail(Errc::invalid_zero, "Blaschke zero outside the open disc");
  return BlaschkeProduct(angle, Poly::from_roots(zeros));
}

std::vector<cplx> BlaschkeProduct::schur_coefficients() const {
  int d = degree();
  std::vector<cplx> a(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) a[static_cast<std::size_t>(k - 1)] = P_[static_cast<std::size_t>(d - k)];
  return a;
}

cplx BlaschkeProduct::operator()(cplx z) const {
  cplx den = D_(z);
  if (den == cplx{}) fail(Errc::pole, "Blaschke product evaluated at a pole");
  return std::polar(1.0, -angle_) * P_(z) / den;
}

BlaschkeProduct BlaschkeProduct::rotated(double dpsi) const {
  BlaschkeProduct out = *this;
  out.angle_ = normalize_angle(angle_ + dpsi);
  return out;
}

cplx blaschke_eval(const BlaschkeProduct& psi, cplx z) { return psi(z); }

BlaschkeProduct blaschke_mul(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  return BlaschkeProduct(a.angle() + b.angle(), a.P() * b.P());
}

double blaschke_distance(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  return std::max(angle_distance(a.angle(), b.angle()), coeff_distance(a.P(), b.P()));
}

}  // namespace szego
