#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "szego/types.hpp"

namespace szego {

/// Dense complex polynomial, coefficient of z^0 first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}
  Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) {}

  static Poly constant(cplx a) { return Poly{a}; }
  static Poly monomial(int degree, cplx a = 1.0);
  /// prod (z - zeros_j)
  static Poly from_roots(std::span<const cplx> zeros);

  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  std::vector<cplx>& coeffs() noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }

  /// Index of the last exactly nonzero coefficient; -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return degree() < 0; }
  cplx operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : cplx{}; }
  cplx leading() const noexcept;

  cplx operator()(cplx z) const noexcept;

  /// Drops trailing coefficients below rel * max|c|.
  Poly normalized(double rel = 1e-12) const;
  Poly scaled(cplx a) const;
  /// z -> conj(p(conj z)): conjugates every coefficient.
  Poly conj() const;
  Poly derivative() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cplx a, const Poly& p) { return p.scaled(a); }

  double max_abs() const noexcept;

 private:
  std::vector<cplx> c_;
};

/// Max coefficient distance, treating missing coefficients as zero.
double coeff_distance(const Poly& a, const Poly& b);

/// D(z) = z^d conj(P)(1/z): coefficient k of D is conj(coefficient d-k of P).
Poly conj_reflect(const Poly& p, int d);

/// Roots by companion-matrix eigenvalues.
std::vector<cplx> poly_roots(const Poly& p);
/// Smallest root modulus (infinity for constants).
double min_root_modulus(const Poly& p);
/// True when p has no zero with |z| <= 1 + margin.
bool root_free_closed_disc(const Poly& p, double margin = 0.0);

/// Samples at the M-th roots of unity e^{2 pi i k/M}.
struct CircleGrid {
  std::vector<cplx> samples;

  std::size_t size() const noexcept { return samples.size(); }
  cplx point(std::size_t k) const;
};

CircleGrid grid_transform(std::span<const cplx> coeffs, std::size_t M);
inline CircleGrid grid_transform(const Poly& p, std::size_t M) {
  return grid_transform(std::span<const cplx>(p.coeffs()), M);
}
/// Exact inverse of grid_transform for degrees <= degree_bound < M.
Poly interpolate(const CircleGrid& grid, int degree_bound);
/// All M Fourier coefficients of the sampled function; index n >= M/2 holds
/// the coefficient of e^{i(n-M)x}.
std::vector<cplx> grid_coefficients(const CircleGrid& grid);

using PolyMatrix = std::vector<std::vector<Poly>>;

struct DetMinors {
  Poly det;
  /// minors[k][j]: determinant with row k and column j removed.
  std::vector<std::vector<Poly>> minors;
};

/// Determinant and first minors of a polynomial matrix by evaluation at
/// M >= 2*degree_bound+1 roots of unity followed by interpolation.
DetMinors polymatrix_det_minors(const PolyMatrix& entries, int degree_bound);

/// num/den with den(0) = 1.
class RationalFunction {
 public:
  RationalFunction() : num_{0.0}, den_{1.0} {}
  /// Rescales so that den(0) = 1; den(0) = 0 is rejected.
  RationalFunction(Poly num, Poly den);
  static RationalFunction polynomial(Poly p) { return {std::move(p), Poly{1.0}}; }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  cplx operator()(cplx z) const;
  /// First N Taylor coefficients at 0.
  std::vector<cplx> taylor(std::size_t N) const;
  /// Throws not_analytic if den vanishes on the closed unit disc.
  void validate_analytic() const;
  /// Smallest distance between a root of num and a root of den.
  double common_root_gap() const;

 private:
  Poly num_;
  Poly den_;
};

struct RationalFit {
  RationalFunction fn;
  /// max_k |fn(z_k) - samples_k|
  double residual = 0.0;
};

/// Linearized least squares num(z_k) - samples_k den(z_k) = 0 with den(0) = 1.
RationalFit rational_fit(const CircleGrid& samples, int num_deg, int den_deg);

/// Raw fit of f ~ (num/den) g without the analyticity or residual checks;
/// used by callers that only know the ratio implicitly.
struct RatioFit {
  Poly num;
  Poly den;
  double residual = 0.0;  // max_k |num g - den f| / max_k |f|
};
RatioFit fit_ratio(const CircleGrid& f, const CircleGrid& g, int num_deg, int den_deg);

/// Finite two-sided Fourier list, c[i] is the coefficient of e^{i(min_index+i)x}.
struct TwoSided {
  int min_index = 0;
  std::vector<cplx> c;
};

std::vector<cplx> szego_project(const TwoSided& f);

/// Pairwise summation; keeps rounding growth logarithmic.
double pairwise_sum(std::span<const double> x);

}  // namespace szego
