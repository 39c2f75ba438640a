#include "szego/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "szego/error.hpp"
#include "szego/fft.hpp"
#include "szego/kernels.hpp"

namespace szego {

Poly Poly::monomial(int degree, cplx a) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, cplx{});
  c.back() = a;
  return Poly(std::move(c));
}

Poly Poly::from_roots(std::span<const cplx> zeros) {
  std::vector<cplx> c{1.0};
  for (cplx z0 : zeros) {
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= z0 * c[k];
    }
    c = std::move(next);
  }
  return Poly(std::move(c));
}

int Poly::degree() const noexcept {
  for (std::size_t k = c_.size(); k-- > 0;)
    if (c_[k] != cplx{}) return static_cast<int>(k);
  return -1;
}

cplx Poly::leading() const noexcept {
  int d = degree();
  return d < 0 ? cplx{} : c_[static_cast<std::size_t>(d)];
}

cplx Poly::operator()(cplx z) const noexcept {
  cplx acc{};
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

double Poly::max_abs() const noexcept {
  double m = 0.0;
  for (cplx a : c_) m = std::max(m, std::abs(a));
  return m;
}

Poly Poly::normalized(double rel) const {
  double cutoff = rel * max_abs();
  std::size_t n = c_.size();
  while (n > 0 && std::abs(c_[n - 1]) <= cutoff) --n;
  return Poly(std::vector<cplx>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Poly Poly::scaled(cplx a) const {
  std::vector<cplx> c = c_;
  for (cplx& x : c) x *= a;
  return Poly(std::move(c));
}

Poly Poly::conj() const {
  std::vector<cplx> c = c_;
  for (cplx& x : c) x = std::conj(x);
  return Poly(std::move(c));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly{};
  std::vector<cplx> c(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cplx> c(std::max(a.size(), b.size()), cplx{});
  for (std::size_t k = 0; k < a.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.size(); ++k) c[k] += b.c_[k];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(-1.0); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.size() == 0 || b.size() == 0) return Poly{};
  std::vector<cplx> c(a.size() + b.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

double coeff_distance(const Poly& a, const Poly& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k)
    d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

Poly conj_reflect(const Poly& p, int d) {
  if (d < 0) fail(Errc::invalid_argument, "conj_reflect: negative degree");
  if (p.degree() > d)
    fail(Errc::invalid_argument, "conj_reflect: polynomial degree exceeds d");
  std::vector<cplx> c(static_cast<std::size_t>(d) + 1, cplx{});
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = std::conj(p[static_cast<std::size_t>(d - k)]);
  return Poly(std::move(c));
}

std::vector<cplx> poly_roots(const Poly& p) {
  Poly q = p.normalized(1e-15);
  int d = q.degree();
  if (d <= 0) return {};
  // Exact zeros at the origin are split off so the companion matrix stays regular.
  std::size_t shift = 0;
  while (q[shift] == cplx{}) ++shift;
  std::vector<cplx> roots(shift, cplx{});
  int dd = d - static_cast<int>(shift);
  if (dd == 0) return roots;
  cplx lead = q[static_cast<std::size_t>(d)];
  CMat comp = CMat::Zero(dd, dd);
  for (int i = 1; i < dd; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < dd; ++i) comp(i, dd - 1) = -q[shift + static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  if (es.info() != Eigen::Success) fail(Errc::numerical_failure, "poly_roots: eigensolver failed");
  for (Eigen::Index i = 0; i < dd; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

double min_root_modulus(const Poly& p) {
  double m = std::numeric_limits<double>::infinity();
  for (cplx r : poly_roots(p)) m = std::min(m, std::abs(r));
  return m;
}

bool root_free_closed_disc(const Poly& p, double margin) {
  Poly q = p.normalized(1e-15);
  int d = q.degree();
  if (d < 0) return false;
  if (d == 0) return true;
  if (d <= 64) return min_root_modulus(q) > 1.0 + margin;
  std::size_t M = fft::next_power_of_two(16 * static_cast<std::size_t>(d));
  CircleGrid g = grid_transform(q, M);
  double floor = 1e-8 * q.max_abs();
  for (cplx v : g.samples)
    if (std::abs(v) <= floor) return false;
  return std::abs(q[0]) > floor;
}

cplx CircleGrid::point(std::size_t k) const {
  double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(samples.size());
  return {std::cos(theta), std::sin(theta)};
}

CircleGrid grid_transform(std::span<const cplx> coeffs, std::size_t M) {
  if (!fft::is_power_of_two(M)) fail(Errc::invalid_argument, "grid size must be a power of two");
  std::vector<cplx> folded(M, cplx{});
  // z^M = 1 on the grid, so folding keeps the samples exact.
  for (std::size_t n = 0; n < coeffs.size(); ++n) folded[n % M] += coeffs[n];
  fft::transform(folded, fft::Direction::backward);
  return CircleGrid{std::move(folded)};
}

std::vector<cplx> grid_coefficients(const CircleGrid& grid) {
  std::size_t M = grid.size();
  if (!fft::is_power_of_two(M)) fail(Errc::invalid_argument, "grid size must be a power of two");
  std::vector<cplx> c = fft::transformed(grid.samples, fft::Direction::forward);
  double inv = 1.0 / static_cast<double>(M);
  for (cplx& x : c) x *= inv;
  return c;
}

Poly interpolate(const CircleGrid& grid, int degree_bound) {
  if (degree_bound < 0) return Poly{};
  if (static_cast<std::size_t>(degree_bound) >= grid.size())
    fail(Errc::invalid_argument, "interpolate: degree bound aliases on this grid");
  std::vector<cplx> c = grid_coefficients(grid);
  c.resize(static_cast<std::size_t>(degree_bound) + 1);
  return Poly(std::move(c));
}

DetMinors polymatrix_det_minors(const PolyMatrix& entries, int degree_bound) {
  std::size_t q = entries.size();
  if (q == 0) fail(Errc::invalid_argument, "polymatrix_det_minors: empty matrix");
  for (const auto& row : entries)
    if (row.size() != q) fail(Errc::invalid_argument, "polymatrix_det_minors: matrix not square");
  if (degree_bound < 0) fail(Errc::invalid_argument, "polymatrix_det_minors: negative degree bound");

  std::size_t M = fft::next_power_of_two(2 * static_cast<std::size_t>(degree_bound) + 1);
  std::vector<cplx> points(M);
  CircleGrid unit{std::vector<cplx>(M)};
  for (std::size_t k = 0; k < M; ++k) points[k] = unit.point(k);

  kernels::PointwiseDetMinors pw = kernels::det_minors_omp(entries, points);

  DetMinors out;
  out.det = interpolate(CircleGrid{pw.det}, degree_bound);
  out.minors.assign(q, std::vector<Poly>(q));
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t j = 0; j < q; ++j) {
      auto first = pw.minors.begin() + static_cast<std::ptrdiff_t>((k * q + j) * M);
      CircleGrid g{std::vector<cplx>(first, first + static_cast<std::ptrdiff_t>(M))};
      out.minors[k][j] = interpolate(g, degree_bound);
    }
  return out;
}

RationalFunction::RationalFunction(Poly num, Poly den) {
  cplx d0 = den[0];
  if (std::abs(d0) <= 1e-300 || std::abs(d0) <= 1e-14 * den.max_abs())
    fail(Errc::invalid_argument, "rational function: denominator vanishes at 0");
  num_ = num.scaled(1.0 / d0);
  den_ = den.scaled(1.0 / d0);
  den_.coeffs()[0] = 1.0;
}

cplx RationalFunction::operator()(cplx z) const {
  cplx d = den_(z);
  if (d == cplx{}) fail(Errc::pole, "rational function evaluated at a pole");
  return num_(z) / d;
}

std::vector<cplx> RationalFunction::taylor(std::size_t N) const {
  std::vector<cplx> c(N, cplx{});
  std::size_t dd = den_.size();
  for (std::size_t n = 0; n < N; ++n) {
    cplx acc = num_[n];
    for (std::size_t j = 1; j < dd && j <= n; ++j) acc -= den_[j] * c[n - j];
    c[n] = acc;
  }
  return c;
}

void RationalFunction::validate_analytic() const {
  if (!root_free_closed_disc(den_))
    fail(Errc::not_analytic, "denominator has a root in the closed unit disc");
}

double RationalFunction::common_root_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  auto rn = poly_roots(num_);
  auto rd = poly_roots(den_);
  for (cplx a : rn)
    for (cplx b : rd) gap = std::min(gap, std::abs(a - b));
  return gap;
}

namespace {

// Solves num(z_k) g_k - den(z_k) f_k = 0 with den(0) = 1 in least squares.
RatioFit solve_ratio(const CircleGrid& f, const CircleGrid* g, int p, int r) {
  std::size_t M = f.size();
  Eigen::Index cols = p + 1 + r;
  CMat A(static_cast<Eigen::Index>(M), cols);
  CVec b(static_cast<Eigen::Index>(M));
  double fmax = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    cplx z = f.point(k);
    cplx gk = g ? g->samples[k] : cplx{1.0};
    cplx fk = f.samples[k];
    fmax = std::max(fmax, std::abs(fk));
    cplx zp{1.0};
    for (int i = 0; i <= p; ++i, zp *= z) A(static_cast<Eigen::Index>(k), i) = zp * gk;
    zp = z;
    for (int j = 1; j <= r; ++j, zp *= z) A(static_cast<Eigen::Index>(k), p + j) = -zp * fk;
    b(static_cast<Eigen::Index>(k)) = fk;
  }
  CVec x = A.colPivHouseholderQr().solve(b);
  RatioFit out;
  std::vector<cplx> num(static_cast<std::size_t>(p) + 1), den(static_cast<std::size_t>(r) + 1);
  for (int i = 0; i <= p; ++i) num[static_cast<std::size_t>(i)] = x(i);
  den[0] = 1.0;
  for (int j = 1; j <= r; ++j) den[static_cast<std::size_t>(j)] = x(p + j);
  out.num = Poly(std::move(num));
  out.den = Poly(std::move(den));
  double res = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    cplx z = f.point(k);
    cplx gk = g ? g->samples[k] : cplx{1.0};
    res = std::max(res, std::abs(out.num(z) * gk - out.den(z) * f.samples[k]));
  }
  out.residual = fmax > 0.0 ? res / fmax : res;
  return out;
}

}  // namespace

RatioFit fit_ratio(const CircleGrid& f, const CircleGrid& g, int num_deg, int den_deg) {
  if (f.size() != g.size()) fail(Errc::invalid_argument, "fit_ratio: grid size mismatch");
  if (num_deg < 0 || den_deg < 0) fail(Errc::invalid_argument, "fit_ratio: negative degree");
  if (f.size() < static_cast<std::size_t>(2 * (num_deg + den_deg) + 1))
    fail(Errc::invalid_argument, "fit_ratio: grid too small for the degree bounds");
  return solve_ratio(f, &g, num_deg, den_deg);
}

RationalFit rational_fit(const CircleGrid& samples, int num_deg, int den_deg) {
  if (num_deg < 0 || den_deg < 0) fail(Errc::invalid_argument, "rational_fit: negative degree");
  if (samples.size() < static_cast<std::size_t>(2 * (num_deg + den_deg) + 1))
    fail(Errc::invalid_argument, "rational_fit: grid too small for the degree bounds");
  RatioFit raw = solve_ratio(samples, nullptr, num_deg, den_deg);
  RationalFunction fn(raw.num, raw.den);
  double res = 0.0, smax = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    cplx z = samples.point(k);
    cplx d = fn.den()(z);
    smax = std::max(smax, std::abs(samples.samples[k]));
    res = std::max(res, d == cplx{} ? std::numeric_limits<double>::infinity()
                                    : std::abs(fn.num()(z) / d - samples.samples[k]));
  }
  if (res > 1e-6 * smax) fail(Errc::fit_failed, "rational_fit: residual " + std::to_string(res));
  fn.validate_analytic();
  return {std::move(fn), res};
}

std::vector<cplx> szego_project(const TwoSided& f) {
  std::vector<cplx> out;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    int n = f.min_index + static_cast<int>(i);
    if (n < 0) continue;
    if (out.size() <= static_cast<std::size_t>(n)) out.resize(static_cast<std::size_t>(n) + 1, cplx{});
    out[static_cast<std::size_t>(n)] = f.c[i];
  }
  return out;
}

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace szego
