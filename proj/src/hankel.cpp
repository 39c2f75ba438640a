#include "szego/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "szego/error.hpp"
#include "szego/kernels.hpp"

namespace szego {

namespace {

constexpr std::size_t kFftMatvecFrom = 64;
constexpr std::size_t kMaxTruncation = std::size_t{1} << 15;

}  // namespace

std::size_t resolved_truncation(const RationalFunction& fn) {
  int deg_den = std::max(fn.den().degree(), 0);
  int deg_num = std::max(fn.num().degree(), 0);
  std::size_t base = std::max<std::size_t>(32, 4 * static_cast<std::size_t>(std::max(deg_den, 1)));
  base = std::max(base, static_cast<std::size_t>(deg_num) + 1);
  if (deg_den == 0) return base;
  std::vector<cplx> c = fn.taylor(kMaxTruncation);
  double cmax = 0.0;
  for (cplx a : c) cmax = std::max(cmax, std::abs(a));
  if (cmax == 0.0) return base;
  // The last coefficient above rounding level marks the resolved length.
  std::size_t last = 0;
  for (std::size_t n = 0; n < c.size(); ++n)
    if (std::abs(c[n]) > 1e-17 * cmax) last = n;
  if (last + 1 >= kMaxTruncation)
    fail(Errc::invalid_argument, "rational symbol has a pole too close to the unit circle");
  return std::max(base, last + 1 + static_cast<std::size_t>(deg_den));
}

Symbol Symbol::from_coeffs(std::vector<cplx> c) {
  Symbol s;
  s.coeffs = std::move(c);
  return s;
}

Symbol Symbol::from_rational(RationalFunction fn, std::size_t N) {
  fn.validate_analytic();
  if (N == 0) N = resolved_truncation(fn);
  Symbol s;
  s.coeffs = fn.taylor(N);
  s.rational = std::move(fn);
  return s;
}

Symbol Symbol::resized(std::size_t n) const {
  Symbol s;
  s.rational = rational;
  if (rational) {
    s.coeffs = rational->taylor(n);
  } else {
    s.coeffs = coeffs;
    s.coeffs.resize(n, cplx{});
  }
  return s;
}

bool Symbol::resolved() const {
  if (coeffs.empty()) return true;
  double m = 0.0;
  for (cplx a : coeffs) m = std::max(m, std::abs(a));
  return std::abs(coeffs.back()) <= 1e-8 * m;
}

double Symbol::l2_norm() const {
  double s = 0.0;
  for (cplx a : coeffs) s += std::norm(a);
  return std::sqrt(s);
}

bool Symbol::is_real(double tol) const {
  for (cplx a : coeffs)
    if (std::abs(a.imag()) > tol) return false;
  return true;
}

Symbol shift_symbol(const Symbol& u) {
  Symbol s;
  if (u.coeffs.size() > 1) s.coeffs.assign(u.coeffs.begin() + 1, u.coeffs.end());
  if (u.rational) {
    const RationalFunction& r = *u.rational;
    Poly t = r.num() - r.den().scaled(r.num()[0]);
    std::vector<cplx> c = t.coeffs();
    if (!c.empty()) c.erase(c.begin());
    s.rational = RationalFunction(Poly(std::move(c)), r.den());
  }
  return s;
}

std::vector<cplx> hankel_matvec(std::span<const cplx> c, std::span<const cplx> x) {
  std::vector<cplx> y(x.size());
  if (x.size() < kFftMatvecFrom)
    kernels::hankel_matvec_dense_serial(c, x, y);
  else
    kernels::hankel_matvec_fft(c, x, y);
  return y;
}

CVec hankel_matvec(std::span<const cplx> c, const CVec& x) {
  CVec y(x.size());
  std::span<const cplx> xs(x.data(), static_cast<std::size_t>(x.size()));
  std::span<cplx> ys(y.data(), static_cast<std::size_t>(y.size()));
  if (xs.size() < kFftMatvecFrom)
    kernels::hankel_matvec_dense_serial(c, xs, ys);
  else
    kernels::hankel_matvec_fft(c, xs, ys);
  return y;
}

CVec apply_H(const Symbol& u, const CVec& h) { return hankel_matvec(u.coeffs, CVec(h.conjugate())); }

CVec apply_K(const Symbol& u, const CVec& h) {
  std::span<const cplx> c(u.coeffs);
  if (!c.empty()) c = c.subspan(1);
  return hankel_matvec(c, CVec(h.conjugate()));
}

CMat hankel_matrix(std::span<const cplx> c, std::size_t N) {
  CMat G = CMat::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t k = 0; k < N && n + k < c.size(); ++k)
      G(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = c[n + k];
  return G;
}

CVec HankelPair::H2_apply(const CVec& x) const { return apply_H(u, apply_H(u, x)); }
CVec HankelPair::K2_apply(const CVec& x) const { return apply_K(u, apply_K(u, x)); }

HankelPair build_pair(const Symbol& u, std::size_t dense_limit) {
  HankelPair p;
  p.u = u;
  p.u_shift = shift_symbol(u);
  p.N = u.N();
  p.dense = p.N <= dense_limit;
  if (!p.dense) return p;
  p.Gamma = hankel_matrix(p.u.coeffs, p.N);
  p.Gamma_t = hankel_matrix(p.u_shift.coeffs, p.N);
  p.H2 = p.Gamma * p.Gamma.adjoint();
  p.K2 = p.Gamma_t * p.Gamma_t.adjoint();
  CVec uv = to_cvec(p.u.coeffs);
  double h2norm = p.H2.norm();
  if (h2norm > 0.0) {
    p.ku2_residual = (p.K2 - p.H2 + uv * uv.adjoint()).norm() / h2norm;
    if (p.ku2_residual > 1e-10)
      fail(Errc::spectral_inconsistency,
           "K2 = H2 - u u* violated, residual " + std::to_string(p.ku2_residual));
  }
  return p;
}

EigenSystem hermitian_eigs(const CMat& A) {
  Eigen::SelfAdjointEigenSolver<CMat> es(A);
  if (es.info() != Eigen::Success) fail(Errc::numerical_failure, "dense Hermitian eigensolver failed");
  Eigen::Index n = A.rows();
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

EigenSystem block_krylov_eigs(const LinearOp& A, std::size_t N, double floor_rel,
                              std::size_t block, std::size_t max_dim, unsigned seed) {
  if (N == 0) return {};
  if (max_dim == 0) max_dim = std::min<std::size_t>(N, 600);
  max_dim = std::min(max_dim, N);
  block = std::max<std::size_t>(1, std::min(block, N));
  const Eigen::Index n = static_cast<Eigen::Index>(N);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<CVec> Q, AQ;
  double anorm = 0.0;

  std::vector<CVec> cand;
  for (std::size_t j = 0; j < block; ++j) {
    CVec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = cplx(gauss(rng), gauss(rng));
    x.normalize();
    CVec ax = A(x);
    anorm = std::max(anorm, ax.norm());
    cand.push_back(std::move(ax));
  }
  if (anorm == 0.0) {
    EigenSystem zero;
    zero.values.resize(0);
    zero.vectors.resize(n, 0);
    return zero;
  }

  bool capped = false;
  while (!cand.empty()) {
    std::vector<CVec> next;
    for (CVec& v : cand) {
      if (Q.size() >= max_dim) {
        capped = true;
        break;
      }
      for (int pass = 0; pass < 2; ++pass)
        for (const CVec& qj : Q) v -= qj * qj.dot(v);
      double nv = v.norm();
      if (nv <= 1e-13 * anorm) continue;
      v /= nv;
      CVec av = A(v);
      anorm = std::max(anorm, av.norm());
      Q.push_back(v);
      AQ.push_back(av);
      next.push_back(av);
    }
    if (capped) break;
    cand = std::move(next);
  }

  const Eigen::Index m = static_cast<Eigen::Index>(Q.size());
  CMat Qm(n, m), AQm(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Qm.col(j) = Q[static_cast<std::size_t>(j)];
    AQm.col(j) = AQ[static_cast<std::size_t>(j)];
  }
  CMat T = Qm.adjoint() * AQm;
  T = 0.5 * (T + T.adjoint()).eval();
  EigenSystem ritz = hermitian_eigs(T);
  double lmax = ritz.values.size() > 0 ? std::max(ritz.values(0), 0.0) : 0.0;
  Eigen::Index keep = 0;
  while (keep < ritz.values.size() && ritz.values(keep) > floor_rel * lmax) ++keep;

  EigenSystem out;
  out.values = ritz.values.head(keep);
  out.vectors = Qm * ritz.vectors.leftCols(keep);
  CMat R = AQm * ritz.vectors.leftCols(keep) - out.vectors * out.values.asDiagonal();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < keep; ++j) worst = std::max(worst, R.col(j).norm());
  if (lmax > 0.0 && worst > 1e-10 * lmax) {
    std::ostringstream msg;
    msg << "block Krylov did not converge: relative residual " << worst / lmax << " at dimension "
        << m << (capped ? " (dimension cap reached)" : "");
    fail(Errc::numerical_failure, msg.str());
  }
  return out;
}

double eig_residual(const LinearOp& A, const EigenSystem& es) {
  double worst = 0.0, scale = 0.0;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) scale = std::max(scale, std::abs(es.values(j)));
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    CVec v = es.vectors.col(j);
    worst = std::max(worst, (A(v) - es.values(j) * v).norm());
  }
  return scale > 0.0 ? worst / scale : worst;
}

EigenSystem pair_eigs(const HankelPair& pair, bool shifted) {
  if (pair.dense) return hermitian_eigs(shifted ? pair.K2 : pair.H2);
  LinearOp op = shifted ? LinearOp([&pair](const CVec& x) { return pair.K2_apply(x); })
                        : LinearOp([&pair](const CVec& x) { return pair.H2_apply(x); });
  return block_krylov_eigs(op, pair.N);
}

std::vector<double> hankel_singular_values(const Symbol& u, std::size_t dense_limit) {
  std::vector<double> out;
  if (u.N() <= dense_limit) {
    CMat G = hankel_matrix(u.coeffs, u.N());
    Eigen::BDCSVD<CMat> svd(G);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) out.push_back(svd.singularValues()(i));
    return out;
  }
  HankelPair p = build_pair(u, dense_limit);
  EigenSystem es = pair_eigs(p, false);
  for (Eigen::Index i = 0; i < es.values.size(); ++i) out.push_back(std::sqrt(std::max(es.values(i), 0.0)));
  return out;
}

}  // namespace szego
