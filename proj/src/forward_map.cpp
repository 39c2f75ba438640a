#include "szego/forward_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "szego/error.hpp"
#include "szego/fft.hpp"

namespace szego {

namespace {

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(10);
  o << x;
  return o.str();
}

CircleGrid samples_of(const CVec& v, std::size_t M) {
  return grid_transform(std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size())), M);
}

const Cluster* match(const std::vector<Cluster>& cs, double lambda, double tol) {
  for (const Cluster& c : cs)
    if (std::abs(c.lambda - lambda) <= tol) return &c;
  return nullptr;
}

}  // namespace

ClusterSet cluster_eigenvalues(const Eigen::VectorXd& eigs, double rel_tol, double lambda_ref) {
  ClusterSet out;
  const Eigen::Index n = eigs.size();
  if (n == 0) return out;
  double lmax = lambda_ref > 0.0 ? lambda_ref : eigs(0);
  if (!(lmax > 0.0)) {
    out.zero_count = static_cast<std::size_t>(n);
    return out;
  }
  double floor = 1e-12 * lmax;
  double tol = rel_tol * lmax;
  Eigen::Index i = 0;
  while (i < n && eigs(i) > floor) {
    Eigen::Index j = i + 1;
    while (j < n && eigs(j) > floor && eigs(j - 1) - eigs(j) <= tol) ++j;
    ValueCluster c;
    c.first = static_cast<std::size_t>(i);
    c.count = static_cast<std::size_t>(j - i);
    c.value = eigs.segment(i, j - i).mean();
    out.clusters.push_back(c);
    i = j;
  }
  out.zero_count = static_cast<std::size_t>(n - i);
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < out.clusters.size(); ++k) {
    double gap = eigs(static_cast<Eigen::Index>(out.clusters[k + 1].first - 1)) -
                 eigs(static_cast<Eigen::Index>(out.clusters[k + 1].first));
    out.min_gap = std::min(out.min_gap, gap);
    if (gap < 3.0 * tol) out.ambiguous = true;
  }
  // The last positive cluster also has to stand clear of the zero floor.
  if (!out.clusters.empty() && out.clusters.back().value < 3.0 * tol + floor && out.zero_count > 0)
    out.ambiguous = true;
  return out;
}

CVec project_symbol(const CMat& basis, const CVec& x) { return basis * (basis.adjoint() * x); }

std::vector<Cluster> build_clusters(const EigenSystem& es, const ClusterSet& cs, const CVec& u,
                                    double membership_tol, bool from_K) {
  std::vector<Cluster> out;
  double unorm = u.norm();
  for (const ValueCluster& vc : cs.clusters) {
    Cluster c;
    c.lambda = vc.value;
    c.s = std::sqrt(vc.value);
    c.dim = vc.count;
    c.from_K = from_K;
    c.basis = es.vectors.middleCols(static_cast<Eigen::Index>(vc.first), static_cast<Eigen::Index>(vc.count));
    c.projection = project_symbol(c.basis, u);
    c.projection_norm = c.projection.norm();
    c.member = c.projection_norm > membership_tol * unorm;
    out.push_back(std::move(c));
  }
  return out;
}

BlaschkeFit fit_blaschke_ratio(const CVec& f, const CVec& g, std::size_t m) {
  if (m == 0) fail(Errc::invalid_argument, "cluster dimension must be positive");
  int d = static_cast<int>(m) - 1;
  std::size_t len = static_cast<std::size_t>(std::max(f.size(), g.size()));
  std::size_t M = fft::next_power_of_two(std::max(2 * len + 2 * m, 4 * m + 1));
  CircleGrid fg = samples_of(f, M), gg = samples_of(g, M);
  RatioFit fit = fit_ratio(fg, gg, d, d);
  if (fit.residual > 1e-6) fail(Errc::fit_failed, "Blaschke ratio fit residual " + fmt(fit.residual));

  double unimod = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    cplx z = fg.point(k);
    cplx den = fit.den(z);
    if (den == cplx{}) fail(Errc::not_inner, "fitted ratio has a pole on the circle");
    unimod = std::max(unimod, std::abs(std::abs(fit.num(z) / den) - 1.0));
  }
  if (unimod > 1e-6) fail(Errc::not_inner, "fitted ratio is not unimodular, deviation " + fmt(unimod));

  cplx lead = fit.num[static_cast<std::size_t>(d)];
  if (std::abs(std::abs(lead) - 1.0) > 1e-6)
    fail(Errc::degree_mismatch, "fitted Blaschke product does not have degree " + std::to_string(d) +
                                    " (leading coefficient " + fmt(std::abs(lead)) + ")");
  std::vector<cplx> pc(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) pc[static_cast<std::size_t>(k)] = fit.num[static_cast<std::size_t>(k)] / lead;
  pc.back() = 1.0;
  Poly P(std::move(pc));
  double dres = coeff_distance(fit.den, conj_reflect(P, d));
  if (dres > 1e-6) fail(Errc::not_inner, "fitted denominator is not the reflection of the numerator, residual " + fmt(dres));
  if (!is_schur(P)) fail(Errc::not_inner, "fitted numerator has a root outside the open disc");

  BlaschkeFit out{BlaschkeProduct(-std::arg(lead), std::move(P)), fit.residual, unimod};
  return out;
}

BlaschkeFit extract_blaschke(const CVec& u_s, const CVec& Hu_of_us, double s, std::size_t m) {
  if (u_s.norm() == 0.0) fail(Errc::invalid_argument, "extract_blaschke: zero projection");
  return fit_blaschke_ratio(CVec(s * u_s), Hu_of_us, m);
}

ForwardReport analyze(const Symbol& u, const AnalyzeOptions& opts) {
  ForwardReport rep;
  rep.N = u.N();
  CVec uv = to_cvec(u.coeffs);
  double unorm = uv.norm();
  double cmax = uv.size() > 0 ? uv.cwiseAbs().maxCoeff() : 0.0;
  if (!(unorm > 0.0) || cmax < 1e-300) fail(Errc::invalid_argument, "symbol is numerically zero");

  HankelPair pair = build_pair(u, opts.dense_limit);
  rep.ku2_residual = pair.ku2_residual;
  EigenSystem eh = pair_eigs(pair, false);
  EigenSystem ek = pair_eigs(pair, true);
  if (eh.size() == 0 || !(eh.values(0) > 0.0)) fail(Errc::invalid_argument, "symbol is numerically zero");
  double lmax = eh.values(0);

  ClusterSet ch = cluster_eigenvalues(eh.values, opts.rel_tol);
  // K clusters share the H2 scale so both sets use one tolerance.
  ClusterSet ck = cluster_eigenvalues(ek.values, opts.rel_tol, lmax);
  if (ch.ambiguous) rep.warnings.push_back("ambiguous clustering of H2 eigenvalues");
  if (ck.ambiguous) rep.warnings.push_back("ambiguous clustering of K2 eigenvalues");

  rep.h_clusters = build_clusters(eh, ch, uv, opts.membership_tol, false);
  rep.k_clusters = build_clusters(ek, ck, uv, opts.membership_tol, true);

  double tol = opts.rel_tol * lmax;
  for (const Cluster& h : rep.h_clusters) {
    const Cluster* k = match(rep.k_clusters, h.lambda, tol);
    std::size_t kd = k ? k->dim : 0;
    if (h.member) {
      if (k && k->member)
        fail(Errc::spectral_inconsistency, "s = " + fmt(h.s) + " lies in both Sigma_H and Sigma_K");
      if (kd + 1 != h.dim)
        fail(Errc::spectral_inconsistency, "s = " + fmt(h.s) + ": dim E = " + std::to_string(h.dim) +
                                               " but dim F = " + std::to_string(kd));
    }
  }
  for (const Cluster& k : rep.k_clusters) {
    if (!k.member) continue;
    const Cluster* h = match(rep.h_clusters, k.lambda, tol);
    std::size_t hd = h ? h->dim : 0;
    if (hd + 1 != k.dim)
      fail(Errc::spectral_inconsistency, "s = " + fmt(k.s) + ": dim F = " + std::to_string(k.dim) +
                                             " but dim E = " + std::to_string(hd));
  }

  std::vector<const Cluster*> merged;
  CVec sum_h = CVec::Zero(uv.size()), sum_k = CVec::Zero(uv.size());
  for (const Cluster& c : rep.h_clusters)
    if (c.member) merged.push_back(&c), sum_h += c.projection;
  for (const Cluster& c : rep.k_clusters)
    if (c.member) merged.push_back(&c), sum_k += c.projection;
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Cluster* a, const Cluster* b) { return a->lambda > b->lambda; });
  rep.h_decomposition_residual = (uv - sum_h).norm() / unorm;
  rep.zero_K_projection = (uv - sum_k).norm() / unorm;
  if (rep.h_decomposition_residual > 1e-6)
    rep.warnings.push_back("u is not resolved by the H2 clusters, residual " + fmt(rep.h_decomposition_residual));

  for (std::size_t r = 0; r < merged.size(); ++r) {
    bool want_K = r % 2 == 1;
    if (merged[r]->from_K != want_K)
      fail(Errc::spectral_inconsistency, "Sigma_H and Sigma_K do not alternate at position " + std::to_string(r + 1));
  }
  bool odd = rep.zero_K_projection > opts.membership_tol;
  if ((merged.size() % 2 == 1) != odd)
    fail(Errc::spectral_inconsistency, "parity of n disagrees with the zero eigenspace of K2 (residual " +
                                           fmt(rep.zero_K_projection) + ")");

  for (std::size_t r = 0; r < merged.size(); ++r) {
    const Cluster& c = *merged[r];
    BlaschkeFit fit;
    if (!c.from_K) {
      fit = extract_blaschke(c.projection, apply_H(u, c.projection), c.s, c.dim);
    } else {
      fit = fit_blaschke_ratio(apply_K(u, c.projection), CVec(c.s * c.projection), c.dim);
    }
    rep.data.s.push_back(c.s);
    rep.data.psi.push_back(fit.psi);
    rep.dims.push_back(c.dim);
    rep.projection_norms2.push_back(c.projection_norm * c.projection_norm);
    rep.projections.push_back(c.projection);
    rep.fit_residuals.push_back(fit.residual);
  }
  rep.data.validate();
  return rep;
}

namespace {

struct SignedCluster {
  double lambda;             // s^2
  std::vector<double> vals;  // signed eigenvalues of the restricted operator
};

std::vector<SignedCluster> signed_spectrum(const EigenSystem& es, const ClusterSet& cs,
                                           std::span<const cplx> c) {
  std::vector<SignedCluster> out;
  for (const ValueCluster& vc : cs.clusters) {
    CMat V = es.vectors.middleCols(static_cast<Eigen::Index>(vc.first), static_cast<Eigen::Index>(vc.count));
    CMat GV(V.rows(), V.cols());
    for (Eigen::Index j = 0; j < V.cols(); ++j) GV.col(j) = hankel_matvec(c, CVec(V.col(j)));
    CMat B = V.adjoint() * GV;
    B = 0.5 * (B + B.adjoint()).eval();
    EigenSystem be = hermitian_eigs(B);
    SignedCluster sc{vc.value, {}};
    for (Eigen::Index j = 0; j < be.values.size(); ++j) sc.vals.push_back(be.values(j));
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace

RealDiagnostics real_diagnostics(const Symbol& u, const AnalyzeOptions& opts) {
  if (!u.is_real()) fail(Errc::invalid_argument, "real_diagnostics needs real coefficients");
  RealDiagnostics rep;
  HankelPair pair = build_pair(u, opts.dense_limit);
  EigenSystem eh = pair_eigs(pair, false), ek = pair_eigs(pair, true);
  if (eh.size() == 0 || !(eh.values(0) > 0.0)) fail(Errc::invalid_argument, "symbol is numerically zero");
  double lmax = eh.values(0), tol = opts.rel_tol * lmax;
  ClusterSet ch = cluster_eigenvalues(eh.values, opts.rel_tol);
  ClusterSet ck = cluster_eigenvalues(ek.values, opts.rel_tol, lmax);
  std::span<const cplx> c(u.coeffs);
  std::span<const cplx> ct = c.empty() ? c : c.subspan(1);
  auto sh = signed_spectrum(eh, ch, c);
  auto sk = signed_spectrum(ek, ck, ct);

  auto mpt = [&](const std::vector<SignedCluster>& sc, const char* name, bool& flag) {
    for (const SignedCluster& cl : sc) {
      long pos = 0, neg = 0;
      for (double v : cl.vals) (v > 0 ? pos : neg)++;
      if (std::labs(pos - neg) > 1) {
        flag = false;
        rep.violations.push_back(std::string("multiplicity condition fails for ") + name + " at |value| " +
                                 fmt(std::sqrt(cl.lambda)));
      }
      for (double v : cl.vals) (name[0] == 'l' ? rep.lambda : rep.mu).push_back(v);
    }
  };
  mpt(sh, "lambda", rep.mpt_lambda);
  mpt(sk, "mu", rep.mpt_mu);

  // Sequence |lambda_1| >= |mu_1| >= |lambda_2| >= ...
  std::vector<double> seq2;  // squared moduli, alternating
  std::size_t nl = rep.lambda.size(), nm = rep.mu.size();
  if (nm > nl || nm + 1 < nl) {
    rep.interlacing = false;
    rep.violations.push_back("eigenvalue counts " + std::to_string(nl) + " and " + std::to_string(nm) +
                             " are incompatible with interlacing");
  }
  for (std::size_t j = 0; j < std::max(nl, nm); ++j) {
    if (j < nl) seq2.push_back(rep.lambda[j] * rep.lambda[j]);
    if (j < nm) seq2.push_back(rep.mu[j] * rep.mu[j]);
  }
  for (std::size_t j = 0; j + 1 < seq2.size(); ++j)
    if (seq2[j + 1] > seq2[j] + tol) {
      rep.interlacing = false;
      rep.violations.push_back("interlacing fails at position " + std::to_string(j + 2));
      break;
    }
  std::size_t run = 1;
  for (std::size_t j = 1; j <= seq2.size(); ++j) {
    if (j < seq2.size() && std::abs(seq2[j] - seq2[j - 1]) <= tol) {
      ++run;
      continue;
    }
    if (!seq2.empty()) rep.string_lengths.push_back(run);
    if (!seq2.empty() && run % 2 == 0) {
      rep.odd_strings = false;
      rep.violations.push_back("maximal string of equal moduli has even length " + std::to_string(run));
    }
    run = 1;
  }

  SpectralData data = forward(u, opts);
  for (std::size_t r = 0; r < data.n(); ++r) {
    double psi = data.psi[r].angle();
    double dist = std::min(angle_distance(psi, 0.0), angle_distance(psi, std::numbers::pi));
    if (dist > 1e-6) {
      rep.angles_real = false;
      rep.violations.push_back("angle psi_" + std::to_string(r + 1) + " = " + fmt(psi) + " is not in {0, pi}");
    }
  }
  return rep;
}

}  // namespace szego
