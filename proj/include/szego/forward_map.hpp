#pragma once

#include <string>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/hankel.hpp"
#include "szego/spectral_data.hpp"

namespace szego {

struct AnalyzeOptions {
  /// Eigenvalues closer than rel_tol * lambda_max are one cluster.
  double rel_tol = 1e-6;
  /// u is "not orthogonal" to an eigenspace when its projection exceeds
  /// membership_tol * ||u||.
  double membership_tol = 1e-8;
  std::size_t dense_limit = kDenseLimit;
};

/// Run of numerically equal eigenvalues [first, first + count).
struct ValueCluster {
  double value = 0.0;
  std::size_t first = 0;
  std::size_t count = 0;
};

struct ClusterSet {
  std::vector<ValueCluster> clusters;  // positive clusters, descending
  std::size_t zero_count = 0;          // eigenvalues below 1e-12 * lambda_max
  bool ambiguous = false;              // some gap < 3 * rel_tol * lambda_max
  double min_gap = 0.0;                // smallest gap between positive clusters
};

/// Tolerances are relative to lambda_ref, which defaults to the largest eigenvalue.
ClusterSet cluster_eigenvalues(const Eigen::VectorXd& eigs, double rel_tol, double lambda_ref = 0.0);

/// One eigenspace of H2 (from_K false) or K2 (from_K true).
struct Cluster {
  double lambda = 0.0;  // eigenvalue s^2
  double s = 0.0;
  std::size_t dim = 0;
  bool from_K = false;
  CMat basis;
  /// Orthogonal projection of u onto the eigenspace.
  CVec projection;
  double projection_norm = 0.0;
  /// s belongs to Sigma_H (or Sigma_K).
  bool member = false;
};

std::vector<Cluster> build_clusters(const EigenSystem& es, const ClusterSet& cs, const CVec& u,
                                    double membership_tol, bool from_K);

/// Orthogonal projection of x onto the span of the orthonormal columns of basis.
CVec project_symbol(const CMat& basis, const CVec& x);

struct BlaschkeFit {
  BlaschkeProduct psi;
  double residual = 0.0;       // linearized fit residual
  double unimodularity = 0.0;  // max ||Psi| - 1| on the grid
};

/// Fits the inner function Psi of degree m-1 with f = Psi g on the circle.
BlaschkeFit fit_blaschke_ratio(const CVec& f, const CVec& g, std::size_t m);
/// s u_s = Psi H_u(u_s).
BlaschkeFit extract_blaschke(const CVec& u_s, const CVec& Hu_of_us, double s, std::size_t m);

struct ForwardReport {
  SpectralData data;
  std::vector<std::size_t> dims;              // cluster dimension d_r + 1 per r
  std::vector<double> projection_norms2;      // ||u_j||^2 or ||u'_k||^2 per r
  std::vector<CVec> projections;              // u_j (odd r) and u'_k (even r)
  std::vector<double> fit_residuals;
  std::vector<Cluster> h_clusters, k_clusters;
  double zero_K_projection = 0.0;             // ||u - sum_k u'_k|| / ||u||
  double h_decomposition_residual = 0.0;      // ||u - sum_j u_j|| / ||u||
  double ku2_residual = 0.0;
  std::size_t N = 0;
  std::vector<std::string> warnings;
};

ForwardReport analyze(const Symbol& u, const AnalyzeOptions& opts = {});
inline SpectralData forward(const Symbol& u, const AnalyzeOptions& opts = {}) {
  return analyze(u, opts).data;
}

struct RealDiagnostics {
  std::vector<double> lambda;  // signed eigenvalues of Gamma, by decreasing modulus
  std::vector<double> mu;      // signed eigenvalues of Gamma~
  bool interlacing = true;
  bool mpt_lambda = true;
  bool mpt_mu = true;
  bool angles_real = true;
  bool odd_strings = true;
  std::vector<std::size_t> string_lengths;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Interlacing, multiplicity, string-length and angle checks for a real symbol.
RealDiagnostics real_diagnostics(const Symbol& u, const AnalyzeOptions& opts = {});

}  // namespace szego
