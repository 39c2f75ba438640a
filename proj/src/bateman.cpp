#include "szego/bateman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "szego/algebra.hpp"
#include "szego/error.hpp"

namespace szego {

namespace {

double sq(double x) { return x * x; }

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

InterlacedValues InterlacedValues::from_spectral(const SpectralData& data) {
  InterlacedValues v;
  for (std::size_t r = 0; r < data.s.size(); ++r) (r % 2 == 0 ? v.rho : v.sigma).push_back(data.s[r]);
  if (v.sigma.size() < v.rho.size()) v.sigma.push_back(0.0);
  return v;
}

void InterlacedValues::validate(double rel_gap) const {
  if (rho.empty() || rho.size() != sigma.size())
    fail(Errc::invalid_argument, "interlaced values need q rho and q sigma entries");
  double scale = rho[0];
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (!(rho[j] - sigma[j] > rel_gap * scale))
      fail(Errc::invalid_argument, "interlacing violated: rho_" + std::to_string(j + 1) + " <= sigma_" +
                                       std::to_string(j + 1));
    if (j + 1 < rho.size() && !(sigma[j] - rho[j + 1] > rel_gap * scale))
      fail(Errc::invalid_argument, "interlacing violated: sigma_" + std::to_string(j + 1) + " <= rho_" +
                                       std::to_string(j + 2));
  }
  if (sigma.back() < 0.0) fail(Errc::invalid_argument, "interlacing violated: negative sigma");
}

std::vector<double> tau_squares(const InterlacedValues& v) {
  v.validate();
  std::size_t q = v.q();
  std::vector<double> t(q);
  for (std::size_t j = 0; j < q; ++j) {
    double r2 = sq(v.rho[j]);
    double acc = r2 - sq(v.sigma[j]);
    for (std::size_t k = 0; k < q; ++k)
      if (k != j) acc *= (r2 - sq(v.sigma[k])) / (r2 - sq(v.rho[k]));
    t[j] = acc;
  }
  return t;
}

std::vector<double> kappa_squares(const InterlacedValues& v) {
  v.validate();
  std::size_t q = v.q();
  std::vector<double> kap(q);
  for (std::size_t j = 0; j < q; ++j) {
    double s2 = sq(v.sigma[j]);
    double acc = sq(v.rho[j]) - s2;
    for (std::size_t k = 0; k < q; ++k)
      if (k != j) acc *= (s2 - sq(v.rho[k])) / (s2 - sq(v.sigma[k]));
    kap[j] = acc;
  }
  return kap;
}

double j_of_x(const InterlacedValues& v, double x) {
  double acc = 1.0;
  for (std::size_t j = 0; j < v.q(); ++j) {
    double d = 1.0 - x * sq(v.rho[j]);
    if (std::abs(d) < 1e-12) fail(Errc::near_pole, "J(x) evaluated next to the pole 1/rho_" + std::to_string(j + 1) + "^2");
    acc *= (1.0 - x * sq(v.sigma[j])) / d;
  }
  return acc;
}

double j_partial_fractions(const InterlacedValues& v, double x) {
  std::vector<double> tau = tau_squares(v);
  std::vector<double> terms(v.q());
  for (std::size_t j = 0; j < v.q(); ++j) {
    double d = 1.0 - x * sq(v.rho[j]);
    if (std::abs(d) < 1e-12) fail(Errc::near_pole, "J(x) evaluated next to the pole 1/rho_" + std::to_string(j + 1) + "^2");
    terms[j] = tau[j] / d;
  }
  return 1.0 + x * pairwise_sum(terms);
}

double BatemanResiduals::max() const {
  return std::max({simple_tau, simple_kappa, double_tau, double_kappa, nu, nu_rho, j_forms});
}

BatemanResiduals identity_residuals(const InterlacedValues& v) {
  std::vector<double> tau = tau_squares(v);
  std::vector<double> kap = kappa_squares(v);
  std::size_t q = v.q();
  std::vector<double> r2(q), s2(q), terms(q);
  for (std::size_t j = 0; j < q; ++j) r2[j] = sq(v.rho[j]), s2[j] = sq(v.sigma[j]);

  BatemanResiduals out;
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t j = 0; j < q; ++j) terms[j] = tau[j] / (r2[j] - s2[k]);
    out.simple_tau = std::max(out.simple_tau, rel_err(pairwise_sum(terms), 1.0));
    for (std::size_t j = 0; j < q; ++j) terms[j] = kap[j] / (r2[k] - s2[j]);
    out.simple_kappa = std::max(out.simple_kappa, rel_err(pairwise_sum(terms), 1.0));
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t j = 0; j < q; ++j) terms[j] = tau[j] / ((r2[j] - s2[k]) * (r2[j] - s2[r]));
      out.double_tau = std::max(out.double_tau, rel_err(pairwise_sum(terms), k == r ? 1.0 / kap[k] : 0.0));
      for (std::size_t j = 0; j < q; ++j) terms[j] = kap[j] / ((s2[j] - r2[k]) * (s2[j] - r2[r]));
      out.double_kappa = std::max(out.double_kappa, rel_err(pairwise_sum(terms), k == r ? 1.0 / tau[k] : 0.0));
    }
  }

  double prod = 1.0;
  for (std::size_t j = 0; j < q; ++j) {
    terms[j] = tau[j] / r2[j];
    prod *= s2[j] / r2[j];
  }
  out.nu = rel_err(1.0 - pairwise_sum(terms), prod);

  if (v.sigma.back() == 0.0) {
    for (std::size_t j = 0; j < q; ++j) terms[j] = tau[j] / (r2[j] * r2[j]);
    double rhs = 1.0 / r2[0];
    for (std::size_t j = 0; j + 1 < q; ++j) rhs *= s2[j] / r2[j + 1];
    out.nu_rho = rel_err(pairwise_sum(terms), rhs);
  }

  // Probe points on both sides of the poles, kept away from them.
  std::vector<double> xs{-10.0 / r2[0], -1.0 / r2[0], -0.1 / r2[0], 0.5 / r2[0]};
  for (std::size_t j = 0; j + 1 < q; ++j) xs.push_back(2.0 / (r2[j] + r2[j + 1]));
  for (double x : xs) {
    double a = j_of_x(v, x), b = j_partial_fractions(v, x);
    out.j_forms = std::max(out.j_forms, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  return out;
}

KernelVerdict kernel_verdict(const InterlacedValues& v) {
  v.validate();
  KernelVerdict out{1.0, 1.0, false};
  for (std::size_t j = 0; j < v.q(); ++j) out.prod_sigma_rho *= sq(v.sigma[j] / v.rho[j]);
  for (std::size_t j = 0; j + 1 < v.q(); ++j) out.prod_sigma_rho_next *= sq(v.sigma[j] / v.rho[j + 1]);
  out.kernel_trivial = out.prod_sigma_rho == 0.0 && std::isinf(out.prod_sigma_rho_next);
  return out;
}

}  // namespace szego
