#pragma once

#include <vector>

#include "szego/spectral_data.hpp"

namespace szego {

/// rho_1 > sigma_1 > rho_2 > ... > rho_q > sigma_q >= 0.
struct InterlacedValues {
  std::vector<double> rho;
  std::vector<double> sigma;

  std::size_t q() const noexcept { return rho.size(); }
  /// rho_j = s_{2j-1}, sigma_k = s_{2k}, with sigma_q = 0 appended for odd n.
  static InterlacedValues from_spectral(const SpectralData& data);
  /// Throws invalid-argument unless strictly interlaced with relative gaps > rel_gap.
  void validate(double rel_gap = 1e-12) const;
};

std::vector<double> tau_squares(const InterlacedValues& v);
std::vector<double> kappa_squares(const InterlacedValues& v);

/// prod_j (1 - x sigma_j^2) / (1 - x rho_j^2).
double j_of_x(const InterlacedValues& v, double x);
/// 1 + x sum_j tau_j^2 / (1 - x rho_j^2).
double j_partial_fractions(const InterlacedValues& v, double x);

struct BatemanResiduals {
  double simple_tau = 0.0;
  double simple_kappa = 0.0;
  double double_tau = 0.0;
  double double_kappa = 0.0;
  double nu = 0.0;
  double nu_rho = 0.0;  // only evaluated when sigma_q = 0
  double j_forms = 0.0;

  double max() const;
};

BatemanResiduals identity_residuals(const InterlacedValues& v);

struct KernelVerdict {
  double prod_sigma_rho;       // prod sigma_j^2 / rho_j^2
  double prod_sigma_rho_next;  // prod sigma_j^2 / rho_{j+1}^2 over j < q
  /// ker H_u = {0} needs the first product zero and the second infinite,
  /// which finite data never satisfies.
  bool kernel_trivial;
};

KernelVerdict kernel_verdict(const InterlacedValues& v);

}  // namespace szego
