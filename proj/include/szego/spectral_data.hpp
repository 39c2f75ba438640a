#pragma once

#include <vector>

#include "szego/blaschke.hpp"

namespace szego {

/// Image of the forward map: s_1 > s_2 > ... > s_n > 0 with one Blaschke
/// product per value. Odd positions come from H_u, even ones from K_u; a
/// trailing zero singular value of K_u is encoded by n being odd.
struct SpectralData {
  std::vector<double> s;
  std::vector<BlaschkeProduct> psi;

  std::size_t n() const noexcept { return s.size(); }
  std::size_t q() const noexcept { return (s.size() + 1) / 2; }
  /// Sum of the Blaschke degrees.
  int total_degree() const;
  /// Throws invalid-argument unless s is strictly decreasing, positive and
  /// consecutive values differ by more than rel_gap * s_1.
  void validate(double rel_gap = 1e-12) const;
};

}  // namespace szego
