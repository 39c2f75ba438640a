#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace szego {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

inline CVec to_cvec(const std::vector<cplx>& v) {
  return Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<cplx> to_std(const CVec& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace szego
