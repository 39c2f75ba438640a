#include "szego/spectral_data.hpp"

#include <cmath>
#include <string>

#include "szego/error.hpp"

namespace szego {

int SpectralData::total_degree() const {
  int d = 0;
  for (const auto& b : psi) d += b.degree();
  return d;
}

void SpectralData::validate(double rel_gap) const {
  if (s.empty()) fail(Errc::invalid_argument, "spectral data is empty");
  if (s.size() != psi.size())
    fail(Errc::invalid_argument, "spectral data: " + std::to_string(s.size()) + " values but " +
                                     std::to_string(psi.size()) + " Blaschke products");
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (!(std::isfinite(s[r]) && s[r] > 0.0))
      fail(Errc::invalid_argument, "spectral data: s_" + std::to_string(r + 1) + " is not positive");
    if (r > 0 && !(s[r - 1] - s[r] > rel_gap * s[0]))
      fail(Errc::invalid_argument, "spectral data: values are not strictly interlaced at position " +
                                       std::to_string(r + 1));
  }
}

}  // namespace szego
