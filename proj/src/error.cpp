#include "szego/error.hpp"

namespace szego {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::numerical_failure: return "numerical-failure";
    case Errc::hypothesis_violation: return "hypothesis-violation";
    case Errc::spectral_inconsistency: return "spectral-inconsistency";
    case Errc::fit_failed: return "fit-failed";
    case Errc::not_analytic: return "not-analytic";
    case Errc::not_inner: return "not-inner";
    case Errc::degree_mismatch: return "degree-mismatch";
    case Errc::invalid_zero: return "invalid-zero";
    case Errc::pole: return "pole";
    case Errc::near_pole: return "near-pole";
    case Errc::certificate_failed: return "certificate-failed";
    case Errc::step_size_failure: return "step-size-failure";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace szego
