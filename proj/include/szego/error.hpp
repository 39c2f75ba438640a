#pragma once

#include <stdexcept>
#include <string>

namespace szego {

enum class Errc {
  invalid_argument,
  numerical_failure,
  hypothesis_violation,
  spectral_inconsistency,
  fit_failed,
  not_analytic,
  not_inner,
  degree_mismatch,
  invalid_zero,
  pole,
  near_pole,
  certificate_failed,
  step_size_failure,
  parse_error,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace szego
