#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace szego {

/// One named invariant checked by a verification suite.
struct VerifyCase {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity (residual, error, or 0/1)
  double tolerance = 0.0;  // pass threshold for value
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<VerifyCase> cases;

  bool passed() const;
  std::size_t failures() const;
  /// Machine-readable summary with one object per case.
  std::string to_json() const;
  /// Fixed-width pass/fail table.
  std::string table() const;
};

/// Suite names accepted by run_verify.
const std::vector<std::string>& verify_suites();

/// Runs "all" or one of bateman, roundtrip, aak, flow, real. Cases are
/// independent; with several threads they run in parallel and are reported
/// in case order. Throws invalid-argument for an unknown suite.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace szego
