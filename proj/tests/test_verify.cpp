#include "doctest.h"
#include "szego/error.hpp"
#include "szego/verify.hpp"

using namespace szego;

TEST_SUITE("test_verify") {

TEST_CASE("suites pass and report every case") {
  for (const char* suite : {"bateman", "real"}) {
    VerifyReport rep = run_verify(suite, 5);
    CHECK(rep.passed());
    CHECK(rep.failures() == 0);
    REQUIRE(!rep.cases.empty());
    for (const VerifyCase& c : rep.cases) {
      CHECK(c.suite == suite);
      CHECK(c.value <= c.tolerance);
    }
    CHECK(rep.table().find("passed") != std::string::npos);
    CHECK(rep.to_json().find("\"seed\"") != std::string::npos);
  }
}

TEST_CASE("same seed, same report") {
  VerifyReport a = run_verify("roundtrip", 9), b = run_verify("roundtrip", 9);
  REQUIRE(a.cases.size() == b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) CHECK(a.cases[i].value == b.cases[i].value);
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run_verify("nope", 1), Error);
  CHECK(verify_suites().size() >= 5);
}

}  // TEST_SUITE
