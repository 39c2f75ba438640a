#include <optional>
#include <random>

#include "doctest.h"
#include "szego/error.hpp"
#include "szego/io.hpp"
#include "szego/sampling.hpp"
#include "test_util.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

std::optional<Errc> parse_code(const std::string& text, bool spectral = false) {
  try {
    if (spectral)
      io::spectral_from_json(text);
    else
      io::symbol_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("test_io") {

TEST_CASE("coefficient symbols round trip bit for bit") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> c = random_vector(rng, 1 + trial * 3, std::pow(10.0, trial % 7 - 3));
    Symbol u = Symbol::from_coeffs(c);
    Symbol back = io::symbol_from_json(io::symbol_to_json(u));
    REQUIRE(back.N() == u.N());
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(back.coeffs[k] == u.coeffs[k]);
  }
}

TEST_CASE("rational symbols keep num, den and N") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Symbol u = random_rational_symbol(rng, 3, trial % 2 == 0);
    Symbol back = io::symbol_from_json(io::symbol_to_json(u));
    REQUIRE(back.rational);
    CHECK(back.N() == u.N());
    CHECK(back.rational->num().coeffs() == u.rational->num().coeffs());
    CHECK(back.rational->den().coeffs() == u.rational->den().coeffs());
    CHECK(back.coeffs == u.coeffs);
  }
}

TEST_CASE("spectral data round trips bit for bit") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    SpectralData d = random_spectral_data(rng);
    SpectralData back = io::spectral_from_json(io::spectral_to_json(d));
    REQUIRE(back.n() == d.n());
    for (std::size_t r = 0; r < d.n(); ++r) {
      CHECK(back.s[r] == d.s[r]);
      CHECK(back.psi[r].angle() == d.psi[r].angle());
      CHECK(back.psi[r].P().coeffs() == d.psi[r].P().coeffs());
    }
  }
}

TEST_CASE("version tags") {
  Symbol u = Symbol::from_coeffs({1.0, 2.0});
  CHECK(io::version_of(io::symbol_to_json(u)) == io::kSymbolTag);
  SpectralData d{{1.0}, {BlaschkeProduct()}};
  CHECK(io::version_of(io::spectral_to_json(d)) == io::kSpectralTag);
  CHECK(io::version_of("not json").empty());
}

TEST_CASE("malformed input is a parse error") {
  CHECK(parse_code("{") == Errc::parse_error);
  CHECK(parse_code("[]") == Errc::parse_error);
  CHECK(parse_code(R"({"coeffs": [[1, 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/2", "coeffs": [[1, 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1"})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1", "coeffs": []})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1", "coeffs": [[1, 0, 2]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1", "coeffs": [["a", 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1", "coeffs": [[1, 0]], "N": -3})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1", "rational": {"num": [[1, 0]]}})") == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-symbol/1", "rational": {"num": [[1, 0]], "den": [[2, 0]]}})") ==
        Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-spectral/1"})", true) == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-spectral/1", "data": []})", true) == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-spectral/1", "data": [{"psi": 0}]})", true) == Errc::parse_error);
  CHECK(parse_code(R"({"version": "szego-spectral/1", "data": [{"s": 1, "psi": "x"}]})", true) ==
        Errc::parse_error);
}

TEST_CASE("real numbers are accepted as coefficients") {
  Symbol u = io::symbol_from_json(R"({"version": "szego-symbol/1", "coeffs": [3, [2, 0.5]], "N": 4})");
  REQUIRE(u.N() == 4);
  CHECK(u.coeffs[0] == cplx(3.0, 0.0));
  CHECK(u.coeffs[1] == cplx(2.0, 0.5));
  CHECK(u.coeffs[3] == cplx{});
}

TEST_CASE("invalid spectral data is rejected after parsing") {
  // Non-decreasing s violates the strict ordering.
  std::optional<Errc> c = parse_code(R"({"version": "szego-spectral/1", "data": [{"s": 1}, {"s": 2}]})", true);
  REQUIRE(c.has_value());
  CHECK(*c != Errc::parse_error);
}

}  // TEST_SUITE
