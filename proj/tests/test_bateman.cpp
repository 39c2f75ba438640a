#include <cmath>
#include <random>

#include "doctest.h"
#include "szego/bateman.hpp"
#include "szego/error.hpp"
#include "szego/hankel.hpp"
#include "szego/sampling.hpp"

using namespace szego;

TEST_SUITE("test_bateman") {

TEST_CASE("tau and kappa hand values") {
  InterlacedValues one{{1.0}, {0.5}};
  CHECK(std::abs(tau_squares(one)[0] - 0.75) < 1e-15);
  CHECK(std::abs(kappa_squares(one)[0] - 0.75) < 1e-15);

  InterlacedValues two{{2.0, 1.0}, {1.5, 0.5}};
  auto t2 = tau_squares(two);
  CHECK(std::abs(t2[0] - 2.1875) < 1e-14);
  CHECK(std::abs(t2[1] - 0.3125) < 1e-14);
  CHECK(std::abs(t2[0] / (4.0 - 2.25) + t2[1] / (1.0 - 2.25) - 1.0) < 1e-14);

  InterlacedValues h{{4.0, 1.0}, {2.0, 0.0}};
  auto t = tau_squares(h), k = kappa_squares(h);
  CHECK(std::abs(t[0] - 12.8) < 1e-12);
  CHECK(std::abs(t[1] - 0.2) < 1e-12);
  CHECK(std::abs(k[0] - 9.0) < 1e-12);
  CHECK(std::abs(k[1] - 4.0) < 1e-12);
}

TEST_CASE("J(x) hand values") {
  InterlacedValues h{{4.0, 1.0}, {2.0, 0.0}};
  CHECK(j_of_x(h, 0.0) == 1.0);
  CHECK(std::abs(j_of_x(h, -1.0) - 5.0 / 34.0) < 1e-15);
  CHECK(std::abs(j_partial_fractions(h, -1.0) - 5.0 / 34.0) < 1e-15);
  double alpha = 1.7, y = 0.3;
  InterlacedValues c{{alpha}, {0.0}};
  CHECK(std::abs(j_of_x(c, -y) - 1.0 / (1.0 + y * alpha * alpha)) < 1e-15);
  try {
    j_of_x(h, 1.0 / 16.0);
    FAIL("expected near-pole");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::near_pole);
  }
}

TEST_CASE("identity residual hand checks") {
  InterlacedValues one{{1.0}, {0.5}};
  BatemanResiduals r1 = identity_residuals(one);
  CHECK(r1.nu < 1e-15);
  InterlacedValues h{{4.0, 1.0}, {2.0, 0.0}};
  BatemanResiduals r2 = identity_residuals(h);
  CHECK(r2.nu < 1e-15);
  CHECK(r2.nu_rho < 1e-15);
  CHECK(r2.max() < 1e-13);
}

TEST_CASE("identity residuals on random interlaced sets") {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 200; ++trial) {
    InterlacedValues v = random_interlaced(rng, 6);
    auto t = tau_squares(v), k = kappa_squares(v);
    for (double x : t) CHECK(x > 0.0);
    for (double x : k) CHECK(x > 0.0);
    CHECK(identity_residuals(v).max() < 1e-10);
  }
}

TEST_CASE("interlacing violations are rejected") {
  InterlacedValues bad{{1.0}, {1.5}};
  CHECK_THROWS_AS(tau_squares(bad), Error);
  InterlacedValues bad2{{2.0, 1.0}, {0.5, 0.2}};
  CHECK_THROWS_AS(kappa_squares(bad2), Error);
}

TEST_CASE("J agrees with the resolvent quadratic form") {
  // u = 3 + 2z has rho = (4, 1), sigma = (2, 0).
  Symbol u = Symbol::from_coeffs({3.0, 2.0});
  HankelPair p = build_pair(u);
  InterlacedValues v{{4.0, 1.0}, {2.0, 0.0}};
  for (double y : {0.1, 1.0, 10.0}) {
    CMat A = CMat::Identity(2, 2) + y * p.H2;
    CVec e0 = CVec::Zero(2);
    e0(0) = 1.0;
    CVec w = A.ldlt().solve(e0);
    CHECK(std::abs(w(0).real() - j_of_x(v, -y)) < 1e-9);
  }
}

TEST_CASE("kernel verdict for finite data") {
  InterlacedValues h{{4.0, 1.0}, {2.0, 0.0}};
  KernelVerdict kv = kernel_verdict(h);
  CHECK(kv.prod_sigma_rho == 0.0);
  CHECK(std::abs(kv.prod_sigma_rho_next - 4.0) < 1e-15);
  CHECK_FALSE(kv.kernel_trivial);
  // Truncated Gamma has a nontrivial kernel as well.
  auto s = hankel_singular_values(Symbol::from_coeffs({3.0, 2.0, 0.0, 0.0}));
  CHECK(s[2] < 1e-12);
}

}
