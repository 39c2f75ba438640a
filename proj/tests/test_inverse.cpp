#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "szego/error.hpp"
#include "szego/inverse_map.hpp"
#include "szego/sampling.hpp"
#include "test_util.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

BlaschkeProduct z_psi() {
  std::vector<cplx> z0{0.0};
  return BlaschkeProduct::from_zeros(z0);
}

double coeff_gap(const RationalFunction& a, const RationalFunction& b, std::size_t N = 64) {
  return max_diff(a.taylor(N), b.taylor(N));
}

}  // namespace

TEST_SUITE("test_inverse") {

TEST_CASE("C matrix entries") {
  SpectralData d{{1.0, 0.5}, {BlaschkeProduct(), BlaschkeProduct()}};
  CMatrix c = build_cmatrix(d);
  REQUIRE(c.q == 1);
  CHECK(coeff_distance(c.cleared[0][0], Poly{1.0 / 0.75, -0.5 / 0.75}) < 1e-15);

  SpectralData one{{2.5}, {BlaschkeProduct::constant(1.0)}};
  CMatrix c1 = build_cmatrix(one);
  CHECK(coeff_distance(c1.cleared[0][0], Poly{1.0 / 2.5}) < 1e-15);

  SpectralData dz{{1.0, 0.5}, {z_psi(), BlaschkeProduct()}};
  CMatrix c2 = build_cmatrix(dz);
  CHECK(coeff_distance(c2.cleared[0][0], Poly{1.0 / 0.75, 0.0, -0.5 / 0.75}) < 1e-15);
  CHECK(std::abs(c2.entry(0, 0, 0.3) - (1.0 - 0.5 * 0.09) / 0.75) < 1e-15);
}

TEST_CASE("C matrix degree bound and value at zero") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    SpectralData d = random_spectral_data(rng);
    CMatrix c = build_cmatrix(d);
    for (std::size_t k = 0; k < c.q; ++k)
      for (std::size_t l = 0; l < c.q; ++l) {
        CHECK(c.cleared[k][l].normalized().degree() <= 1 + c.psi_even[k].degree() + c.psi_odd[l].degree());
        double want = c.rho[l] / (c.rho[l] * c.rho[l] - c.sigma[k] * c.sigma[k]);
        CHECK(std::abs(c.entry(k, l, 0.0) - want) < 1e-12 * std::abs(want));
      }
  }
}

TEST_CASE("synthesize small examples") {
  SynthesisResult a = synthesize({{1.0, 0.5}, {BlaschkeProduct(), BlaschkeProduct()}});
  CHECK(coeff_gap(a.u, RationalFunction(Poly{0.75}, Poly{1.0, -0.5})) < 1e-12);
  CHECK(a.N == 1);

  SynthesisResult b = synthesize({{1.0}, {z_psi()}});
  CHECK(coeff_gap(b.u, RationalFunction::polynomial(Poly{0.0, 1.0})) < 1e-12);

  SynthesisResult c = synthesize({{1.0, 0.5}, {z_psi(), BlaschkeProduct()}});
  CHECK(coeff_gap(c.u, RationalFunction(Poly{0.0, 0.75}, Poly{1.0, 0.0, -0.5})) < 1e-12);
  CHECK(coeff_distance(c.Q, Poly{1.0, 0.0, -0.5}) < 1e-12);
  CHECK(c.N == 2);
}

TEST_CASE("synthesis identities and rank on random data") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) {
    SpectralData d = random_spectral_data(rng);
    SynthesisResult res = synthesize(d);
    SynthesisResiduals r = synthesis_residuals(d, res);
    CHECK(r.ch < 1e-9);
    CHECK(r.drpr < 1e-9);
    CHECK(r.decompositions < 1e-9);
    if (d.n() % 2 == 0)
      CHECK(res.Q.degree() == res.N);
    else
      CHECK(res.Q.degree() < res.N);

    // Hankel ranks from the V(d) characterization.
    Symbol u = res.symbol();
    Symbol big = u;
    auto sh = hankel_singular_values(big);
    auto sk = hankel_singular_values(shift_symbol(big));
    int dd = static_cast<int>(d.n()) + 2 * d.total_degree();
    int rank_h = 0, rank_k = 0;
    for (double v : sh) rank_h += v > 1e-10 * sh[0];
    for (double v : sk) rank_k += v > 1e-10 * sh[0];
    CHECK(rank_h == (dd + 1) / 2);
    CHECK(rank_k == dd / 2);
    CHECK(rank_h == res.N);
  }
}

TEST_CASE("invalid spectral data is rejected") {
  SpectralData bad{{0.5, 1.0}, {BlaschkeProduct(), BlaschkeProduct()}};
  CHECK_THROWS_AS(synthesize(bad), Error);
}

TEST_CASE("round trips") {
  Symbol r1 = Symbol::from_rational(RationalFunction(Poly{0.75}, Poly{1.0, -0.5}));
  CHECK(symbol_roundtrip(r1) < 1e-9);
  CHECK(symbol_roundtrip(Symbol::from_coeffs({0.0, 1.0})) < 1e-9);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    SpectralData d = random_spectral_data(rng);
    SpectralRoundtrip rt = spectral_roundtrip(d);
    CHECK(rt.shape_ok);
    CHECK(rt.s_error < 1e-8);
    CHECK(rt.angle_error < 1e-6);
    CHECK(rt.p_error < 1e-6);
  }
}

TEST_CASE("four-value formula agrees with the determinant formula") {
  for (auto v : std::vector<std::array<double, 4>>{{4, 2, 1, 0.5}, {4, -2, 1, -0.5}, {-3, 2.5, -1, 0.2}}) {
    RationalFunction f = fourvalue_formula(v[0], v[1], v[2], v[3]);
    SpectralData d = fourvalue_spectral_data(v[0], v[1], v[2], v[3]);
    SynthesisResult res = synthesize(d);
    CHECK(coeff_gap(f, res.u) < 1e-8);
    SpectralData back = forward(Symbol::from_rational(f));
    REQUIRE(back.n() == 4);
    for (int r = 0; r < 4; ++r) CHECK(std::abs(back.s[r] - std::abs(v[r])) < 1e-9);
  }
  CHECK_THROWS_AS(fourvalue_formula(1, 2, 0.5, 0.1), Error);
}

TEST_CASE("collapsed limit of the four-value formula") {
  double l1 = 3.0, l2 = 1.0, eps = 1e-5;
  for (double p : {-0.5, 0.0, 0.3}) {
    double delta = eps * (1 + p) / (1 - p);
    RationalFunction f = fourvalue_formula(l1, l2 + eps, l2, -l2 + delta);
    RationalFunction g = collapsed_formula(l1, l2, p);
    CHECK(coeff_gap(f, g) < 1e-4);
  }
}

}
