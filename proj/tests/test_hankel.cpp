#include <cmath>
#include <random>

#include "doctest.h"
#include "szego/error.hpp"
#include "szego/hankel.hpp"
#include "test_util.hpp"

using namespace szego;
using namespace szego::testing;

namespace {

double max_abs_diff(const CVec& a, const CVec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("test_hankel") {

TEST_CASE("shift_symbol") {
  Symbol a = shift_symbol(Symbol::from_coeffs({1.0, 0.0, 0.0}));
  CHECK(max_diff(a.coeffs, {0.0, 0.0}) == 0.0);
  CHECK(a.N() == 2);
  Symbol b = shift_symbol(Symbol::from_coeffs({0.0, 1.0, 0.0}));
  CHECK(max_diff(b.coeffs, {1.0, 0.0}) == 0.0);

  Symbol r = Symbol::from_rational(RationalFunction(Poly{0.75}, Poly{1.0, -0.5}));
  Symbol rs = shift_symbol(r);
  REQUIRE(rs.rational.has_value());
  CHECK(coeff_distance(rs.rational->num().normalized(), Poly{0.375}) < 1e-15);
  CHECK(coeff_distance(rs.rational->den(), Poly{1.0, -0.5}) < 1e-15);
  for (std::size_t n = 0; n < 10; ++n) CHECK(std::abs(rs.coeffs[n] - 0.75 * std::pow(0.5, n + 1)) < 1e-15);
}

TEST_CASE("rational symbols are resolved") {
  Symbol r = Symbol::from_rational(RationalFunction(Poly{0.75}, Poly{1.0, -0.5}));
  CHECK(r.resolved());
  CHECK(r.N() >= 32);
  auto t = r.rational->taylor(r.N());
  CHECK(max_diff(t, r.coeffs) < 1e-10);
}

TEST_CASE("hankel matvec examples") {
  auto y = hankel_matvec(std::vector<cplx>{1.0, 0.0, 0.0}, std::vector<cplx>{2.0, 3.0, 4.0});
  CHECK(max_diff(y, {2.0, 0.0, 0.0}) == 0.0);
  auto y2 = hankel_matvec(std::vector<cplx>{0.0, 1.0, 0.0}, std::vector<cplx>{1.0, 1.0, 0.0});
  CHECK(max_diff(y2, {1.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("apply_H and apply_K") {
  cplx alpha(0.3, -1.2);
  Symbol c = Symbol::from_coeffs({alpha, 0.0});
  CVec one = CVec::Zero(2);
  one(0) = 1.0;
  CVec h = apply_H(c, one);
  CHECK(std::abs(h(0) - alpha) < 1e-15);
  CHECK(std::abs(h(1)) < 1e-15);

  Symbol z = Symbol::from_coeffs({0.0, 1.0});
  CVec hz = apply_H(z, one);
  CHECK(std::abs(hz(1) - 1.0) < 1e-15);
  CHECK(std::abs(hz(0)) < 1e-15);
  CVec kz = apply_K(z, one);
  CHECK(std::abs(kz(0) - 1.0) < 1e-15);

  std::mt19937_64 rng(2);
  Symbol u = Symbol::from_coeffs(random_vector(rng, 100));
  CVec v = random_cvec(rng, 100);
  CHECK(max_abs_diff(apply_H(u, CVec(kI * v)), -kI * apply_H(u, v)) < 1e-12);
}

TEST_CASE("self-adjointness and shift commutation") {
  std::mt19937_64 rng(9);
  for (std::size_t N : {8u, 100u}) {
    Symbol u = Symbol::from_coeffs(random_vector(rng, N));
    CVec h1 = random_cvec(rng, N), h2 = random_cvec(rng, N);
    // (H h1 | h2) = sum (H h1)_n conj(h2_n)
    cplx a = h2.dot(apply_H(u, h1));
    cplx b = h1.dot(apply_H(u, h2));
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a) + 1e-12);

    CMat G = hankel_matrix(u.coeffs, N);
    CMat S = CMat::Zero(N, N);
    for (std::size_t n = 0; n + 1 < N; ++n) S(n + 1, n) = 1.0;
    CMat lhs = S.adjoint() * G, rhs = G * S;
    CHECK((lhs - rhs).topRows(N - 1).norm() < 1e-12 * G.norm());
  }
}

TEST_CASE("build_pair small examples") {
  HankelPair zero = build_pair(Symbol::from_coeffs({0.0, 0.0}));
  CHECK(zero.H2.norm() == 0.0);
  CHECK(zero.K2.norm() == 0.0);

  HankelPair p = build_pair(Symbol::from_coeffs({3.0, 2.0}));
  CMat G(2, 2), H2(2, 2), K2(2, 2);
  G << 3, 2, 2, 0;
  H2 << 13, 6, 6, 4;
  K2 << 4, 0, 0, 0;
  CHECK((p.Gamma - G).norm() < 1e-15);
  CHECK((p.H2 - H2).norm() < 1e-13);
  CHECK((p.K2 - K2).norm() < 1e-13);
  EigenSystem es = hermitian_eigs(p.H2);
  CHECK(std::abs(es.values(0) - 16.0) < 1e-12);
  CHECK(std::abs(es.values(1) - 1.0) < 1e-12);

  EigenSystem id = hermitian_eigs(CMat::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(id.values(i) - 1.0) < 1e-15);
}

TEST_CASE("rank-one symbol has the closed-form singular value") {
  Symbol r = Symbol::from_rational(RationalFunction(Poly{0.75}, Poly{1.0, -0.5}), 64);
  HankelPair p = build_pair(r);
  EigenSystem es = hermitian_eigs(p.H2);
  CHECK(std::abs(es.values(0) - 1.0) < 1e-9);
  CHECK(p.ku2_residual < 1e-12);
}

TEST_CASE("pair invariants on random symbols") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t N = 20 + 10 * static_cast<std::size_t>(trial);
    HankelPair p = build_pair(Symbol::from_coeffs(random_vector(rng, N)));
    CHECK((p.Gamma - p.Gamma.transpose()).norm() == 0.0);
    CHECK((p.H2 - p.H2.adjoint()).norm() < 1e-14 * p.H2.norm());
    CHECK(p.ku2_residual < 1e-12);

    EigenSystem eh = hermitian_eigs(p.H2), ek = hermitian_eigs(p.K2);
    double slack = 1e-10 * eh.values(0);
    for (std::size_t j = 0; j + 1 < N; ++j) {
      CHECK(eh.values(j) + slack >= ek.values(j));
      CHECK(ek.values(j) + slack >= eh.values(j + 1));
    }
    CVec v = random_cvec(rng, N);
    CHECK((p.H2_apply(v) - p.H2 * v).norm() < 1e-12 * p.H2.norm() * v.norm());
    CHECK((p.K2_apply(v) - p.K2 * v).norm() < 1e-12 * p.H2.norm() * v.norm());

    LinearOp op = [&p](const CVec& x) { return CVec(p.H2 * x); };
    CHECK(eig_residual(op, eh) < 1e-10);
    CHECK((eh.vectors.adjoint() * eh.vectors - CMat::Identity(N, N)).norm() < 1e-12 * N);
  }
}

TEST_CASE("Kronecker rank of rational symbols") {
  std::mt19937_64 rng(31);
  for (int r = 1; r <= 5; ++r) {
    std::vector<cplx> poles(static_cast<std::size_t>(r));
    for (cplx& p : poles) p = random_in_disc(rng, 0.7);
    // den(z) = prod (1 - p z)
    Poly den{1.0};
    for (cplx p : poles) den = den * Poly{1.0, -p};
    Poly num(random_vector(rng, static_cast<std::size_t>(r)));
    Symbol u = Symbol::from_rational(RationalFunction(num, den));
    auto s = hankel_singular_values(u);
    int rank = 0;
    for (double v : s)
      if (v > 1e-10 * s[0]) ++rank;
    CHECK(rank == r);
  }
}

TEST_CASE("block Krylov matches dense on a finite-rank symbol") {
  RationalFunction f(Poly{1.0, 0.4}, Poly{1.0, -0.3, 0.2});
  Symbol big = Symbol::from_rational(f, 1024);
  Symbol small = Symbol::from_rational(f, 64);
  HankelPair pb = build_pair(big);
  CHECK_FALSE(pb.dense);
  EigenSystem kr = pair_eigs(pb, false);
  EigenSystem de = hermitian_eigs(build_pair(small).H2);
  REQUIRE(kr.size() >= 2);
  CHECK(kr.size() == 2);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(kr.values(j) - de.values(j)) < 1e-8 * de.values(0));
  LinearOp op = [&pb](const CVec& x) { return pb.H2_apply(x); };
  CHECK(eig_residual(op, kr) < 1e-10);
}

TEST_CASE("block Krylov resolves a double eigenvalue") {
  // u = 0.75 z / (1 - 0.5 z^2) has a two-dimensional eigenspace at s = 1.
  Symbol u = Symbol::from_rational(RationalFunction(Poly{0.0, 0.75}, Poly{1.0, 0.0, -0.5}), 1024);
  HankelPair p = build_pair(u);
  EigenSystem kr = pair_eigs(p, false);
  REQUIRE(kr.size() == 2);
  CHECK(std::abs(kr.values(0) - 1.0) < 1e-9);
  CHECK(std::abs(kr.values(1) - 1.0) < 1e-9);
}

}
