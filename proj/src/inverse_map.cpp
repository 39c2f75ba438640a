#include "szego/inverse_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "szego/bateman.hpp"
#include "szego/error.hpp"
#include "szego/fft.hpp"

namespace szego {

namespace {

double sign_of(std::size_t i) { return i % 2 == 0 ? 1.0 : -1.0; }

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(10);
  o << x;
  return o.str();
}

}  // namespace

cplx CMatrix::entry(std::size_t k, std::size_t l, cplx z) const {
  double r = rho[l], s = sigma[k];
  return (r - s * z * psi_even[k](z) * psi_odd[l](z)) / (r * r - s * s);
}

CMatrix build_cmatrix(const SpectralData& data) {
  data.validate();
  CMatrix c;
  c.q = data.q();
  for (std::size_t r = 0; r < data.n(); ++r) {
    if (r % 2 == 0) {
      c.rho.push_back(data.s[r]);
      c.psi_odd.push_back(data.psi[r]);
    } else {
      c.sigma.push_back(data.s[r]);
      c.psi_even.push_back(data.psi[r]);
    }
  }
  if (c.sigma.size() < c.q) {
    c.sigma.push_back(0.0);
    c.psi_even.push_back(BlaschkeProduct());
  }
  c.N = static_cast<int>(c.q) + data.total_degree();
  c.cleared.assign(c.q, std::vector<Poly>(c.q));
  for (std::size_t k = 0; k < c.q; ++k)
    for (std::size_t l = 0; l < c.q; ++l) {
      const BlaschkeProduct& a = c.psi_even[k];
      const BlaschkeProduct& b = c.psi_odd[l];
      double den = c.rho[l] * c.rho[l] - c.sigma[k] * c.sigma[k];
      Poly first = (a.D() * b.D()).scaled(c.rho[l]);
      Poly second = (Poly{0.0, 1.0} * a.P() * b.P()).scaled(c.sigma[k] * std::polar(1.0, -(a.angle() + b.angle())));
      c.cleared[k][l] = (first - second).scaled(1.0 / den);
    }
  return c;
}

SynthesisResult synthesize(const SpectralData& data) {
  CMatrix c = build_cmatrix(data);
  const std::size_t q = c.q;
  DetMinors dm = polymatrix_det_minors(c.cleared, c.N);
  cplx q0 = dm.det[0];
  if (std::abs(q0) == 0.0) fail(Errc::hypothesis_violation, "det C#(0) vanishes");
  Poly Q = dm.det.scaled(1.0 / q0);
  std::vector<std::vector<Poly>> minors = dm.minors;
  for (auto& row : minors)
    for (auto& m : row) m = m.scaled(1.0 / q0);

  SynthesisResult res;
  res.N = c.N;
  for (const auto& b : data.psi) res.degrees.push_back(b.degree());

  // For odd n the row of the virtual sigma_q = 0 carries no z term: deg Q
  // drops below N and the rank is carried by a numerator of degree N - 1.
  const bool odd = data.n() % 2 == 1;
  const int qtop = odd ? c.N - 1 : c.N;
  double qmax = Q.max_abs();
  if (!odd) {
    double lead = std::abs(Q[static_cast<std::size_t>(c.N)]);
    if (lead <= 1e-12 * qmax)
      fail(Errc::hypothesis_violation, "deg Q < N = " + std::to_string(c.N) + " (leading coefficient " + fmt(lead) + ")");
  }
  std::vector<cplx> qc(Q.coeffs().begin(), Q.coeffs().begin() + qtop + 1);
  Q = Poly(std::move(qc)).normalized(1e-13);
  res.deg_Q = Q.degree();
  res.q_min_root_modulus = res.deg_Q <= 64 ? min_root_modulus(Q) : 0.0;
  {
    CircleGrid g = grid_transform(Q, fft::next_power_of_two(16 * static_cast<std::size_t>(c.N) + 16));
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (cplx v : g.samples) mn = std::min(mn, std::abs(v)), mx = std::max(mx, std::abs(v));
    res.q_min_on_circle = mx > 0.0 ? mn / mx : 0.0;
  }
  if (!root_free_closed_disc(Q, 1e-10))
    fail(Errc::hypothesis_violation, "Q has a root in the closed unit disc (min root modulus " +
                                         fmt(res.q_min_root_modulus) + ")");

  Poly unum;
  for (std::size_t j = 0; j < q; ++j) {
    Poly r_odd;
    for (std::size_t k = 0; k < q; ++k) {
      double sg = sign_of(k + j);
      r_odd = r_odd + (c.psi_even[k].D() * minors[k][j]).scaled(sg);
    }
    const BlaschkeProduct& b = c.psi_odd[j];
    Poly uj = (b.P() * r_odd).scaled(std::polar(1.0, -b.angle()));
    res.h.emplace_back(b.D() * r_odd, Q);
    res.u_odd.emplace_back(uj, Q);
    unum = unum + uj;
  }
  for (std::size_t k = 0; k < q; ++k) {
    Poly r_even;
    for (std::size_t j = 0; j < q; ++j) {
      const BlaschkeProduct& b = c.psi_odd[j];
      r_even = r_even + (b.P() * minors[k][j]).scaled(sign_of(k + j) * std::polar(1.0, -b.angle()));
    }
    res.u_even.emplace_back(c.psi_even[k].D() * r_even, Q);
  }
  // A symbol of rank N = deg Q has a numerator of degree < N.
  std::vector<cplx> nc = unum.coeffs();
  nc.resize(static_cast<std::size_t>(c.N), cplx{});
  if (odd) {
    double nmax = 0.0;
    for (cplx v : nc) nmax = std::max(nmax, std::abs(v));
    double lead = std::abs(nc.back());
    if (lead <= 1e-12 * nmax)
      fail(Errc::hypothesis_violation, "numerator degree < N - 1 = " + std::to_string(c.N - 1) +
                                           " (leading coefficient " + fmt(lead) + ")");
  }
  res.u = RationalFunction(Poly(std::move(nc)), Q);
  res.Q = Q;
  return res;
}

SynthesisResiduals synthesis_residuals(const SpectralData& data, const SynthesisResult& res) {
  CMatrix c = build_cmatrix(data);
  InterlacedValues iv{c.rho, c.sigma};
  std::vector<double> kap = kappa_squares(iv);
  SynthesisResiduals out;
  for (int p = 0; p < 16; ++p) {
    cplx z = std::polar(1.0, kTwoPi * (p + 0.37) / 16.0);
    double uz = std::abs(res.u(z));
    for (std::size_t k = 0; k < c.q; ++k) {
      cplx acc{};
      for (std::size_t l = 0; l < c.q; ++l) acc += c.entry(k, l, z) * res.h[l](z);
      out.ch = std::max(out.ch, std::abs(acc - 1.0));

      cplx rhs{};
      for (std::size_t j = 0; j < c.q; ++j)
        rhs += res.u_odd[j](z) / (c.rho[j] * c.rho[j] - c.sigma[k] * c.sigma[k]);
      rhs *= kap[k];
      out.drpr = std::max(out.drpr, std::abs(res.u_even[k](z) - rhs) / std::max(1.0, uz));
    }
    cplx so{}, se{};
    for (const auto& f : res.u_odd) so += f(z);
    for (const auto& f : res.u_even) se += f(z);
    double scale = std::max(1.0, uz);
    out.decompositions = std::max({out.decompositions, std::abs(so - se) / scale,
                                   std::abs(so - res.u(z)) / scale});
  }
  return out;
}

RationalFunction fourvalue_formula(double l1, double m1, double l2, double m2) {
  if (!(std::abs(l1) > std::abs(m1) && std::abs(m1) > std::abs(l2) && std::abs(l2) > std::abs(m2) &&
        std::abs(m2) > 0.0))
    fail(Errc::invalid_argument, "four-value formula needs |l1| > |m1| > |l2| > |m2| > 0");
  auto f = [](double l, double m) { return Poly{l, -m}.scaled(1.0 / (l * l - m * m)); };
  Poly num = f(l1, m1) + f(l2, m2) - f(l1, m2) - f(l2, m1);
  Poly den = f(l1, m1) * f(l2, m2) - f(l2, m1) * f(l1, m2);
  RationalFunction u(num, den);
  u.validate_analytic();
  return u;
}

SpectralData fourvalue_spectral_data(double l1, double m1, double l2, double m2) {
  SpectralData d;
  for (double v : {l1, m1, l2, m2}) {
    d.s.push_back(std::abs(v));
    d.psi.push_back(BlaschkeProduct::constant(v > 0 ? 0.0 : std::numbers::pi));
  }
  d.validate();
  return d;
}

RationalFunction collapsed_formula(double l1, double l2, double p) {
  Poly num = Poly{1.0, -p}.scaled(l1 * l1 - l2 * l2);
  Poly den{l1, -p * (l1 - l2), -l2};
  RationalFunction u(num, den);
  u.validate_analytic();
  return u;
}

SpectralRoundtrip spectral_roundtrip(const SpectralData& data, const AnalyzeOptions& opts) {
  SynthesisResult res = synthesize(data);
  SpectralData back = forward(res.symbol(), opts);
  SpectralRoundtrip out;
  if (back.n() != data.n()) {
    out.shape_ok = false;
    return out;
  }
  for (std::size_t r = 0; r < data.n(); ++r) {
    out.s_error = std::max(out.s_error, std::abs(back.s[r] - data.s[r]) / data.s[r]);
    if (back.psi[r].degree() != data.psi[r].degree()) {
      out.shape_ok = false;
      continue;
    }
    out.angle_error = std::max(out.angle_error, angle_distance(back.psi[r].angle(), data.psi[r].angle()));
    out.p_error = std::max(out.p_error, coeff_distance(back.psi[r].P(), data.psi[r].P()));
  }
  return out;
}

double symbol_roundtrip(const Symbol& u, const AnalyzeOptions& opts) {
  SynthesisResult res = synthesize(forward(u, opts));
  Symbol v = res.symbol(u.N());
  double d = 0.0;
  for (std::size_t n = 0; n < u.N(); ++n) d += std::norm(u.coeffs[n] - v.coeffs[n]);
  return std::sqrt(d);
}

}  // namespace szego
