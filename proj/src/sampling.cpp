#include "szego/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "szego/error.hpp"
#include "szego/inverse_map.hpp"

namespace szego {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, const SamplingOptions& opts) {
  std::uniform_real_distribution<double> logu(std::log(opts.s_lo), std::log(opts.s_hi));
  std::vector<double> s(n);
  for (;;) {
    for (double& x : s) x = std::exp(logu(rng));
    std::sort(s.begin(), s.end(), std::greater<>());
    bool ok = true;
    for (std::size_t r = 0; r + 1 < n; ++r)
      if ((s[r] - s[r + 1]) / s[r] < opts.min_gap) ok = false;
    if (ok) return s;
  }
}

BlaschkeProduct random_blaschke(std::mt19937_64& rng, int degree, double zero_radius) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<cplx> zeros(static_cast<std::size_t>(degree));
  for (cplx& z : zeros) z = std::polar(zero_radius * std::sqrt(u01(rng)), kTwoPi * u01(rng));
  return BlaschkeProduct::from_zeros(zeros, kTwoPi * u01(rng));
}

SpectralData random_spectral_data(std::mt19937_64& rng, const SamplingOptions& opts) {
  std::uniform_int_distribution<std::size_t> nd(opts.n_min, opts.n_max);
  std::uniform_int_distribution<int> dd(0, opts.d_max);
  SpectralData data;
  data.s = random_values(rng, nd(rng), opts);
  for (std::size_t r = 0; r < data.s.size(); ++r) data.psi.push_back(random_blaschke(rng, dd(rng), opts.zero_radius));
  return data;
}

InterlacedValues random_interlaced(std::mt19937_64& rng, std::size_t q_max, const SamplingOptions& opts) {
  std::uniform_int_distribution<std::size_t> qd(1, q_max);
  std::bernoulli_distribution zero_tail(0.5);
  std::size_t q = qd(rng);
  bool zero = zero_tail(rng);
  std::vector<double> s = random_values(rng, 2 * q - (zero ? 1 : 0), opts);
  InterlacedValues v;
  for (std::size_t r = 0; r < s.size(); ++r) (r % 2 == 0 ? v.rho : v.sigma).push_back(s[r]);
  if (zero) v.sigma.push_back(0.0);
  return v;
}

Symbol random_rational_symbol(std::mt19937_64& rng, int max_rank, bool real, double max_pole) {
  std::uniform_int_distribution<int> rd(1, max_rank);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> g;
  int rank = rd(rng);
  Poly den{1.0};
  int placed = 0;
  while (placed < rank) {
    double rad = max_pole * std::sqrt(u01(rng));
    if (real && rank - placed >= 2 && u01(rng) < 0.5) {
      cplx p = std::polar(rad, std::numbers::pi * u01(rng));
      den = den * Poly{1.0, -2.0 * p.real(), std::norm(p)};
      placed += 2;
    } else if (real) {
      den = den * Poly{1.0, rad * (u01(rng) < 0.5 ? -1.0 : 1.0)};
      placed += 1;
    } else {
      den = den * Poly{1.0, -std::polar(rad, kTwoPi * u01(rng))};
      placed += 1;
    }
  }
  std::vector<cplx> num(static_cast<std::size_t>(rank));
  for (cplx& a : num) a = real ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
  return Symbol::from_rational(RationalFunction(Poly(std::move(num)), den));
}

Symbol random_conditioned_real_symbol(std::mt19937_64& rng, int max_rank, double min_ratio) {
  for (;;) {
    Symbol u = random_rational_symbol(rng, max_rank, true);
    auto rank = static_cast<std::size_t>(u.rational->den().degree());
    std::vector<double> sv = hankel_singular_values(u);
    if (sv.size() >= rank && sv[rank - 1] >= min_ratio * sv[0]) return u;
  }
}

Symbol random_flow_symbol(std::mt19937_64& rng, int max_rank, double max_norm, std::size_t N) {
  SamplingOptions o;
  o.n_max = 3;
  o.d_max = 1;
  o.s_lo = 0.2;
  o.s_hi = 2.0;
  o.zero_radius = 0.5;
  for (;;) {
    SpectralData d = random_spectral_data(rng, o);
    SynthesisResult res;
    try {
      res = synthesize(d);
    } catch (const Error&) {
      continue;
    }
    if (res.N > max_rank || resolved_truncation(res.u) > N) continue;
    Symbol u = res.symbol(N);
    if (u.l2_norm() <= max_norm) return u;
  }
}

}  // namespace szego
