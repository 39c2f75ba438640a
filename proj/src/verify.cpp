#include "szego/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "szego/aak.hpp"
#include "szego/bateman.hpp"
#include "szego/error.hpp"
#include "szego/forward_map.hpp"
#include "szego/inverse_map.hpp"
#include "szego/kernels.hpp"
#include "szego/sampling.hpp"
#include "szego/szego_flow.hpp"

namespace szego {

namespace {

using CaseFn = std::function<VerifyCase(std::mt19937_64&)>;

VerifyCase check(std::string suite, std::string name, double value, double tol, std::string detail = {}) {
  VerifyCase c{std::move(suite), std::move(name), value <= tol, value, tol, std::move(detail)};
  return c;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Runs count seeded cases, each with its own generator derived from
// (seed, suite salt, index), so results do not depend on the thread count.
void run_cases(std::vector<VerifyCase>& out, const std::string& suite, const std::string& name,
               std::size_t count, std::uint64_t seed, std::uint64_t salt, const CaseFn& fn) {
  std::vector<VerifyCase> res(count);
  const int threads = kernels::thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < count; ++i) {
    std::seed_seq ss{seed, salt, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(ss);
    std::string label = name + "[" + std::to_string(i) + "]";
    try {
      res[i] = fn(rng);
      res[i].suite = suite;
      res[i].name = label;
    } catch (const Error& e) {
      res[i] = VerifyCase{suite, label, false, 1.0, 0.0, std::string(errc_name(e.code())) + ": " + e.what()};
    } catch (const std::exception& e) {
      res[i] = VerifyCase{suite, label, false, 1.0, 0.0, e.what()};
    }
  }
  out.insert(out.end(), res.begin(), res.end());
}

void single(std::vector<VerifyCase>& out, const std::string& suite, const std::string& name,
            const std::function<VerifyCase()>& fn) {
  try {
    VerifyCase c = fn();
    c.suite = suite;
    c.name = name;
    out.push_back(std::move(c));
  } catch (const Error& e) {
    out.push_back({suite, name, false, 1.0, 0.0, std::string(errc_name(e.code())) + ": " + e.what()});
  } catch (const std::exception& e) {
    out.push_back({suite, name, false, 1.0, 0.0, e.what()});
  }
}

void suite_bateman(std::vector<VerifyCase>& out, std::uint64_t seed) {
  const std::string S = "bateman";
  single(out, S, "hand case rho=(4,1) sigma=(2,0)", [&] {
    InterlacedValues v{{4.0, 1.0}, {2.0, 0.0}};
    auto t = tau_squares(v), k = kappa_squares(v);
    double e = std::max({std::abs(t[0] - 12.8), std::abs(t[1] - 0.2), std::abs(k[0] - 9.0), std::abs(k[1] - 4.0)});
    return check(S, "", e, 1e-12);
  });
  run_cases(out, S, "identities", 100, seed, 1, [&](std::mt19937_64& rng) {
    InterlacedValues v = random_interlaced(rng, 6);
    BatemanResiduals r = identity_residuals(v);
    return check(S, "", r.max(), 1e-10, "q = " + std::to_string(v.q()));
  });
}

void suite_roundtrip(std::vector<VerifyCase>& out, std::uint64_t seed) {
  const std::string S = "roundtrip";
  run_cases(out, S, "spectral data", 50, seed, 2, [&](std::mt19937_64& rng) {
    SpectralData d = random_spectral_data(rng);
    SpectralRoundtrip r = spectral_roundtrip(d);
    if (!r.shape_ok) return VerifyCase{S, "", false, 1.0, 0.0, "shape of the data not recovered"};
    // Normalize each error by its own tolerance so one value carries the verdict.
    double v = std::max({r.s_error / 1e-8, r.angle_error / 1e-6, r.p_error / 1e-6});
    return check(S, "", v, 1.0,
                 "s " + fmt(r.s_error) + ", angle " + fmt(r.angle_error) + ", P " + fmt(r.p_error));
  });
}

void suite_real(std::vector<VerifyCase>& out, std::uint64_t seed) {
  const std::string S = "real";
  run_cases(out, S, "real symbol", 20, seed, 3, [&](std::mt19937_64& rng) {
    Symbol u = random_conditioned_real_symbol(rng, 4);
    RealDiagnostics d = real_diagnostics(u);
    std::string detail;
    for (const std::string& v : d.violations) detail += (detail.empty() ? "" : "; ") + v;
    return VerifyCase{S, "", d.ok(), d.ok() ? 0.0 : 1.0, 0.0, detail};
  });
}

void suite_aak(std::vector<VerifyCase>& out, std::uint64_t seed) {
  const std::string S = "aak";
  single(out, S, "3+2z k=1 distance", [&] {
    AAKResult r = best_approx(Symbol::from_coeffs({3.0, 2.0}), 1);
    return check(S, "", std::abs(r.distance - 1.0) + (r.rank_r == 1 ? 0.0 : 1.0), 1e-7,
                 "distance " + fmt(r.distance) + ", rank " + std::to_string(r.rank_r));
  });
  run_cases(out, S, "random polynomial certificate", 6, seed, 4, [&](std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> c(6);
    for (cplx& x : c) x = cplx(g(rng), g(rng));
    std::size_t k = 1 + static_cast<std::size_t>(rng() % 3);
    AAKResult r = best_approx(Symbol::from_coeffs(c), k);
    return VerifyCase{S, "", r.certificate_ok, std::abs(r.distance - r.s) / r.s, 1e-7, r.message};
  });
  run_cases(out, S, "ratio certificate d=2", 3, seed, 5, [&](std::mt19937_64& rng) {
    SpectralData d{{2.0, 1.0}, {random_blaschke(rng, 2, 0.7), BlaschkeProduct()}};
    Symbol u = synthesize(d).symbol();
    ForwardReport rep = analyze(u);
    HankelPair pair = build_pair(u);
    double worst = 0.0;
    for (const Cluster& c : rep.h_clusters) {
      RatioCertificate cert = ratio_certificate(pair, c, 3, static_cast<unsigned>(rng()));
      for (double x : cert.unimodularity) worst = std::max(worst, x);
      for (double x : cert.reflection_residuals) worst = std::max(worst, x);
    }
    return check(S, "", worst, 1e-6);
  });
}

void suite_flow(std::vector<VerifyCase>& out, std::uint64_t seed) {
  const std::string S = "flow";
  single(out, S, "energy of 3+2z", [&] {
    Symbol u = Symbol::from_coeffs({3.0, 2.0});
    SpectralData d = forward(u);
    double e = 0.0;
    for (std::size_t r = 0; r < d.n(); ++r) e += (r % 2 == 0 ? 1.0 : -1.0) * std::pow(d.s[r], 4);
    double grid = conserved_quantities(u).energy;
    return check(S, "", std::max(std::abs(grid - 60.25), std::abs(0.25 * e - 60.25)), 1e-10);
  });
  single(out, S, "u=z direct vs exact", [&] {
    std::vector<cplx> c(8, cplx{});
    c[1] = 1.0;
    Symbol u = Symbol::from_coeffs(c);
    FlowTrajectory tr = direct_evolve(u, std::numbers::pi);
    std::vector<double> gaps = exact_gaps(u, tr);
    return check(S, "", *std::max_element(gaps.begin(), gaps.end()), 1e-9);
  });
  run_cases(out, S, "energy identity", 10, seed, 6, [&](std::mt19937_64& rng) {
    Symbol u = random_flow_symbol(rng, 3, 3.0, 128);
    SpectralData d = forward(u);
    double e = 0.0;
    for (std::size_t r = 0; r < d.n(); ++r) e += (r % 2 == 0 ? 1.0 : -1.0) * std::pow(d.s[r], 4);
    double grid = conserved_quantities(u).energy;
    return check(S, "", std::abs(grid - 0.25 * e) / std::max(1.0, grid), 1e-8);
  });
  run_cases(out, S, "direct vs exact T=1", 2, seed, 7, [&](std::mt19937_64& rng) {
    Symbol u = random_flow_symbol(rng, 3, 3.0, 128);
    FlowTrajectory tr = direct_evolve(u, 1.0);
    std::vector<double> gaps = exact_gaps(u, tr);
    double gap = *std::max_element(gaps.begin(), gaps.end());
    SpectralData a = forward(u), b = forward(tr.final_state());
    double iso = 0.0;
    if (a.n() != b.n()) iso = 1.0;
    else
      for (std::size_t r = 0; r < a.n(); ++r) iso = std::max(iso, std::abs(a.s[r] - b.s[r]) / a.s[0]);
    double v = std::max({gap / 1e-6, tr.max_drift / 1e-8, iso / 1e-7});
    return check(S, "", v, 1.0, "gap " + fmt(gap) + ", drift " + fmt(tr.max_drift) + ", s shift " + fmt(iso));
  });
  single(out, S, "hierarchy angle speeds 3+2z", [&] {
    Symbol u = Symbol::from_coeffs({3.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    SpectralData d0 = forward(u);
    FlowOptions o;
    o.dt = 1e-4;
    double worst = 0.0;
    for (double y : {0.5, 2.0}) {
      const double t = 1e-3;
      SpectralData d1 = forward(direct_evolve(u, t, o, Field::hierarchy_flow(y)).final_state());
      std::vector<double> w = hierarchy_speeds(d0, y);
      for (std::size_t r = 0; r < d0.n(); ++r) {
        double dpsi = std::remainder(d1.psi[r].angle() - d0.psi[r].angle(), 2.0 * std::numbers::pi);
        worst = std::max(worst, std::abs(-dpsi / t - w[r]) / std::abs(w[r]));
      }
    }
    return check(S, "", worst, 1e-5);
  });
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const VerifyCase& c : cases) n += !c.passed;
  return n;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["passed"] = passed();
  j["total"] = cases.size();
  j["failures"] = failures();
  nlohmann::json list = nlohmann::json::array();
  for (const VerifyCase& c : cases)
    list.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"value", c.value},
                    {"tolerance", c.tolerance}, {"detail", c.detail}});
  j["cases"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string VerifyReport::table() const {
  std::ostringstream os;
  char line[256];
  for (const VerifyCase& c : cases) {
    std::snprintf(line, sizeof line, "%-4s %-10s %-36s %11.3e <= %9.2e  ", c.passed ? "PASS" : "FAIL",
                  c.suite.c_str(), c.name.c_str(), c.value, c.tolerance);
    os << line << c.detail << '\n';
  }
  os << cases.size() - failures() << "/" << cases.size() << " passed\n";
  return os.str();
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"bateman", "roundtrip", "aak", "flow", "real"};
  return names;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
  VerifyReport rep;
  rep.seed = seed;
  const bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* name) {
    bool w = all || suite == name;
    known |= w;
    return w;
  };
  if (want("bateman")) suite_bateman(rep.cases, seed);
  if (want("roundtrip")) suite_roundtrip(rep.cases, seed);
  if (want("aak")) suite_aak(rep.cases, seed);
  if (want("flow")) suite_flow(rep.cases, seed);
  if (want("real")) suite_real(rep.cases, seed);
  if (!known) fail(Errc::invalid_argument, "unknown suite '" + suite + "'");
  return rep;
}

}  // namespace szego
