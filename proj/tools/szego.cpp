// szego: command-line front end for the spectral transform of Hankel
// operators and the cubic Szego flow.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "szego/aak.hpp"
#include "szego/bateman.hpp"
#include "szego/error.hpp"
#include "szego/forward_map.hpp"
#include "szego/inverse_map.hpp"
#include "szego/io.hpp"
#include "szego/szego_flow.hpp"
#include "szego/verify.hpp"

using namespace szego;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kInputError = 2, kNumericalError = 3;

int exit_code(Errc c) {
  switch (c) {
    case Errc::invalid_argument:
    case Errc::parse_error:
    case Errc::invalid_zero:
      return kInputError;
    case Errc::certificate_failed:
      return kVerifyFailed;
    default:
      return kNumericalError;
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt_c(cplx z) { return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")"; }

std::string poly_str(const Poly& p) {
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? " " : "") + fmt_c(p[k]);
  return "[" + s + "]";
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

cplx parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  in >> re;
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) fail(Errc::parse_error, "complex value must be 're' or 're,im': " + s);
  }
  if (in.fail() && !in.eof()) fail(Errc::parse_error, "complex value must be 're' or 're,im': " + s);
  return {re, im};
}

Symbol load_symbol(const std::string& path, std::size_t trunc) {
  Symbol u = io::symbol_from_json(io::read_file(path));
  return trunc > 0 ? u.resized(trunc) : u;
}

// Report printed by analyze: cluster dimensions, residuals and the Bateman
// norms of the projections against their closed forms.
void print_report(std::ostream& os, const ForwardReport& rep) {
  os << "N = " << rep.N << ", n = " << rep.data.n() << "\n";
  os << "K2 identity residual " << fmt(rep.ku2_residual) << "\n";
  os << "||u - sum u_j|| / ||u|| = " << fmt(rep.h_decomposition_residual) << "\n";
  InterlacedValues iv = InterlacedValues::from_spectral(rep.data);
  std::vector<double> tau = tau_squares(iv), kap = kappa_squares(iv);
  for (std::size_t r = 0; r < rep.data.n(); ++r) {
    bool odd = r % 2 == 0;
    double closed = odd ? tau[r / 2] : kap[r / 2];
    os << "r=" << r + 1 << (odd ? " H" : " K") << "  s=" << fmt(rep.data.s[r]) << "  dim=" << rep.dims[r]
       << "  psi=" << fmt(rep.data.psi[r].angle()) << "  P=" << poly_str(rep.data.psi[r].P())
       << "  |proj|^2=" << fmt(rep.projection_norms2[r]) << "  bateman=" << fmt(closed)
       << "  fit=" << fmt(rep.fit_residuals[r]) << "\n";
  }
  for (const std::string& w : rep.warnings) os << "warning: " << w << "\n";
}

struct Args {
  std::string input, output, csv, mode = "direct", suite = "all", json;
  double tol = 1e-6, T = 1.0, dt = 1e-3, hy = 0.0;
  std::size_t trunc = 0, k = 1;
  std::uint64_t seed = 1;
  std::string alpha = "1", p = "0.5";
  int ell = 1, wave_n = 2;
};

int cmd_analyze(const Args& a) {
  Symbol u = load_symbol(a.input, a.trunc);
  AnalyzeOptions o;
  o.rel_tol = a.tol;
  ForwardReport rep = analyze(u, o);
  emit(a.output, io::spectral_to_json(rep.data));
  print_report(a.output.empty() ? std::cerr : std::cout, rep);
  return kOk;
}

int cmd_synthesize(const Args& a) {
  SpectralData d = io::spectral_from_json(io::read_file(a.input));
  SynthesisResult res = synthesize(d);
  Symbol u = res.symbol(a.trunc);
  emit(a.output, io::symbol_to_json(u));
  std::ostream& os = a.output.empty() ? std::cerr : std::cout;
  std::vector<double> sv = hankel_singular_values(u);
  std::size_t rank = 0;
  for (double x : sv) rank += x > 1e-10 * sv[0];
  os << "Q = " << poly_str(res.Q) << "\n";
  os << "N = " << res.N << ", deg Q = " << res.deg_Q << ", rank Gamma_u = " << rank
     << (rank == static_cast<std::size_t>(res.N) ? " (matches N)" : " (MISMATCH)") << "\n";
  os << "min root modulus of Q " << fmt(res.q_min_root_modulus) << ", min|Q|/max|Q| on circle "
     << fmt(res.q_min_on_circle) << "\n";
  return rank == static_cast<std::size_t>(res.N) ? kOk : kVerifyFailed;
}

// The flow does not preserve polynomial degree, so short coefficient lists
// are padded before integrating.
constexpr std::size_t kMinEvolveModes = 128;

int cmd_evolve(const Args& a) {
  Symbol u = load_symbol(a.input, a.trunc);
  if (a.trunc == 0 && u.N() < kMinEvolveModes) u = u.resized(kMinEvolveModes);
  Field field = a.hy > 0.0 ? Field::hierarchy_flow(a.hy) : Field::szego();
  FlowOptions fo;
  fo.dt = a.dt;
  FlowTrajectory tr;
  std::vector<double> gaps;
  if (a.mode == "exact") {
    // Sample the exact flow on the same grid the integrator would record.
    SpectralData d0 = forward(u);
    std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(a.T / a.dt - 1e-9)));
    std::size_t every = std::max<std::size_t>(1, steps / 100);
    tr.field = field;
    tr.probes = fo.probes;
    tr.dt = a.T / static_cast<double>(steps);
    tr.steps = steps;
    std::vector<std::size_t> at;
    for (std::size_t k = 0; k < steps; k += every) at.push_back(k);
    at.push_back(steps);
    std::vector<double> base;
    for (std::size_t k : at) {
      double t = k == steps ? a.T : static_cast<double>(k) * tr.dt;
      SpectralData dt = field.hierarchy ? hierarchy_exact_evolve(d0, field.y, t) : exact_evolve(d0, t);
      Symbol ut = synthesize(dt).symbol(u.N());
      FlowSample s{t, ut.coeffs, conserved_quantities(ut, fo.probes)};
      std::vector<double> f = s.q.flat();
      if (base.empty()) base = f, tr.drift.assign(f.size(), 0.0);
      for (std::size_t i = 0; i < f.size(); ++i)
        tr.drift[i] = std::max(tr.drift[i], std::abs(f[i] - base[i]) / (base[i] != 0.0 ? std::abs(base[i]) : 1.0));
      tr.samples.push_back(std::move(s));
    }
    tr.max_drift = *std::max_element(tr.drift.begin(), tr.drift.end());
  } else if (a.mode == "direct" || a.mode == "compare") {
    tr = direct_evolve(u, a.T, fo, field);
    if (a.mode == "compare") gaps = exact_gaps(u, tr);
  } else {
    fail(Errc::invalid_argument, "mode must be exact, direct or compare");
  }
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) fail(Errc::invalid_argument, "cannot write " + a.csv);
    write_trajectory_csv(out, tr, gaps.empty() ? nullptr : &gaps);
  } else {
    write_trajectory_csv(std::cout, tr, gaps.empty() ? nullptr : &gaps);
  }
  std::ostream& os = a.csv.empty() ? std::cerr : std::cout;
  const Conserved& q = tr.samples.back().q;
  os << "T = " << fmt(a.T) << ", steps = " << tr.steps << ", dt = " << fmt(tr.dt) << "\n";
  os << "E = " << fmt(q.energy) << ", L2^2 = " << fmt(q.l2sq) << ", M = " << fmt(q.momentum) << "\n";
  os << "max conserved drift " << fmt(tr.max_drift) << "\n";
  if (!gaps.empty()) os << "max exact-direct gap " << fmt(*std::max_element(gaps.begin(), gaps.end())) << "\n";
  return kOk;
}

int cmd_approx(const Args& a) {
  Symbol u = load_symbol(a.input, a.trunc);
  AAKResult r = best_approx(u, a.k);
  emit(a.output, io::symbol_to_json(r.r));
  std::ostream& os = a.output.empty() ? std::cerr : std::cout;
  os << "k = " << r.k << ", s_k = " << fmt(r.s) << ", L = " << r.L << "\n";
  os << "||Gamma_u - Gamma_r|| = " << fmt(r.distance) << ", rank Gamma_r = " << r.rank_r
     << ", |phi| deviation " << fmt(r.unimodularity) << "\n";
  os << "certificate " << (r.certificate_ok ? "ok" : "FAILED: " + r.message) << "\n";
  return r.certificate_ok ? kOk : kVerifyFailed;
}

int cmd_travelwave(const Args& a) {
  TravelingWaveReport rep =
      traveling_wave(parse_complex(a.alpha), a.ell, a.wave_n, parse_complex(a.p), a.T, a.dt, a.trunc);
  std::cout << "u = alpha z^" << a.ell << " / (1 - p z^" << a.wave_n << "), truncation " << rep.u.N() << "\n";
  std::cout << "H clusters " << rep.shape.h_clusters << ", K clusters " << rep.shape.k_clusters
            << ", monomial residual " << fmt(rep.shape.shape_residual) << "\n";
  for (std::size_t r = 0; r < rep.shape.data.n(); ++r)
    std::cout << "  s=" << fmt(rep.shape.data.s[r]) << " Psi = e^{-i " << fmt(rep.shape.data.psi[r].angle())
              << "} z^" << rep.shape.data.psi[r].degree() << "\n";
  if (!rep.shape.ok) {
    std::cout << "shape check FAILED: " << rep.shape.message << "\n";
    return kVerifyFailed;
  }
  std::cout << "fit c = " << fmt(rep.fit.c) << ", omega = " << fmt(rep.fit.omega) << ", residual "
            << fmt(rep.fit.residual) << "\n";
  if (rep.shape.c_predicted)
    std::cout << "spectral prediction c = " << fmt(*rep.shape.c_predicted) << ", omega = "
              << fmt(*rep.shape.omega_predicted) << "\n";
  return rep.fit.residual < 1e-6 ? kOk : kVerifyFailed;
}

int cmd_verify(const Args& a) {
  VerifyReport rep = run_verify(a.suite, a.seed);
  std::cout << rep.table();
  if (!a.json.empty()) io::write_file(a.json, rep.to_json());
  else std::cerr << rep.to_json();
  return rep.passed() ? kOk : kVerifyFailed;
}

int cmd_roundtrip(const Args& a) {
  std::string text = io::read_file(a.input);
  if (io::version_of(text) == io::kSpectralTag) {
    SpectralData d = io::spectral_from_json(text);
    SpectralRoundtrip r = spectral_roundtrip(d);
    std::cout << "s error " << fmt(r.s_error) << ", angle error " << fmt(r.angle_error) << ", P error "
              << fmt(r.p_error) << (r.shape_ok ? "" : ", shape mismatch") << "\n";
    bool ok = r.shape_ok && r.s_error < 1e-8 && r.angle_error < 1e-6 && r.p_error < 1e-6;
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kVerifyFailed;
  }
  Symbol u = io::symbol_from_json(text);
  if (a.trunc > 0) u = u.resized(a.trunc);
  double d = symbol_roundtrip(u);
  bool ok = d < 1e-6 * std::max(1.0, u.l2_norm());
  std::cout << "||u - synthesize(analyze(u))|| = " << fmt(d) << "\n" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral transform of Hankel operators and the cubic Szego equation"};
  app.require_subcommand(1);
  Args a;

  auto* an = app.add_subcommand("analyze", "symbol file -> spectral data");
  an->add_option("input", a.input, "symbol JSON")->required();
  an->add_option("-o,--output", a.output, "spectral JSON output (default stdout)");
  an->add_option("--tol", a.tol, "relative eigenvalue clustering tolerance");
  an->add_option("--trunc", a.trunc, "truncation N (default: from the file)");

  auto* sy = app.add_subcommand("synthesize", "spectral data -> rational symbol");
  sy->add_option("input", a.input, "spectral JSON")->required();
  sy->add_option("-o,--output", a.output, "symbol JSON output (default stdout)");
  sy->add_option("--trunc", a.trunc, "truncation N of the written symbol");

  auto* ev = app.add_subcommand("evolve", "cubic Szego or hierarchy flow");
  ev->add_option("input", a.input, "symbol JSON")->required();
  ev->add_option("--T", a.T, "final time");
  ev->add_option("--dt", a.dt, "time step");
  ev->add_option("--mode", a.mode, "exact, direct or compare")->check(CLI::IsMember({"exact", "direct", "compare"}));
  ev->add_option("--hierarchy-y", a.hy, "flow of J^y instead of the Szego Hamiltonian");
  ev->add_option("--trunc", a.trunc, "number of modes (default: file N, at least 128)");
  ev->add_option("--csv", a.csv, "trajectory CSV (default stdout)");

  auto* ap = app.add_subcommand("approx", "best rank-k Hankel approximation");
  ap->add_option("k", a.k, "target rank")->required();
  ap->add_option("input", a.input, "symbol JSON")->required();
  ap->add_option("-o,--output", a.output, "approximant JSON output (default stdout)");
  ap->add_option("--trunc", a.trunc, "truncation N");

  auto* tw = app.add_subcommand("travelwave", "alpha z^ell / (1 - p z^N)");
  tw->add_option("--alpha", a.alpha, "re or re,im");
  tw->add_option("--ell", a.ell, "power of z in the numerator");
  tw->add_option("--N", a.wave_n, "power of z in the denominator");
  tw->add_option("--p", a.p, "re or re,im with |p| < 1");
  tw->add_option("--T", a.T, "integration time")->default_val(0.5);
  tw->add_option("--dt", a.dt, "time step");
  tw->add_option("--trunc", a.trunc, "number of modes (default: resolved)");

  auto* vf = app.add_subcommand("verify", "run the property suites");
  vf->add_option("--suite", a.suite, "all, bateman, roundtrip, aak, flow or real")
      ->check(CLI::IsMember({"all", "bateman", "roundtrip", "aak", "flow", "real"}));
  vf->add_option("--seed", a.seed, "random seed");
  vf->add_option("--json", a.json, "write the JSON summary here (default stderr)");

  auto* rt = app.add_subcommand("roundtrip", "symbol or spectral file through both maps");
  rt->add_option("input", a.input, "symbol or spectral JSON")->required();
  rt->add_option("--trunc", a.trunc, "truncation N for symbol files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*an) return cmd_analyze(a);
    if (*sy) return cmd_synthesize(a);
    if (*ev) return cmd_evolve(a);
    if (*ap) return cmd_approx(a);
    if (*tw) return cmd_travelwave(a);
    if (*vf) return cmd_verify(a);
    if (*rt) return cmd_roundtrip(a);
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kInputError;
}
