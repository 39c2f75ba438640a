#include "szego/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "szego/error.hpp"

namespace szego::io {

using nlohmann::json;

namespace {

json complex_list(const std::vector<cplx>& c) {
  json a = json::array();
  for (cplx x : c) a.push_back({x.real(), x.imag()});
  return a;
}

std::vector<cplx> parse_complex_list(const json& a, const char* what) {
  if (!a.is_array()) fail(Errc::parse_error, std::string(what) + " must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const json& p : a) {
    if (p.is_number()) {
      out.emplace_back(p.get<double>(), 0.0);
      continue;
    }
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail(Errc::parse_error, std::string(what) + " entries must be [re, im] pairs");
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

void expect_version(const json& j, const char* tag) {
  if (!j.is_object() || !j.contains("version") || !j["version"].is_string() || j["version"] != tag)
    fail(Errc::parse_error, std::string("expected version \"") + tag + "\"");
}

}  // namespace

std::string symbol_to_json(const Symbol& u) {
  json j;
  j["version"] = kSymbolTag;
  if (u.rational) {
    j["rational"] = {{"num", complex_list(u.rational->num().coeffs())},
                     {"den", complex_list(u.rational->den().coeffs())}};
    j["N"] = u.N();
  } else {
    j["coeffs"] = complex_list(u.coeffs);
  }
  return j.dump(2) + "\n";
}

Symbol symbol_from_json(const std::string& text) {
  json j = parse(text);
  expect_version(j, kSymbolTag);
  std::size_t N = 0;
  if (j.contains("N")) {
    if (!j["N"].is_number_unsigned()) fail(Errc::parse_error, "N must be a non-negative integer");
    N = j["N"].get<std::size_t>();
  }
  if (j.contains("coeffs") == j.contains("rational"))
    fail(Errc::parse_error, "symbol needs exactly one of \"coeffs\" and \"rational\"");
  if (j.contains("coeffs")) {
    Symbol u = Symbol::from_coeffs(parse_complex_list(j["coeffs"], "coeffs"));
    if (u.N() == 0) fail(Errc::parse_error, "coeffs is empty");
    return N > 0 ? u.resized(N) : u;
  }
  const json& r = j["rational"];
  if (!r.is_object() || !r.contains("num") || !r.contains("den"))
    fail(Errc::parse_error, "rational needs \"num\" and \"den\"");
  std::vector<cplx> num = parse_complex_list(r["num"], "num");
  std::vector<cplx> den = parse_complex_list(r["den"], "den");
  if (den.empty() || den[0] != cplx{1.0, 0.0}) fail(Errc::parse_error, "den[0] must be 1");
  if (num.empty()) num.push_back(0.0);
  return Symbol::from_rational(RationalFunction(Poly(num), Poly(den)), N);
}

std::string spectral_to_json(const SpectralData& data) {
  json j;
  j["version"] = kSpectralTag;
  json list = json::array();
  for (std::size_t r = 0; r < data.n(); ++r) {
    list.push_back({{"s", data.s[r]}, {"psi", data.psi[r].angle()}, {"P", complex_list(data.psi[r].P().coeffs())}});
  }
  j["data"] = std::move(list);
  return j.dump(2) + "\n";
}

SpectralData spectral_from_json(const std::string& text) {
  json j = parse(text);
  expect_version(j, kSpectralTag);
  if (!j.contains("data") || !j["data"].is_array()) fail(Errc::parse_error, "\"data\" must be an array");
  SpectralData d;
  for (const json& e : j["data"]) {
    if (!e.is_object() || !e.contains("s") || !e["s"].is_number())
      fail(Errc::parse_error, "each entry needs a numeric \"s\"");
    double psi = 0.0;
    if (e.contains("psi")) {
      if (!e["psi"].is_number()) fail(Errc::parse_error, "\"psi\" must be a number");
      psi = e["psi"].get<double>();
    }
    std::vector<cplx> P{1.0};
    if (e.contains("P")) P = parse_complex_list(e["P"], "P");
    d.s.push_back(e["s"].get<double>());
    d.psi.emplace_back(psi, Poly(P));
  }
  if (d.n() == 0) fail(Errc::parse_error, "\"data\" is empty");
  d.validate();
  return d;
}

std::string version_of(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.is_object() && j.contains("version") && j["version"].is_string()) return j["version"];
  } catch (const json::exception&) {
  }
  return {};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_argument, "cannot write " + path);
  out << text;
}

}  // namespace szego::io
