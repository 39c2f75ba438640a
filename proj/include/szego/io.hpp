#pragma once

#include <string>

#include "szego/hankel.hpp"
#include "szego/spectral_data.hpp"

namespace szego::io {

inline constexpr const char* kSymbolTag = "szego-symbol/1";
inline constexpr const char* kSpectralTag = "szego-spectral/1";

/// {"version", "rational": {"num", "den"}, "N"} when u has a rational form,
/// otherwise {"version", "coeffs"}. Complex numbers are [re, im] pairs and
/// doubles round-trip exactly.
std::string symbol_to_json(const Symbol& u);
/// Throws parse-error on malformed input or den[0] != 1.
Symbol symbol_from_json(const std::string& text);

/// {"version", "data": [{"s", "psi", "P"}, ...]} with P ascending and monic.
std::string spectral_to_json(const SpectralData& data);
/// Throws parse-error on malformed input; the Blaschke constructor and
/// SpectralData::validate reject non-Schur P and non-interlaced s.
SpectralData spectral_from_json(const std::string& text);

/// Version tag of a JSON document, empty when absent.
std::string version_of(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace szego::io
