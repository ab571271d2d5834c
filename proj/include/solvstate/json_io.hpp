#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "solvstate/fockspace.hpp"
#include "solvstate/measures.hpp"
#include "solvstate/spectrum.hpp"

namespace solvstate::io {

using nlohmann::json;

/// v rounded to `digits` significant decimal digits; non-finite values pass through.
double round_sig(double v, int digits = 15);

/// Number node at 15 significant digits, null for NaN and infinities.
json number(double v);

/// {"offset", "alpha", "coefficients": [[re, im], ...], "tail_bound"}
json to_json(const FockState& s);
FockState fock_state_from_json(const json& j);

/// {"kind": "poschl_teller", "kappa", "kappa_prime"} | {"kind": "custom", "energies": [...]}
/// | {"kind": "harmonic"}. Rule-based spectra cannot be serialized.
json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const json& j);

json to_json(const MomentReport& r);
/// Fixed-width table with 6 significant digits.
std::string to_text(const MomentReport& r);

/// One RFC 4180 record terminated by CRLF.
std::string csv_row(const std::vector<std::string>& fields);
/// Shortest-ish decimal rendering with `digits` significant digits and '.' separator.
std::string fmt(double v, int digits);

}  // namespace solvstate::io
