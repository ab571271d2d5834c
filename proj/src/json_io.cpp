#include "solvstate/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "solvstate/errors.hpp"

namespace solvstate::io {

double round_sig(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig(v);
}

std::string fmt(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += "\r\n";
  return out;
}

json to_json(const FockState& s) {
  json coeffs = json::array();
  for (const auto& c : s.coefficients) coeffs.push_back({number(c.real()), number(c.imag())});
  return {{"offset", s.offset}, {"alpha", number(s.alpha)}, {"coefficients", coeffs}, {"tail_bound", number(s.tail_bound)}};
}

FockState fock_state_from_json(const json& j) {
  try {
    FockState s;
    s.offset = j.at("offset").get<std::size_t>();
    s.alpha = j.at("alpha").get<double>();
    for (const auto& c : j.at("coefficients")) {
      if (!c.is_array() || c.size() != 2) throw DomainError("FockState JSON: coefficient must be [re, im]");
      s.coefficients.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    s.tail_bound = j.value("tail_bound", 0.0);
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("FockState JSON: ") + e.what());
  }
}

json to_json(const Spectrum& s) {
  switch (s.kind()) {
    case Spectrum::Kind::PoschlTeller:
      return {{"kind", "poschl_teller"}, {"kappa", number(s.kappa())}, {"kappa_prime", number(s.kappa_prime())}};
    case Spectrum::Kind::HarmonicOscillator:
      return {{"kind", "harmonic"}};
    case Spectrum::Kind::Custom: {
      auto top = s.max_level();
      if (!top) throw DomainError("rule-based spectra cannot be serialized");
      json e = json::array();
      for (std::size_t n = 0; n <= *top; ++n) e.push_back(number(s.energy(n)));
      return {{"kind", "custom"}, {"energies", e}};
    }
  }
  return {};
}

Spectrum spectrum_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poschl_teller") return Spectrum::poschl_teller(j.at("kappa").get<double>(), j.at("kappa_prime").get<double>());
    if (kind == "harmonic") return Spectrum::harmonic();
    if (kind == "custom") return Spectrum::from_table(j.at("energies").get<std::vector<double>>());
    throw DomainError("unknown spectrum kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DomainError(std::string("spectrum JSON: ") + e.what());
  }
}

namespace {

json log_real(const LogReal& v) { return number(v.value()); }

}  // namespace

json to_json(const MomentReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o{{"n", row.n},
           {"power", number(row.power)},
           {"target", log_real(row.target)},
           {"log_target", number(row.target.log_abs)},
           {"computed", log_real(row.computed)},
           {"abs_residual", number(row.abs_residual)},
           {"rel_residual", number(row.rel_residual)},
           {"quad_error", number(row.quad_error)},
           {"ratio", number(row.ratio)},
           {"verdict", to_string(row.verdict)}};
    if (row.analytic) {
      o["analytic"] = log_real(*row.analytic);
      o["analytic_deviation"] = number(row.analytic_deviation);
    }
    if (!row.note.empty()) o["note"] = row.note;
    rows.push_back(o);
  }
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"label", c.label}, {"value", number(c.value)}, {"tolerance", number(c.tolerance)}, {"passed", c.passed}});
  json out{{"title", r.title},
           {"candidate", r.candidate},
           {"power", r.power_label},
           {"tolerance", number(r.tolerance)},
           {"quadrature_consistent", r.quadrature_consistent},
           {"pass", r.count(Verdict::Pass)},
           {"fail", r.count(Verdict::Fail)},
           {"indeterminate", r.count(Verdict::Indeterminate)},
           {"rows", rows},
           {"checks", checks}};
  if (r.nonnegativity_checked)
    out["nonnegativity"] = {{"nonnegative", r.nonnegative}, {"min", number(r.min_weight)}, {"negative_points", r.negative_points}};
  return out;
}

std::string to_text(const MomentReport& r) {
  std::ostringstream os;
  os << r.title << "  [" << r.candidate << ", " << r.power_label << "]\n";
  os << std::setw(4) << "n" << std::setw(14) << "target" << std::setw(14) << "computed" << std::setw(14) << "rel_resid"
     << std::setw(14) << "ratio" << std::setw(14) << "analytic_dev" << "  verdict\n";
  for (const auto& row : r.rows) {
    os << std::setw(4) << row.n << std::setw(14) << fmt(row.target.value(), 6) << std::setw(14)
       << fmt(row.computed.value(), 6) << std::setw(14) << fmt(row.rel_residual, 6) << std::setw(14)
       << fmt(row.ratio, 6) << std::setw(14) << (row.analytic ? fmt(row.analytic_deviation, 6) : std::string("-"))
       << "  " << to_string(row.verdict);
    if (!row.note.empty()) os << " (" << row.note << ")";
    os << '\n';
  }
  for (const auto& c : r.checks)
    os << "  " << c.label << " = " << fmt(c.value, 6) << (c.passed ? "  ok" : "  FAILED") << '\n';
  if (r.nonnegativity_checked)
    os << "  min h on grid = " << fmt(r.min_weight, 6) << (r.nonnegative ? "  (nonnegative)" : "  (NEGATIVE values)") << '\n';
  os << "  quadrature vs exact: " << (r.quadrature_consistent ? "consistent" : "INCONSISTENT") << '\n';
  return os.str();
}

}  // namespace solvstate::io
