// solvstate: command-line front end for the coherent-state library.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "solvstate/errors.hpp"
#include "solvstate/json_io.hpp"
#include "solvstate/measures.hpp"
#include "solvstate/poschl_teller.hpp"
#include "solvstate/states.hpp"
#include "solvstate/verify.hpp"

namespace {

using namespace solvstate;
using io::fmt;
using io::json;
using io::number;

constexpr int kDomain = 2;
constexpr int kConvergence = 3;
constexpr int kAssertion = 4;
constexpr const char* kVersion = "1.0.0";

struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string output;
  std::string config;
  std::string spectrum;
  double lambda = 4.0;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double kappa_prime = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.0;
  std::size_t k = 0;
  std::size_t max_n = 0;
  double tail_tol = 1e-30;
  double tolerance = std::numeric_limits<double>::quiet_NaN();  ///< assertion threshold override
  bool paper_literal = false;
};

/// Parses "re", "imi", "re+imi" or "re-imi".
Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto to_double = [&](const std::string& part, bool imaginary) {
    if (imaginary && (part.empty() || part == "+")) return 1.0;
    if (imaginary && part == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size()) throw DomainError("cannot parse complex number '" + text + "'");
    return v;
  };
  if (s.empty()) throw DomainError("empty complex number");
  if (s.back() != 'i') return {to_double(s, false), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  if (split == std::string::npos) return {0.0, to_double(s, true)};
  return {to_double(s.substr(0, split), false), to_double(s.substr(split), true)};
}

std::string show_complex(Complex z, int digits) {
  std::string s = fmt(z.real(), digits);
  s += z.imag() < 0 ? "-" : "+";
  return s + fmt(std::fabs(z.imag()), digits) + "i";
}

json read_json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return json::parse(text);
  std::ifstream in(text);
  if (!in) throw DomainError("cannot open '" + text + "'");
  return json::parse(in);
}

void apply_config(Options& o, const CLI::App& app) {
  if (o.config.empty()) return;
  const json j = read_json_arg(o.config);
  auto unset = [&](const char* flag) { return app.count(flag) == 0; };
  if (j.contains("spectrum") && unset("--spectrum"))
    o.spectrum = j["spectrum"].is_string() ? j["spectrum"].get<std::string>() : j["spectrum"].dump();
  if (j.contains("lambda") && unset("--lambda")) o.lambda = j["lambda"].get<double>();
  if (j.contains("kappa") && unset("--kappa")) o.kappa = j["kappa"].get<double>();
  if (j.contains("kappa_prime") && unset("--kappa-prime")) o.kappa_prime = j["kappa_prime"].get<double>();
  if (j.contains("alpha") && unset("--alpha")) o.alpha = j["alpha"].get<double>();
  if (j.contains("k") && unset("--k")) o.k = j["k"].get<std::size_t>();
  if (j.contains("max_n") && unset("--max-n") && !std::getenv("SOLVSTATE_MAX_N")) o.max_n = j["max_n"].get<std::size_t>();
  if (j.contains("tail_tol") && unset("--tail-tol")) o.tail_tol = j["tail_tol"].get<double>();
  if (j.contains("tolerance") && unset("--tolerance")) o.tolerance = j["tolerance"].get<double>();
  if (j.contains("format") && unset("--format")) o.format = j["format"].get<std::string>();
  if (j.contains("output") && unset("--output")) o.output = j["output"].get<std::string>();
}

void validate(const Options& o) {
  if (o.format != "json" && o.format != "csv" && o.format != "text")
    throw DomainError("format must be json, csv or text");
  if (!(o.tail_tol > 0.0)) throw DomainError("tail tolerance must be positive");
  if (!std::isnan(o.tolerance) && !(o.tolerance > 0.0)) throw DomainError("tolerance must be positive");
}

Spectrum make_spectrum(const Options& o) {
  if (!o.spectrum.empty()) return io::spectrum_from_json(read_json_arg(o.spectrum));
  if (!std::isnan(o.kappa) || !std::isnan(o.kappa_prime)) {
    const double k1 = std::isnan(o.kappa) ? o.lambda - o.kappa_prime : o.kappa;
    const double k2 = std::isnan(o.kappa_prime) ? o.lambda - o.kappa : o.kappa_prime;
    return Spectrum::poschl_teller(k1, k2);
  }
  return Spectrum::poschl_teller_lambda(o.lambda);
}

TruncationOptions truncation(const Options& o) {
  TruncationOptions t;
  t.tail_tol = o.tail_tol;
  if (o.max_n > 1) t.max_dim = o.max_n;
  return t;
}

json meta(const std::string& command, const Options& o, const Spectrum& spec) {
  json m{{"program", "solvstate"}, {"version", kVersion}, {"command", command}, {"alpha", number(o.alpha)}, {"k", o.k},
         {"tail_tol", number(o.tail_tol)}, {"max_n", truncation(o).max_dim}};
  try {
    m["spectrum"] = io::to_json(spec);
  } catch (const DomainError&) {
    m["spectrum"] = spec.name();
  }
  if (o.paper_literal) m["paper_literal"] = true;
  return m;
}

std::string text_meta(const json& m) {
  std::ostringstream os;
  os << "# solvstate " << m["version"].get<std::string>() << "  " << m["command"].get<std::string>() << '\n';
  os << "# spectrum " << m["spectrum"].dump() << "  alpha " << m["alpha"].dump() << "  k " << m["k"].dump() << '\n';
  return os.str();
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_json(Sink& sink, const json& j) { sink.os() << j.dump(2) << '\n'; }

bool is_pt(const Spectrum& s) { return s.kind() == Spectrum::Kind::PoschlTeller; }

// -----------------------------------------------------------------------------

struct Label {
  std::string z, xi;
};

FockState build_state(const std::string& family, const Label& lab, const Options& o, const Spectrum& spec,
                      Complex& label_value) {
  const TruncationOptions t = truncation(o);
  if (family == "gk") {
    if (lab.z.empty()) throw DomainError("state gk needs --z");
    label_value = parse_complex(lab.z);
    return gk_state(spec, GKLabel{label_value, o.alpha, o.k}, t);
  }
  if (family != "kp") throw DomainError("family must be gk or kp");
  if (!lab.xi.empty()) {
    if (!is_pt(spec)) throw DomainError("--xi needs a Poschl-Teller spectrum; use --z for general spectra");
    label_value = parse_complex(lab.xi);
    return kp_state_pt(spec.lambda(), KPLabel{label_value, o.alpha, o.k}, t,
                       o.paper_literal ? KpExponent::DoubledLambda : KpExponent::Corrected);
  }
  if (lab.z.empty()) throw DomainError("state kp needs --xi or --z");
  label_value = parse_complex(lab.z);
  if (is_pt(spec))
    return kp_state_pt(spec.lambda(), KPLabel{xi_from_z(label_value), o.alpha, o.k}, t,
                       o.paper_literal ? KpExponent::DoubledLambda : KpExponent::Corrected);
  return kp_state_general(spec, label_value, o.alpha, o.k, t);
}

int cmd_state(const std::string& family, const Label& lab, bool check_eigen, const Options& o) {
  const Spectrum spec = make_spectrum(o);
  Complex label{};
  const FockState st = build_state(family, lab, o, spec, label);
  const PhotonStatistics ps = photon_statistics(st, spec);
  std::optional<double> residual;
  if (check_eigen) {
    if (family != "gk") throw DomainError("--check-eigen applies to gk states");
    residual = eigen_residual(spec, st, label);
  }

  Sink sink(o.output);
  const json m = meta("state " + family, o, spec);
  const std::size_t head = std::min<std::size_t>(10, ps.distribution.size());
  if (o.format == "json") {
    json dist = json::array();
    for (std::size_t i = 0; i < head; ++i) dist.push_back({ps.distribution[i].first, number(ps.distribution[i].second)});
    json summary{{"norm", number(std::sqrt(st.norm_squared()))},
                 {"tail_bound", number(st.tail_bound)},
                 {"mean_energy", number(ps.mean_energy)},
                 {"mean_level", number(ps.mean_level)},
                 {"levels", st.size()},
                 {"converged", st.converged},
                 {"distribution_head", dist}};
    if (residual) summary["eigen_residual"] = number(*residual);
    print_json(sink, {{"meta", m}, {"state", io::to_json(st)}, {"summary", summary}});
  } else if (o.format == "csv") {
    auto& os = sink.os();
    os << io::csv_row({"level", "re", "im", "probability"});
    for (std::size_t i = 0; i < st.size(); ++i)
      os << io::csv_row({std::to_string(st.offset + i), fmt(st.coefficients[i].real(), 15),
                         fmt(st.coefficients[i].imag(), 15), fmt(std::norm(st.coefficients[i]), 15)});
  } else {
    auto& os = sink.os();
    os << text_meta(m);
    os << "label        " << show_complex(label, 6) << '\n';
    os << "norm         " << fmt(std::sqrt(st.norm_squared()), 6) << '\n';
    os << "tail_bound   " << fmt(st.tail_bound, 6) << '\n';
    os << "<H>          " << fmt(ps.mean_energy, 6) << '\n';
    os << "<level>      " << fmt(ps.mean_level, 6) << '\n';
    os << "levels       " << st.offset << ".." << st.extent() - 1 << '\n';
    os << "converged    " << (st.converged ? "yes" : "no") << '\n';
    if (residual) os << "eigen_resid  " << fmt(*residual, 6) << '\n';
    os << "level  probability\n";
    for (std::size_t i = 0; i < head; ++i)
      os << std::to_string(ps.distribution[i].first) << "  " << fmt(ps.distribution[i].second, 6) << '\n';
  }
  if (!st.converged) {
    std::cerr << "solvstate: truncation did not reach the tail tolerance (tail_bound " << fmt(st.tail_bound, 6)
              << "); raise --max-n or SOLVSTATE_MAX_N\n";
    return kConvergence;
  }
  return 0;
}

int cmd_overlap(const std::string& family, const Label& l1, const Label& l2, double alpha2, bool alpha2_set,
                const Options& o) {
  const Spectrum spec = make_spectrum(o);
  const double a2 = alpha2_set ? alpha2 : o.alpha;
  std::optional<Complex> closed;
  Complex series{};
  bool converged = true;
  Complex v1{}, v2{};
  if (family == "gk") {
    if (l1.z.empty() || l2.z.empty()) throw DomainError("overlap gk needs --z1 and --z2");
    v1 = parse_complex(l1.z);
    v2 = parse_complex(l2.z);
    const GKLabel a{v1, o.alpha, o.k}, b{v2, a2, o.k};
    const auto s = gk_overlap(spec, a, b);
    series = s.value;
    converged = s.converged;
    if (is_pt(spec) && a.alpha == b.alpha) closed = gk_overlap_closed_pt(spec.lambda(), a, b).value;
  } else if (family == "kp") {
    if (!is_pt(spec)) throw DomainError("overlap kp needs a Poschl-Teller spectrum");
    auto xi_of = [](const Label& l) {
      if (!l.xi.empty()) return parse_complex(l.xi);
      if (!l.z.empty()) return xi_from_z(parse_complex(l.z));
      throw DomainError("overlap kp needs --xi1/--xi2 or --z1/--z2");
    };
    v1 = xi_of(l1);
    v2 = xi_of(l2);
    const KPLabel a{v1, o.alpha, o.k}, b{v2, a2, o.k};
    const auto s = kp_overlap_pt(spec.lambda(), a, b);
    series = s.value;
    converged = s.converged;
    // Inner product of the two truncated states serves as the second route.
    closed = inner_product(kp_state_pt(spec.lambda(), a, truncation(o)), kp_state_pt(spec.lambda(), b, truncation(o)));
  } else {
    throw DomainError("family must be gk or kp");
  }

  Sink sink(o.output);
  const json m = meta("overlap " + family, o, spec);
  const double diff = closed ? std::abs(*closed - series) : std::numeric_limits<double>::quiet_NaN();
  if (o.format == "json") {
    json j{{"meta", m},
           {"series", {number(series.real()), number(series.imag())}},
           {"abs", number(std::abs(series))},
           {"converged", converged}};
    if (closed) {
      j["closed"] = {number(closed->real()), number(closed->imag())};
      j["difference"] = number(diff);
    }
    print_json(sink, j);
  } else if (o.format == "csv") {
    auto& os = sink.os();
    os << io::csv_row({"series_re", "series_im", "closed_re", "closed_im", "difference"});
    os << io::csv_row({fmt(series.real(), 15), fmt(series.imag(), 15), closed ? fmt(closed->real(), 15) : "",
                       closed ? fmt(closed->imag(), 15) : "", closed ? fmt(diff, 15) : ""});
  } else {
    auto& os = sink.os();
    os << text_meta(m);
    os << "labels      " << show_complex(v1, 6) << " , " << show_complex(v2, 6) << '\n';
    os << "series      " << show_complex(series, 6) << "   |.| = " << fmt(std::abs(series), 6) << '\n';
    if (closed) {
      os << (family == "gk" ? "closed 2F3  " : "states      ") << show_complex(*closed, 6) << '\n';
      os << "difference  " << fmt(diff, 6) << '\n';
    }
  }
  return converged ? 0 : kConvergence;
}

int cmd_evolve(const std::string& family, const Label& lab, const std::vector<double>& times, double t_max,
               std::size_t steps, const Options& o) {
  const Spectrum spec = make_spectrum(o);
  Complex label{};
  const FockState st = build_state(family, lab, o, spec, label);
  std::vector<double> ts = times;
  if (ts.empty()) {
    if (steps < 1) throw DomainError("--steps must be at least 1");
    for (std::size_t i = 0; i <= steps; ++i) ts.push_back(t_max * static_cast<double>(i) / static_cast<double>(steps));
  }

  struct Row {
    double t, norm, level, energy, deviation;
    Complex autocorr;
  };
  std::vector<Row> rows;
  double worst = 0.0;
  for (double t : ts) {
    const FockState ev = evolve(st, spec, t);
    Options shifted = o;
    shifted.alpha = o.alpha + t;
    Complex dummy{};
    const FockState ref = build_state(family, lab, shifted, spec, dummy);
    const PhotonStatistics ps = photon_statistics(ev, spec);
    const double dev = max_coefficient_deviation(ev, ref);
    worst = std::max(worst, dev);
    rows.push_back({t, std::sqrt(ev.norm_squared()), ps.mean_level, ps.mean_energy, dev, inner_product(st, ev)});
  }

  Sink sink(o.output);
  const json m = meta("evolve " + family, o, spec);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"t", number(r.t)},
                     {"norm", number(r.norm)},
                     {"mean_level", number(r.level)},
                     {"mean_energy", number(r.energy)},
                     {"deviation", number(r.deviation)},
                     {"autocorrelation", {number(r.autocorr.real()), number(r.autocorr.imag())}}});
    print_json(sink, {{"meta", m}, {"rows", arr}, {"max_deviation", number(worst)}});
  } else {
    const bool csv = o.format == "csv";
    auto& os = sink.os();
    const int d = csv ? 15 : 6;
    if (!csv) os << text_meta(m);
    const std::vector<std::string> head{"t", "norm", "mean_level", "mean_energy", "deviation", "autocorr_re", "autocorr_im"};
    if (csv) {
      os << io::csv_row(head);
    } else {
      for (const auto& h : head) os << std::setw(14) << h;
      os << '\n';
    }
    for (const auto& r : rows) {
      std::vector<std::string> f{fmt(r.t, d),         fmt(r.norm, d),           fmt(r.level, d),         fmt(r.energy, d),
                                 fmt(r.deviation, d), fmt(r.autocorr.real(), d), fmt(r.autocorr.imag(), d)};
      if (csv) {
        os << io::csv_row(f);
      } else {
        for (const auto& s : f) os << std::setw(14) << s;
        os << '\n';
      }
    }
  }
  return 0;
}

void emit_reports(Sink& sink, const std::vector<MomentReport>& reps, const json& m, const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(io::to_json(r));
    print_json(sink, {{"meta", m}, {"reports", arr}});
  } else if (format == "csv") {
    auto& os = sink.os();
    os << io::csv_row({"report", "candidate", "power", "n", "target", "computed", "rel_residual", "quad_error", "analytic",
                       "analytic_deviation", "ratio", "verdict", "note"});
    for (const auto& r : reps)
      for (const auto& row : r.rows)
        os << io::csv_row({r.title, r.candidate, r.power_label, std::to_string(row.n), fmt(row.target.value(), 15),
                           fmt(row.computed.value(), 15), fmt(row.rel_residual, 15), fmt(row.quad_error, 15),
                           row.analytic ? fmt(row.analytic->value(), 15) : "",
                           row.analytic ? fmt(row.analytic_deviation, 15) : "", fmt(row.ratio, 15),
                           to_string(row.verdict), row.note});
  } else {
    sink.os() << text_meta(m);
    for (const auto& r : reps) sink.os() << '\n' << io::to_text(r);
  }
}

int cmd_moments(const std::string& kind, const std::string& reading, std::size_t n_max, const Options& o) {
  const double lam = o.lambda;
  std::vector<MomentReport> reps;
  const double tol = std::isnan(o.tolerance) ? 1e-12 : o.tolerance;
  QuadratureSettings qs;
  if (!std::isnan(o.tolerance)) qs.tolerance = o.tolerance;
  if (kind == "mellin") {
    reps.push_back(mellin_gamma_check_pt(lam, o.k, n_max, tol));
  } else if (kind == "identity") {
    reps.push_back(gk_measure_selfconsistency(lam, o.k, n_max, tol));
  } else if (kind == "disk") {
    std::vector<WeightCandidate> cands;
    const std::string r = o.paper_literal && reading == "corrected" ? "candidates" : reading;
    if (r == "k0") cands.push_back(kp_weight_k0(lam));
    if (r == "elementary" || r == "candidates" || r == "all") cands.push_back(kp_weight_candidate(lam, o.k, KpReading::Elementary));
    if (r == "third" || r == "candidates" || r == "all") cands.push_back(kp_weight_candidate(lam, o.k, KpReading::ThirdParameter));
    if (r == "corrected" || r == "all") {
      WeightCandidate w = kp_weight_candidate(lam, o.k, KpReading::ThirdParameter);
      w.ansatz_factor = lam + 2.0 * static_cast<double>(o.k);
      w.name = "third-parameter reading x (lambda+2k)";
      cands.push_back(w);
    }
    if (cands.empty()) throw DomainError("--reading must be corrected, k0, elementary, third, candidates or all");
    for (const auto& w : cands)
      for (auto& rep : kp_moment_residuals(lam, o.k, w, n_max, qs)) reps.push_back(std::move(rep));
  } else if (kind == "errata") {
    reps = kp_errata_study(lam, o.k, n_max, qs);
  } else {
    throw DomainError("moments kind must be mellin, identity, disk or errata");
  }
  Sink sink(o.output);
  emit_reports(sink, reps, meta("moments " + kind, o, Spectrum::poschl_teller_lambda(lam)), o.format);
  if (kind == "mellin" || kind == "identity")
    for (const auto& r : reps)
      if (!r.all_pass()) throw AssertionFailure("moment identity failed");
  for (const auto& r : reps)
    if (!r.quadrature_consistent) throw AssertionFailure("quadrature disagrees with exact moments");
  return 0;
}

int cmd_pt(const std::string& what, std::size_t n, std::size_t points, std::size_t n_max, bool check, double a,
           const Options& o) {
  pt::PTParams p;
  p.kappa = std::isnan(o.kappa) ? (std::isnan(o.kappa_prime) ? o.lambda / 2.0 : o.lambda - o.kappa_prime) : o.kappa;
  p.kappa_prime = std::isnan(o.kappa_prime) ? o.lambda - p.kappa : o.kappa_prime;
  p.a = a;
  p.validate();
  const json m{{"program", "solvstate"}, {"version", kVersion}, {"command", "pt " + what},
               {"kappa", number(p.kappa)}, {"kappa_prime", number(p.kappa_prime)}, {"a", number(p.a)}};
  Sink sink(o.output);
  auto& os = sink.os();

  if (what == "psi" || what == "partner" || what == "potential") {
    if (points < 2) throw DomainError("--points must be at least 2");
    const double L = p.length();
    const bool open = what == "potential";
    std::vector<std::pair<double, double>> data;
    for (std::size_t i = 0; i < points; ++i) {
      double x = L * static_cast<double>(i) / static_cast<double>(points - 1);
      if (open) x = L * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
      const double v = what == "psi"       ? pt::eigenfunction(p, n, x)
                       : what == "partner" ? pt::partner_eigenfunction(p, n, x)
                                           : pt::potential(p, x);
      data.emplace_back(x, v);
    }
    if (o.format == "json") {
      json xs = json::array(), vs = json::array();
      for (auto [x, v] : data) {
        xs.push_back(number(x));
        vs.push_back(number(v));
      }
      print_json(sink, {{"meta", m}, {"n", n}, {"x", xs}, {"value", vs}});
    } else {
      const int d = o.format == "csv" ? 15 : 6;
      os << io::csv_row({"x", "value"});
      for (auto [x, v] : data) os << io::csv_row({fmt(x, d), fmt(v, d)});
    }
    return 0;
  }
  if (what != "u") throw DomainError("pt output must be psi, partner, potential or u");

  std::vector<std::vector<pt::UElement>> u(n_max + 1);
  double worst = 0.0;
  for (std::size_t i = 0; i <= n_max; ++i)
    for (std::size_t j = 0; j <= n_max; ++j) {
      u[i].push_back(pt::u_matrix_element(p, i, j));
      if (check && !u[i][j].flagged)
        worst = std::max(worst, std::fabs(u[i][j].value - pt::u_matrix_element_quadrature(p, i, j)));
    }
  if (o.format == "json") {
    json mat = json::array(), cond = json::array(), flagged = json::array();
    for (std::size_t i = 0; i <= n_max; ++i) {
      json row = json::array(), crow = json::array();
      for (std::size_t j = 0; j <= n_max; ++j) {
        row.push_back(number(u[i][j].value));
        crow.push_back(number(u[i][j].condition));
        if (u[i][j].flagged) flagged.push_back({i, j});
      }
      mat.push_back(row);
      cond.push_back(crow);
    }
    json j{{"meta", m}, {"n_max", n_max}, {"matrix", mat}, {"condition", cond}, {"flagged", flagged}};
    if (check) j["max_quadrature_deviation"] = number(worst);
    print_json(sink, j);
  } else {
    const int d = o.format == "csv" ? 15 : 6;
    os << io::csv_row({"n", "m", "value", "condition", "flagged"});
    for (std::size_t i = 0; i <= n_max; ++i)
      for (std::size_t j = 0; j <= n_max; ++j)
        os << io::csv_row({std::to_string(i), std::to_string(j), fmt(u[i][j].value, d), fmt(u[i][j].condition, d),
                           u[i][j].flagged ? "1" : "0"});
    if (check && o.format == "text") os << "# max |sum - quadrature| = " << fmt(worst, 6) << '\n';
  }
  if (check && worst > (std::isnan(o.tolerance) ? 1e-8 : o.tolerance))
    throw AssertionFailure("U double sum disagrees with quadrature");
  return 0;
}

int cmd_verify(const std::string& suite, bool app_k_set, const Options& o) {
  verify::Config cfg;
  cfg.lambda = o.lambda;
  if (app_k_set) cfg.k = o.k;
  if (o.alpha != 0.0) cfg.alpha = o.alpha;
  const verify::Report rep = verify::run(suite, cfg);

  Sink sink(o.output);
  const json m{{"program", "solvstate"}, {"version", kVersion}, {"command", "verify " + suite},
               {"lambda", number(cfg.lambda)}, {"k", cfg.k}, {"alpha", number(cfg.alpha)},
               {"seconds", number(rep.seconds)}};
  if (o.format == "json") {
    json checks = json::array(), errata = json::array(), failures = json::array(), reports = json::array();
    for (const auto& c : rep.checks) {
      json jc{{"suite", c.suite}, {"name", c.name}, {"value", number(c.value)}, {"tolerance", number(c.tolerance)},
              {"passed", c.passed}};
      if (!c.detail.empty()) jc["detail"] = c.detail;
      (c.informational ? errata : checks).push_back(jc);
      if (!c.passed && !c.informational) failures.push_back(jc);
    }
    for (const auto& r : rep.reports) reports.push_back(io::to_json(r));
    json tables = json::array();
    for (const auto& r : rep.errata) tables.push_back(io::to_json(r));
    print_json(sink, {{"meta", m},
                      {"passed", rep.passed()},
                      {"assertions", rep.assertion_count()},
                      {"failures", failures},
                      {"checks", checks},
                      {"reports", reports},
                      {"errata", {{"findings", errata}, {"tables", tables}}}});
  } else if (o.format == "csv") {
    auto& os = sink.os();
    os << io::csv_row({"suite", "check", "value", "tolerance", "status", "detail"});
    for (const auto& c : rep.checks)
      os << io::csv_row({c.suite, c.name, fmt(c.value, 15), fmt(c.tolerance, 15),
                         c.informational ? "errata" : (c.passed ? "pass" : "FAIL"), c.detail});
  } else {
    auto& os = sink.os();
    os << "# solvstate " << kVersion << "  verify " << suite << "  lambda " << fmt(cfg.lambda, 6) << "  k " << cfg.k
       << '\n';
    for (const auto& c : rep.checks) {
      if (c.informational) continue;
      os << (c.passed ? "[pass] " : "[FAIL] ") << c.suite << ": " << c.name << "  (" << fmt(c.value, 6) << " vs "
         << fmt(c.tolerance, 6) << ")";
      if (!c.detail.empty()) os << "  " << c.detail;
      os << '\n';
    }
    bool header = false;
    for (const auto& c : rep.checks) {
      if (!c.informational) continue;
      if (!header) os << "\nerrata\n";
      header = true;
      os << "  " << c.suite << ": " << c.name << " = " << fmt(c.value, 6) << "\n      " << c.detail << '\n';
    }
    for (const auto& r : rep.errata) os << '\n' << io::to_text(r);
    os << '\n'
       << (rep.passed() ? "all " : "FAILED: ") << rep.failures().size() << " failures in " << rep.assertion_count()
       << " assertions, " << fmt(rep.seconds, 3) << " s\n";
  }
  if (!rep.passed()) {
    for (const auto& f : rep.failures()) std::cerr << "FAIL " << f.suite << ": " << f.name << '\n';
    return kAssertion;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvstate: photon-added coherent states of exactly solvable Hamiltonians"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--format", o.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", o.output, "write to file instead of stdout");
  app.add_option("--config", o.config, "JSON run configuration (file path or inline object)");
  app.add_option("--spectrum", o.spectrum, "spectrum JSON (file path or inline object)");
  app.add_option("--lambda", o.lambda, "Poschl-Teller lambda = kappa + kappa'");
  app.add_option("--kappa", o.kappa, "Poschl-Teller kappa");
  app.add_option("--kappa-prime", o.kappa_prime, "Poschl-Teller kappa'");
  app.add_option("--alpha", o.alpha, "time-phase label alpha");
  app.add_option("--k", o.k, "number of added excitations");
  app.add_option("--max-n", o.max_n, "truncation cap (overrides SOLVSTATE_MAX_N)");
  app.add_option("--tail-tol", o.tail_tol, "squared-norm mass allowed beyond the truncation");
  app.add_option("--tolerance", o.tolerance, "override the assertion threshold of moments and pt u --check");
  app.add_flag("--paper-literal", o.paper_literal, "use the doubled-lambda Gamma factor and the uncorrected disk weights");

  std::string family = "gk";
  Label lab, lab2;
  bool check_eigen = false;
  auto* state = app.add_subcommand("state", "build a coherent state");
  state->add_option("family", family, "gk | kp")->required();
  state->add_option("--z", lab.z, "label z (gk) or displacement Z (kp), re+imi");
  state->add_option("--xi", lab.xi, "unit-disk label xi (kp)");
  state->add_flag("--check-eigen", check_eigen, "report || a-|z> - z|z> ||");

  double alpha2 = 0.0;
  auto* overlap = app.add_subcommand("overlap", "kernel <label1|label2>");
  overlap->add_option("family", family, "gk | kp")->required();
  overlap->add_option("--z1", lab.z);
  overlap->add_option("--z2", lab2.z);
  overlap->add_option("--xi1", lab.xi);
  overlap->add_option("--xi2", lab2.xi);
  auto* alpha2_opt = overlap->add_option("--alpha2", alpha2, "alpha of the second label (default: --alpha)");

  std::vector<double> times;
  double t_max = 2.0 * M_PI;
  std::size_t steps = 10;
  auto* evolve_cmd = app.add_subcommand("evolve", "time evolution table");
  evolve_cmd->add_option("family", family, "gk | kp")->required();
  evolve_cmd->add_option("--z", lab.z);
  evolve_cmd->add_option("--xi", lab.xi);
  evolve_cmd->add_option("--times", times, "explicit times")->delimiter(',');
  evolve_cmd->add_option("--t-max", t_max);
  evolve_cmd->add_option("--steps", steps);

  std::string kind = "mellin", reading = "corrected";
  std::size_t n_max = 12;
  auto* moments = app.add_subcommand("moments", "moment-problem reports");
  moments->add_option("kind", kind, "mellin | identity | disk | errata")->required();
  moments->add_option("--reading", reading, "disk weight: corrected | k0 | elementary | third | candidates | all");
  moments->add_option("--n-max", n_max);

  std::string what = "psi";
  std::size_t level = 0, points = 101, u_max = 6;
  bool u_check = false;
  double a = 1.0;
  auto* ptc = app.add_subcommand("pt", "Poschl-Teller position space");
  ptc->add_option("what", what, "psi | partner | potential | u")->required();
  ptc->add_option("--n", level, "level");
  ptc->add_option("--points", points);
  ptc->add_option("--n-max", u_max, "largest U index");
  ptc->add_option("--a", a, "length scale");
  ptc->add_flag("--check", u_check, "compare U against quadrature");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("--suite", suite, "ladder | gk | kp | measures | pt | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kDomain;
  }

  try {
    apply_config(o, app);
    validate(o);
    if (*state) return cmd_state(family, lab, check_eigen, o);
    if (*overlap) return cmd_overlap(family, lab, lab2, alpha2, alpha2_opt->count() > 0, o);
    if (*evolve_cmd) return cmd_evolve(family, lab, times, t_max, steps, o);
    if (*moments) return cmd_moments(kind, reading, n_max, o);
    if (*ptc) return cmd_pt(what, level, points, u_max, u_check, a, o);
    if (*verify_cmd) return cmd_verify(suite, app.count("--k") > 0 || o.k != 0, o);
  } catch (const AssertionFailure& e) {
    std::cerr << "solvstate: assertion failed: " << e.what() << '\n';
    return kAssertion;
  } catch (const ConvergenceError& e) {
    std::cerr << "solvstate: " << e.what() << '\n';
    return kConvergence;
  } catch (const DomainError& e) {
    std::cerr << "solvstate: " << e.what() << '\n';
    return kDomain;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "solvstate: invalid JSON: " << e.what() << '\n';
    return kDomain;
  } catch (const DimensionError& e) {
    std::cerr << "solvstate: " << e.what() << '\n';
    return kDomain;
  }
  return 0;
}
