#include "solvstate/measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

#include "solvstate/errors.hpp"
#include "solvstate/states.hpp"

namespace solvstate {

namespace {

using specfun::log_beta;
using specfun::log_gamma;
using specfun::log_pochhammer;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// |a/b - 1| for log-domain values, inf when the signs differ.
double rel_dev(LogReal a, LogReal b) {
  if (a.sign != b.sign) return a.is_zero() && b.is_zero() ? 0.0 : kInf;
  if (a.is_zero()) return 0.0;
  return log_rel_diff(a.log_abs, b.log_abs);
}

void fill_residuals(MomentRow& row) {
  const double t = row.target.value(), c = row.computed.value();
  row.abs_residual = std::fabs(c - t);
  row.rel_residual = rel_dev(row.computed, row.target);
  if (row.computed.sign == row.target.sign && !row.target.is_zero())
    row.ratio = std::exp(row.computed.log_abs - row.target.log_abs);
  else
    row.ratio = row.target.is_zero() ? kInf : c / t;
}

}  // namespace

double WeightCandidate::operator()(double r) const {
  if (!evaluable()) throw DomainError("weight '" + name + "' has no pointwise evaluator");
  double v = ansatz_factor * smooth(r);
  if (left_exponent != 0.0) v *= std::pow(r, left_exponent);
  if (right_exponent != 0.0 && std::isfinite(support)) v *= std::pow(support - r, right_exponent);
  return v;
}

WeightCandidate gk_meijer_g_weight(double lambda, std::size_t k) {
  if (!(lambda > 0.0)) throw DomainError("gk_meijer_g_weight: lambda must be positive");
  WeightCandidate w;
  w.id = WeightId::GkMeijerGMellinOnly;
  w.name = "meijer-g (mellin only)";
  w.support = kInf;
  w.analytic = [lambda, k](double p) -> std::optional<LogReal> {
    if (!(p > -1.0)) return std::nullopt;
    const double kd = static_cast<double>(k);
    const double a[] = {kd, lambda + kd};
    const double b[] = {0.0, 0.0, lambda, lambda};
    const double pre = std::lgamma(lambda + kd + 1.0) - 2.0 * std::lgamma(lambda + 1.0);
    return LogReal::from_log(pre + specfun::log_meijer_g_mellin(a, b, p + 1.0));
  };
  return w;
}

WeightCandidate kp_weight_k0(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("kp_weight_k0: lambda must be positive");
  WeightCandidate w;
  w.id = WeightId::KpK0;
  w.name = "k=0 weight";
  w.right_exponent = lambda - 1.0;
  const double c = std::exp(-std::lgamma(lambda + 1.0));
  w.smooth = [c](double) { return c; };
  w.analytic = [lambda](double p) -> std::optional<LogReal> {
    if (!(p > -1.0)) return std::nullopt;
    return LogReal::from_log(log_beta(p + 1.0, lambda) - std::lgamma(lambda + 1.0));
  };
  return w;
}

WeightCandidate kp_weight_candidate(double lambda, std::size_t k, KpReading reading) {
  if (!(lambda > 0.0)) throw DomainError("kp_weight_candidate: lambda must be positive");
  const double kd = static_cast<double>(k);
  const double c = lambda + 2.0 * kd;
  WeightCandidate w;
  w.id = WeightId::KpCandidate;
  w.reading = reading;
  w.right_exponent = c - 1.0;
  const double norm = std::exp(-std::lgamma(c + 1.0));
  if (reading == KpReading::Elementary) {
    w.name = "candidate weight, elementary reading";
    w.left_exponent = -kd;
    w.smooth = [norm](double) { return norm; };
    w.analytic = [kd, c](double p) -> std::optional<LogReal> {
      if (!(p - kd + 1.0 > 0.0)) return std::nullopt;
      return LogReal::from_log(log_beta(p - kd + 1.0, c) - std::lgamma(c + 1.0));
    };
  } else {
    w.name = "candidate weight, third-parameter reading";
    w.smooth = [norm, kd, lambda, c](double r) {
      return norm * specfun::hyp2f1_complement(kd, lambda + kd, c, r);
    };
    // int_0^1 r^p (1-r)^{c-1} 2F1(k, lambda+k; c; 1-r) dr / Gamma(c+1)
    //   = Gamma(p+1)^2 / (c Gamma(p+lambda+k+1) Gamma(p+k+1))
    w.analytic = [kd, lambda, c](double p) -> std::optional<LogReal> {
      if (!(p > -1.0)) return std::nullopt;
      return LogReal::from_log(2.0 * std::lgamma(p + 1.0) - std::log(c) - std::lgamma(p + lambda + kd + 1.0) -
                               std::lgamma(p + kd + 1.0));
    };
    if (k > 0) w.breakpoints = {1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.5};
  }
  return w;
}

WeightCandidate custom_weight(std::string name, std::function<double(double)> h, double support,
                              std::function<std::optional<LogReal>(double)> analytic) {
  if (!(support > 0.0)) throw DomainError("custom_weight: support must be positive");
  WeightCandidate w;
  w.id = WeightId::Custom;
  w.name = std::move(name);
  w.support = support;
  w.smooth = std::move(h);
  w.analytic = std::move(analytic);
  return w;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(KpReading r) {
  return r == KpReading::Elementary ? "elementary" : "third-parameter";
}

bool MomentReport::all_pass() const {
  for (const auto& r : rows)
    if (r.verdict != Verdict::Pass) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::size_t MomentReport::count(Verdict v) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [v](const auto& r) { return r.verdict == v; }));
}

// -----------------------------------------------------------------------------

LogReal gk_moment_target(const Spectrum& spec, std::size_t k, std::size_t n) { return ek_moment(spec, k, n); }

LogReal pt_gk_moment_rhs(double lambda, std::size_t k, std::size_t n) {
  if (!(lambda > 0.0)) throw DomainError("pt_gk_moment_rhs: lambda must be positive");
  const double kd = static_cast<double>(k);
  return LogReal::from_log(2.0 * specfun::log_factorial(n) + 2.0 * log_pochhammer(lambda + 1.0, n) -
                           specfun::log_factorial(n + k) - log_pochhammer(lambda + kd + 1.0, n));
}

LogReal pt_gk_mellin_moment(double lambda, std::size_t k, std::size_t n) {
  auto v = gk_meijer_g_weight(lambda, k).analytic(static_cast<double>(n));
  return *v;
}

MomentReport mellin_gamma_check_pt(double lambda, std::size_t k, std::size_t n_max, double tolerance) {
  if (!(lambda > 0.0)) throw DomainError("mellin_gamma_check_pt: lambda must be positive");
  MomentReport rep;
  rep.title = "Mellin transform of the Meijer-G weight vs radial moments";
  rep.candidate = "meijer-g (mellin only)";
  rep.power_label = "r^n";
  rep.tolerance = tolerance;
  for (std::size_t n = 0; n <= n_max; ++n) {
    MomentRow row;
    row.n = n;
    row.power = static_cast<double>(n);
    row.target = pt_gk_moment_rhs(lambda, k, n);
    row.computed = pt_gk_mellin_moment(lambda, k, n);
    fill_residuals(row);
    row.verdict = row.rel_residual <= tolerance ? Verdict::Pass : Verdict::Fail;
    rep.rows.push_back(row);
  }
  return rep;
}

LogReal kp_moment_target(double lambda, std::size_t k, std::size_t n) {
  if (!(lambda > 0.0)) throw DomainError("kp_moment_target: lambda must be positive");
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  return LogReal::from_log(2.0 * std::lgamma(nd + 1.0) - std::lgamma(nd + kd + 1.0) - std::lgamma(nd + lambda + kd + 1.0));
}

MomentReport moment_residuals(const WeightCandidate& candidate, const std::vector<std::size_t>& ns,
                              const std::function<double(std::size_t)>& power,
                              const std::function<LogReal(std::size_t)>& target, const QuadratureSettings& qs,
                              std::string title, std::string power_label) {
  MomentReport rep;
  rep.title = std::move(title);
  rep.candidate = candidate.name;
  rep.power_label = std::move(power_label);
  rep.tolerance = qs.tolerance;
  rep.analytic_tolerance = qs.analytic_tolerance;

  for (std::size_t n : ns) {
    MomentRow row;
    row.n = n;
    row.power = power(n);
    row.target = target(n);
    if (candidate.analytic) {
      row.analytic = candidate.analytic(row.power);
      if (row.analytic && candidate.ansatz_factor != 1.0)
        row.analytic = *row.analytic * LogReal::from_value(candidate.ansatz_factor);
    }

    const double left = candidate.left_exponent + row.power;
    bool have_value = false;
    if (!candidate.evaluable()) {
      if (row.analytic) {
        row.computed = *row.analytic;
        have_value = true;
        row.note = "analytic only";
      } else {
        row.note = "no evaluator";
      }
    } else if (!std::isfinite(candidate.support)) {
      row.note = "unbounded support";
    } else if (!(left > -1.0)) {
      row.note = "divergent at r = 0";
    } else {
      specfun::QuadratureRule rule = qs.rule;
      rule.left_exponent = left;
      rule.right_exponent = candidate.right_exponent;
      rule.breakpoints = candidate.breakpoints;
      const double scale = candidate.ansatz_factor;
      auto q = specfun::integrate([&](double r) { return scale * candidate.smooth(r); }, 0.0, candidate.support, rule);
      row.computed = LogReal::from_value(q.value);
      row.quad_error = q.error;
      have_value = true;
      if (!q.converged) row.note = "quadrature unconverged";
    }

    if (have_value) {
      fill_residuals(row);
      if (row.analytic) {
        row.analytic_deviation = rel_dev(row.computed, *row.analytic);
        if (row.analytic_deviation > qs.analytic_tolerance || !row.note.empty()) rep.quadrature_consistent = false;
      }
      const double quad_rel = row.computed.is_zero() ? 0.0 : row.quad_error / std::fabs(row.computed.value());
      if (row.note == "quadrature unconverged")
        row.verdict = Verdict::Indeterminate;
      else
        row.verdict = row.rel_residual <= qs.tolerance + quad_rel ? Verdict::Pass : Verdict::Fail;
    } else {
      row.verdict = Verdict::Indeterminate;
      row.rel_residual = row.abs_residual = std::numeric_limits<double>::quiet_NaN();
      row.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    rep.rows.push_back(std::move(row));
  }

  if (candidate.evaluable() && std::isfinite(candidate.support) && qs.nonnegativity_grid > 0) {
    rep.nonnegativity_checked = true;
    rep.min_weight = kInf;
    const double m = static_cast<double>(qs.nonnegativity_grid);
    for (std::size_t i = 0; i < qs.nonnegativity_grid; ++i) {
      const double r = candidate.support * (static_cast<double>(i) + 0.5) / m;
      const double h = candidate(r);
      rep.min_weight = std::min(rep.min_weight, h);
      if (!(h >= 0.0)) ++rep.negative_points;
    }
    rep.nonnegative = rep.negative_points == 0;
  }
  return rep;
}

std::vector<MomentReport> kp_moment_residuals(double lambda, std::size_t k, const WeightCandidate& candidate,
                                              std::size_t n_max, const QuadratureSettings& qs) {
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= n_max; ++n) ns.push_back(n);
  auto target = [lambda, k](std::size_t n) { return kp_moment_target(lambda, k, n); };
  std::vector<MomentReport> out;
  out.push_back(moment_residuals(
      candidate, ns, [](std::size_t n) { return static_cast<double>(n) - 1.0; }, target, qs,
      "disk moments, " + candidate.name, "r^(n-1)"));
  out.push_back(moment_residuals(
      candidate, ns, [](std::size_t n) { return static_cast<double>(n); }, target, qs,
      "disk moments, " + candidate.name, "r^n"));
  return out;
}

MomentReport gk_measure_selfconsistency(double lambda, std::size_t k, std::size_t n_max, double tolerance) {
  if (!(lambda > 0.0)) throw DomainError("gk_measure_selfconsistency: lambda must be positive");
  const Spectrum spec = Spectrum::poschl_teller_lambda(lambda);
  const FactorialMoments fm(spec, n_max + k);
  const double convention = log_pochhammer(lambda + 1.0, k);

  MomentReport rep;
  rep.title = "diagonal of the resolution of identity";
  rep.candidate = "meijer-g (mellin only)";
  rep.power_label = "r^m";
  rep.tolerance = tolerance;
  for (std::size_t m = 0; m <= n_max; ++m) {
    MomentRow row;
    row.n = m;
    row.power = static_cast<double>(m);
    row.target = LogReal::from_log(0.0);
    row.computed = LogReal::from_log(pt_gk_mellin_moment(lambda, k, m).log_abs - convention - fm.log_ek(k, m));
    fill_residuals(row);
    row.verdict = row.rel_residual <= tolerance ? Verdict::Pass : Verdict::Fail;
    rep.rows.push_back(row);
  }

  // Off-diagonal elements carry the angular factor (1/2pi) int exp(i(n-m)theta) dtheta.
  // The trapezoid rule with more points than the largest index gap is exact.
  const std::size_t pts = 2 * (n_max + 1) + 1;
  double worst = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t m = 0; m <= n_max; ++m) {
      if (n == m) continue;
      std::complex<double> s{};
      for (std::size_t j = 0; j < pts; ++j) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(pts);
        s += std::polar(1.0, (static_cast<double>(n) - static_cast<double>(m)) * th);
      }
      worst = std::max(worst, std::abs(s) / static_cast<double>(pts));
    }
  rep.checks.push_back({"max |off-diagonal angular factor|", worst, 1e-13, worst <= 1e-13});

  // Levels below k carry no amplitude in any state of the family.
  const FockState probe = gk_state(spec, GKLabel{Complex{0.5, 0.3}, 0.2, k});
  double below = 0.0;
  for (std::size_t l = 0; l < k; ++l) below = std::max(below, std::abs(probe.amplitude(l)));
  const bool offset_ok = probe.offset == k;
  rep.checks.push_back({"max |amplitude| below level k", below, 0.0, below == 0.0 && offset_ok});
  return rep;
}

std::vector<MomentReport> kp_errata_study(double lambda, std::size_t k, std::size_t n_max,
                                          const QuadratureSettings& qs) {
  std::vector<MomentReport> out;
  auto add = [&](const WeightCandidate& w) {
    for (auto& r : kp_moment_residuals(lambda, k, w, n_max, qs)) out.push_back(std::move(r));
  };
  add(kp_weight_k0(lambda));
  add(kp_weight_candidate(lambda, k, KpReading::Elementary));
  add(kp_weight_candidate(lambda, k, KpReading::ThirdParameter));
  WeightCandidate rescaled = kp_weight_candidate(lambda, k, KpReading::ThirdParameter);
  rescaled.ansatz_factor = lambda + 2.0 * static_cast<double>(k);
  rescaled.name = "third-parameter reading x (lambda+2k)";
  add(rescaled);
  return out;
}

}  // namespace solvstate
