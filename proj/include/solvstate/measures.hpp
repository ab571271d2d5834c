#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solvstate/logreal.hpp"
#include "solvstate/specfun.hpp"
#include "solvstate/spectrum.hpp"

namespace solvstate {

enum class WeightId { GkMeijerGMellinOnly, KpCandidate, KpK0, Custom };

/// How the parameter list 2F1(k, lambda+k, lambda+k; 1-r) is read.
///  Elementary:     2F1(a, b; b; x) = (1-x)^{-a}, giving (1-r)^{lambda+2k-1} r^{-k} / Gamma(lambda+2k+1).
///  ThirdParameter: 2F1(k, lambda+k; lambda+2k; 1-r) with the stated prefactor.
enum class KpReading { Elementary, ThirdParameter };

/// Radial density h(r) = smooth(r) * r^left_exponent * (support - r)^right_exponent on (0, support).
struct WeightCandidate {
  WeightId id = WeightId::Custom;
  std::optional<KpReading> reading;
  std::string name;
  double support = 1.0;  ///< upper end of r; may be +inf
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  std::function<double(double)> smooth;  ///< empty when h has no pointwise evaluator
  /// Exact value of int h(r) r^p dr, when one is known.
  std::function<std::optional<LogReal>(double p)> analytic;
  /// Constant multiplying h, for testing normalization conventions.
  double ansatz_factor = 1.0;
  std::vector<double> breakpoints;

  bool evaluable() const { return static_cast<bool>(smooth); }
  /// h(r) including ansatz_factor. Throws DomainError if not evaluable.
  double operator()(double r) const;
};

WeightCandidate gk_meijer_g_weight(double lambda, std::size_t k);
WeightCandidate kp_weight_k0(double lambda);
WeightCandidate kp_weight_candidate(double lambda, std::size_t k, KpReading reading);
WeightCandidate custom_weight(std::string name, std::function<double(double)> h, double support,
                              std::function<std::optional<LogReal>(double)> analytic = {});

enum class Verdict { Pass, Fail, Indeterminate };
const char* to_string(Verdict v);
const char* to_string(KpReading r);

struct MomentRow {
  std::size_t n = 0;
  double power = 0.0;  ///< exponent p in int h(r) r^p dr
  LogReal target;
  LogReal computed;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double quad_error = 0.0;
  std::optional<LogReal> analytic;
  double analytic_deviation = 0.0;  ///< |computed/analytic - 1|, 0 without an analytic value
  double ratio = 0.0;               ///< computed / target
  Verdict verdict = Verdict::Indeterminate;
  std::string note;
};

/// A scalar side check attached to a report.
struct ReportCheck {
  std::string label;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct MomentReport {
  std::string title;
  std::string candidate;
  std::string power_label;
  double tolerance = 0.0;
  double analytic_tolerance = 0.0;
  std::vector<MomentRow> rows;
  /// Every row with an analytic value agrees with its quadrature to analytic_tolerance.
  bool quadrature_consistent = true;
  bool nonnegativity_checked = false;
  bool nonnegative = true;
  double min_weight = 0.0;
  std::size_t negative_points = 0;
  std::vector<ReportCheck> checks;

  /// Every row passes and every side check holds.
  bool all_pass() const;
  std::size_t count(Verdict v) const;
};

/// Target moment E_k(n) of the Gazeau-Klauder resolution of identity.
LogReal gk_moment_target(const Spectrum& spec, std::size_t k, std::size_t n);

/// (n!)^2 ((lambda+1)_n)^2 / ((n+k)! (lambda+k+1)_n), the Poschl-Teller radial moment
/// in the normalization where the series constant carries no (lambda+1)_k.
LogReal pt_gk_moment_rhs(double lambda, std::size_t k, std::size_t n);

/// Mellin transform of the Meijer-G weight at s = n+1, from its Gamma ratio.
LogReal pt_gk_mellin_moment(double lambda, std::size_t k, std::size_t n);

/// Compares pt_gk_mellin_moment to pt_gk_moment_rhs for n = 0..n_max.
MomentReport mellin_gamma_check_pt(double lambda, std::size_t k, std::size_t n_max, double tolerance = 1e-12);

/// Gamma(n+1)^2 / (Gamma(n+k+1) Gamma(n+lambda+k+1)).
LogReal kp_moment_target(double lambda, std::size_t k, std::size_t n);

struct QuadratureSettings {
  specfun::QuadratureRule rule;
  double tolerance = 1e-9;           ///< verdict threshold on the relative residual
  double analytic_tolerance = 1e-9;  ///< quadrature against the exact value
  std::size_t nonnegativity_grid = 1000;
};

/// Integrates candidate * r^{power(n)} for every n and compares against target(n).
MomentReport moment_residuals(const WeightCandidate& candidate, const std::vector<std::size_t>& ns,
                              const std::function<double(std::size_t)>& power,
                              const std::function<LogReal(std::size_t)>& target, const QuadratureSettings& qs = {},
                              std::string title = {}, std::string power_label = {});

/// Both power conventions r^{n-1} and r^n for n = 1..n_max, in that order.
std::vector<MomentReport> kp_moment_residuals(double lambda, std::size_t k, const WeightCandidate& candidate,
                                              std::size_t n_max, const QuadratureSettings& qs = {});

/// Diagonal elements of the Gazeau-Klauder resolution of identity on the
/// Poschl-Teller spectrum, assembled from the Mellin moments. Rows are m = 0..n_max
/// (level m+k); side checks cover the off-diagonal angular integrals and the
/// absence of the first k levels.
MomentReport gk_measure_selfconsistency(double lambda, std::size_t k, std::size_t n_max, double tolerance = 1e-12);

/// The Klauder-Perelomov moment study: each candidate reading and the k = 0 weight
/// under both power conventions.
std::vector<MomentReport> kp_errata_study(double lambda, std::size_t k, std::size_t n_max,
                                          const QuadratureSettings& qs = {});

}  // namespace solvstate
