#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "solvstate/logreal.hpp"

namespace solvstate::specfun {

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// ln (a)_n, the log of the rising factorial a (a+1) ... (a+n-1), for a > 0.
double log_pochhammer(double a, std::size_t n);

/// ln n!
double log_factorial(std::size_t n);

double log_beta(double mu, double nu);
double beta(double mu, double nu);

/// Generalized binomial coefficient C(x, j) = Gamma(x+1) / (Gamma(j+1) Gamma(x-j+1)), log form.
/// Requires x - j + 1 > 0.
double log_binomial(double x, std::size_t j);

// ---------------------------------------------------------------------------
// Series accumulation
// ---------------------------------------------------------------------------

struct SeriesControl {
  std::size_t max_terms = 200000;
  double rel_tol = 1e-16;
  std::size_t consecutive_small = 3;

  /// Throws DomainError if the invariants are violated.
  void validate() const;
};

/// Sums terms given as (log magnitude, unit phase) with a running scale so that
/// neither the terms nor the partial sum overflow. T is double or std::complex<double>.
template <class T>
class ScaledSum {
 public:
  void add(double log_mag, T unit);

  /// log |sum|; -inf for an exactly zero sum.
  double log_abs() const;
  /// sum / |sum| (sign for real sums).
  T unit() const;
  /// Linear value, may overflow to inf.
  T value() const;
  double log_scale() const { return scale_; }
  T scaled() const { return sum_; }

 private:
  double scale_ = -std::numeric_limits<double>::infinity();
  T sum_{};
};

template <class T>
struct PfqResult {
  T value{};             ///< linear value (may overflow for huge arguments)
  double log_abs = 0.0;  ///< log |value|
  T unit{};              ///< value / |value|
  bool converged = false;
  bool terminated = false;  ///< the series is a polynomial and was summed exactly
  std::size_t terms = 0;
  double last_rel_term = 0.0;  ///< |last term| / |sum| at exit
};

/// Generalized hypergeometric series pFq(a; b; x). Non-convergence within
/// ctl.max_terms yields converged == false with the partial sum.
PfqResult<double> hyper_pfq(std::span<const double> a, std::span<const double> b, double x,
                            const SeriesControl& ctl = {});
PfqResult<std::complex<double>> hyper_pfq(std::span<const double> a, std::span<const double> b,
                                          std::complex<double> x, const SeriesControl& ctl = {});

/// 2F1(a, b; c; 1 - r) for 0 < r <= 1, accurate also as r -> 0 (argument near 1).
/// Uses the power series when 1 - r <= 0.75 and Euler's integral otherwise, which
/// needs c > b > 0 or c > a > 0 after swapping. When c = a + b and r <= 1/2 the
/// logarithmic expansion in powers of r is used instead.
double hyp2f1_complement(double a, double b, double c, double r);

// ---------------------------------------------------------------------------
// Phases
// ---------------------------------------------------------------------------

/// a * b reduced to [-pi, pi] with an error of a few ulps of pi, for |a b| < 2^22 * 2 pi.
/// Beyond that range the plain remainder is returned.
double angle_product(double a, double b);

// ---------------------------------------------------------------------------
// Orthogonal polynomials
// ---------------------------------------------------------------------------

/// Jacobi polynomial P_n^{(alpha, beta)}(x) by the three-term recurrence.
double jacobi_poly(std::size_t n, double alpha, double beta, double x);

/// d/dx P_n^{(alpha, beta)}(x) = (n+alpha+beta+1)/2 P_{n-1}^{(alpha+1, beta+1)}(x).
double jacobi_poly_derivative(std::size_t n, double alpha, double beta, double x);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t n);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Adaptive Gauss-Legendre settings. When an endpoint exponent s is nonzero the
/// integrand is taken to be f(x) * (x - a)^s (left) and/or (b - x)^s (right),
/// and the weight is applied inside the integrator with exact endpoint distances.
/// For s < 0 the end panel is mapped by x = a + h t^{1/(s+1)} which absorbs the singularity.
struct QuadratureRule {
  std::size_t nodes = 20;
  std::vector<double> breakpoints;  ///< optional interior panel boundaries
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  std::size_t max_panels = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  std::size_t panels = 0;
};

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureRule& rule = {});

// ---------------------------------------------------------------------------
// Meijer G at the Mellin level
// ---------------------------------------------------------------------------

/// log of the Mellin transform int_0^inf G^{q,0}_{p,q}(r | a; b) r^{s-1} dr
/// = prod_j Gamma(b_j + s) / prod_i Gamma(a_i + s). All arguments must be positive.
double log_meijer_g_mellin(std::span<const double> a, std::span<const double> b, double s);

}  // namespace solvstate::specfun
