#include "solvstate/poschl_teller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "solvstate/errors.hpp"
#include "solvstate/specfun.hpp"

namespace solvstate::pt {

namespace {

void check_interior(const PTParams& p, double x) {
  if (!(x > 0.0 && x < p.length())) throw DomainError("Poschl-Teller: x must lie strictly inside (0, pi a)");
}

void check_closed(const PTParams& p, double x) {
  if (!(x >= 0.0 && x <= p.length())) throw DomainError("Poschl-Teller: x must lie in [0, pi a]");
}

struct Angles {
  double s, c;  // sin(x/2a), cos(x/2a), clamped at zero
  double t;     // cos(x/a)
  double s2;    // sin(x/a)
};

Angles angles(const PTParams& p, double x) {
  const double y = x / (2.0 * p.a);
  Angles g;
  g.s = std::max(0.0, std::sin(y));
  g.c = std::max(0.0, std::cos(y));
  g.t = std::cos(x / p.a);
  g.s2 = std::sin(x / p.a);
  return g;
}

}  // namespace

void PTParams::validate() const {
  if (!(kappa > 0.5) || !(kappa_prime > 0.5)) throw DomainError("PTParams: kappa and kappa' must exceed 1/2");
  if (!(a > 0.0)) throw DomainError("PTParams: a must be positive");
}

double PTParams::length() const { return std::numbers::pi * a; }

double potential(const PTParams& p, double x) {
  p.validate();
  check_interior(p, x);
  const double y = x / (2.0 * p.a);
  const double s = std::sin(y), c = std::cos(y);
  const double k = p.kappa, kp = p.kappa_prime, lam = p.lambda();
  return (k * (k - 1.0) / (s * s) + kp * (kp - 1.0) / (c * c) - lam * lam) / (4.0 * p.a * p.a);
}

double superpotential(const PTParams& p, double x) {
  p.validate();
  check_interior(p, x);
  const double y = x / (2.0 * p.a);
  return -(p.kappa / std::tan(y) - p.kappa_prime * std::tan(y)) / (2.0 * p.a);
}

double superpotential_derivative(const PTParams& p, double x) {
  p.validate();
  check_interior(p, x);
  const double y = x / (2.0 * p.a);
  const double s = std::sin(y), c = std::cos(y);
  return (p.kappa / (s * s) + p.kappa_prime / (c * c)) / (4.0 * p.a * p.a);
}

double level_energy(const PTParams& p, std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd * (nd + p.lambda()) / (p.a * p.a);
}

double log_norm_constant(double kappa, double kappa_prime, double a, std::size_t n) {
  const double nd = static_cast<double>(n), lam = kappa + kappa_prime;
  return std::log(a) + std::lgamma(nd + kappa + 0.5) + std::lgamma(nd + kappa_prime + 0.5) - std::lgamma(nd + 1.0) -
         std::lgamma(nd + lam) - std::log(2.0 * nd + lam);
}

double eigenfunction(const PTParams& p, std::size_t n, double x) {
  p.validate();
  check_closed(p, x);
  const Angles g = angles(p, x);
  const double env = std::pow(g.c, p.kappa_prime) * std::pow(g.s, p.kappa);
  const double poly = specfun::jacobi_poly(n, p.kappa - 0.5, p.kappa_prime - 0.5, g.t);
  return std::exp(-0.5 * log_norm_constant(p.kappa, p.kappa_prime, p.a, n)) * env * poly;
}

double partner_eigenfunction(const PTParams& p, std::size_t n, double x) {
  p.validate();
  check_closed(p, x);
  const Angles g = angles(p, x);
  const double env = std::pow(g.c, p.kappa_prime + 1.0) * std::pow(g.s, p.kappa + 1.0);
  const double poly = specfun::jacobi_poly(n, p.kappa + 0.5, p.kappa_prime + 0.5, g.t);
  return std::exp(-0.5 * log_norm_constant(p.kappa + 1.0, p.kappa_prime + 1.0, p.a, n)) * env * poly;
}

double lowered_eigenfunction(const PTParams& p, std::size_t n, double x) {
  p.validate();
  check_closed(p, x);
  // The envelope satisfies g' = -W g, so A- acts only on the polynomial factor.
  const Angles g = angles(p, x);
  const double env = std::pow(g.c, p.kappa_prime) * std::pow(g.s, p.kappa);
  const double dpoly = specfun::jacobi_poly_derivative(n, p.kappa - 0.5, p.kappa_prime - 0.5, g.t);
  return std::exp(-0.5 * log_norm_constant(p.kappa, p.kappa_prime, p.a, n)) * env * dpoly * (-g.s2 / p.a);
}

double raised_partner(const PTParams& p, std::size_t n, double x) {
  p.validate();
  check_closed(p, x);
  const Angles g = angles(p, x);
  const double k = p.kappa, kp = p.kappa_prime;
  const double env = std::pow(g.c, kp + 1.0) * std::pow(g.s, k + 1.0);
  const double env_cot = std::pow(g.c, kp + 2.0) * std::pow(g.s, k);  // env * cot(x/2a)
  const double env_tan = std::pow(g.c, kp) * std::pow(g.s, k + 2.0);  // env * tan(x/2a)
  const double poly = specfun::jacobi_poly(n, k + 0.5, kp + 0.5, g.t);
  const double dpoly = specfun::jacobi_poly_derivative(n, k + 0.5, kp + 0.5, g.t);
  const double v = -((2.0 * k + 1.0) * env_cot - (2.0 * kp + 1.0) * env_tan) * poly / (2.0 * p.a) +
                   env * dpoly * g.s2 / p.a;
  return std::exp(-0.5 * log_norm_constant(k + 1.0, kp + 1.0, p.a, n)) * v;
}

UElement u_matrix_element(const PTParams& p, std::size_t n, std::size_t m) {
  p.validate();
  using specfun::log_binomial;
  const double k = p.kappa, kp = p.kappa_prime;
  const double nd = static_cast<double>(n), md = static_cast<double>(m);

  // Expanding both Jacobi polynomials in powers of sin^2 and cos^2 of x/2a turns
  // every product into a Beta integral over (0, pi/2).
  std::vector<double> logs;
  std::vector<int> signs;
  for (std::size_t i = 0; i <= n; ++i) {
    const double bi = log_binomial(nd + k - 0.5, i) + log_binomial(nd + kp - 0.5, n - i);
    for (std::size_t j = 0; j <= m; ++j) {
      const double bj = log_binomial(md + k + 0.5, j) + log_binomial(md + kp + 0.5, m - j);
      const double ij = static_cast<double>(i + j);
      logs.push_back(bi + bj + specfun::log_beta(k + 1.0 + nd + md - ij, kp + 1.0 + ij));
      signs.push_back(((n + m - i - j) % 2 == 0) ? 1 : -1);
    }
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  // Neumaier-compensated sum of the scaled terms.
  double sum = 0.0, comp = 0.0, abs_sum = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double t = signs[i] * std::exp(logs[i] - top);
    abs_sum += std::fabs(t);
    const double s = sum + t;
    comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  sum += comp;

  const double prefactor = std::log(p.a) - 0.5 * (log_norm_constant(k, kp, p.a, n) +
                                                  log_norm_constant(k + 1.0, kp + 1.0, p.a, m));
  UElement u;
  u.value = sum * std::exp(prefactor + top);
  u.condition = sum == 0.0 ? std::numeric_limits<double>::infinity() : abs_sum / std::fabs(sum);
  u.flagged = std::fabs(sum) < 1e-10;
  return u;
}

specfun::QuadResult integrate_well(const PTParams& p, const std::function<double(double)>& f, double abs_tol) {
  p.validate();
  const double L = p.length();
  specfun::QuadratureRule rule;
  rule.breakpoints = {0.01 * L, 0.05 * L, 0.25 * L, 0.5 * L, 0.75 * L, 0.95 * L, 0.99 * L};
  rule.abs_tol = abs_tol;
  return specfun::integrate(f, 0.0, L, rule);
}

double u_matrix_element_quadrature(const PTParams& p, std::size_t n, std::size_t m) {
  auto q = integrate_well(p, [&](double x) { return eigenfunction(p, n, x) * partner_eigenfunction(p, m, x); });
  if (!q.converged) throw ConvergenceError("u_matrix_element_quadrature: quadrature did not converge");
  return q.value;
}

LadderPair ladder_action_pt(double lambda, std::size_t n, double alpha) {
  const double nd = static_cast<double>(n);
  LadderPair lp;
  lp.raise.magnitude = std::sqrt((nd + 1.0) * (nd + lambda + 1.0));
  lp.raise.phase = std::polar(1.0, -alpha * (2.0 * nd + lambda + 1.0));
  if (n > 0) {
    lp.lower.magnitude = std::sqrt(nd * (nd + lambda));
    lp.lower.phase = std::polar(1.0, alpha * (2.0 * nd + lambda - 1.0));
  } else {
    lp.lower.magnitude = 0.0;
  }
  return lp;
}

}  // namespace solvstate::pt
