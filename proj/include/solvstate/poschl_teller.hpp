#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "solvstate/specfun.hpp"

namespace solvstate::pt {

/// Parameters of the trigonometric Poschl-Teller well on (0, pi a).
/// Requires kappa, kappa' > 1/2 and a > 0.
struct PTParams {
  double kappa = 2.0;
  double kappa_prime = 2.0;
  double a = 1.0;

  double lambda() const { return kappa + kappa_prime; }
  void validate() const;
  double length() const;  ///< pi a
};

/// V(x) = [kappa(kappa-1)/sin^2(x/2a) + kappa'(kappa'-1)/cos^2(x/2a)] / 4a^2 - (kappa+kappa')^2 / 4a^2.
/// Throws DomainError outside (0, pi a).
double potential(const PTParams& p, double x);

/// W(x) = -(1/2a) [kappa cot(x/2a) - kappa' tan(x/2a)].
double superpotential(const PTParams& p, double x);
double superpotential_derivative(const PTParams& p, double x);

/// Energy n(n + lambda)/a^2 of H = A+A-.
double level_energy(const PTParams& p, std::size_t n);

/// c_n^{kappa, kappa'} = a Gamma(n+kappa+1/2) Gamma(n+kappa'+1/2) / (n! Gamma(n+lambda) (2n+lambda)), log form.
double log_norm_constant(double kappa, double kappa_prime, double a, std::size_t n);

/// psi_n^-(x) = c_n^{-1/2} cos^{kappa'}(x/2a) sin^{kappa}(x/2a) P_n^{(kappa-1/2, kappa'-1/2)}(cos(x/a)).
double eigenfunction(const PTParams& p, std::size_t n, double x);

/// Eigenfunction of the partner H+ = A-A+: indices shifted to (kappa+1, kappa'+1), same cos(x/a) argument.
double partner_eigenfunction(const PTParams& p, std::size_t n, double x);

/// (A- psi_n^-)(x) = psi' + W psi, using the analytic Jacobi derivative.
double lowered_eigenfunction(const PTParams& p, std::size_t n, double x);

/// (A+ psi_n^+)(x) = -psi' + W psi, using the analytic Jacobi derivative.
double raised_partner(const PTParams& p, std::size_t n, double x);

struct UElement {
  double value = 0.0;
  double condition = 1.0;  ///< sum |terms| / |value|
  bool flagged = false;    ///< |value| < 1e-10 * max |term|
};

/// U_{nm} = <psi_n^- | psi_m^+> from the finite binomial / Beta double sum.
UElement u_matrix_element(const PTParams& p, std::size_t n, std::size_t m);

/// Adaptive quadrature of f over (0, pi a) with panels clustered toward both walls.
specfun::QuadResult integrate_well(const PTParams& p, const std::function<double(double)>& f, double abs_tol = 1e-15);

/// U_{nm} by adaptive quadrature of psi_n^- psi_m^+ over (0, pi a).
double u_matrix_element_quadrature(const PTParams& p, std::size_t n, std::size_t m);

struct LadderAction {
  double magnitude = 0.0;
  std::complex<double> phase{1.0, 0.0};
};

struct LadderPair {
  LadderAction raise;  ///< a+|psi_n> = magnitude * phase |psi_{n+1}>
  LadderAction lower;  ///< a-|psi_n> = magnitude * phase |psi_{n-1}>
};

LadderPair ladder_action_pt(double lambda, std::size_t n, double alpha);

}  // namespace solvstate::pt
