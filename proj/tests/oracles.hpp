#pragma once

// Reference values computed without the library: explicit products, Boost
// special functions, Eigen matrix exponentials and tanh-sinh quadrature.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

namespace oracle {

using cplx = std::complex<double>;
using Energy = std::function<double(std::size_t)>;

inline Energy pt_energy(double lambda) {
  return [lambda](std::size_t n) { return double(n) * (double(n) + lambda); };
}
inline Energy ho_energy() {
  return [](std::size_t n) { return double(n); };
}

/// E_n E_{n-1} ... E_1 as a plain long double product.
inline long double e0(const Energy& e, std::size_t n) {
  long double p = 1.0L;
  for (std::size_t j = 1; j <= n; ++j) p *= e(j);
  return p;
}

inline long double ek(const Energy& e, std::size_t k, std::size_t n) {
  const long double a = e0(e, n);
  return a * a / e0(e, n + k);
}

/// sum_n x^n / E_k(n) by brute force until terms stop mattering.
inline long double gk_series(const Energy& e, double x, std::size_t k) {
  long double s = 0.0L, xn = 1.0L;
  for (std::size_t n = 0; n < 4000; ++n) {
    const long double t = xn / ek(e, k, n);
    s += t;
    if (n > 10 && t < 1e-22L * s) break;
    xn *= x;
  }
  return s;
}

/// Photon-added GK coefficients on levels k, k+1, ..., k+len-1.
inline std::vector<cplx> gk_coefficients(const Energy& e, cplx z, double alpha, std::size_t k, std::size_t len) {
  const long double norm = std::sqrt(gk_series(e, std::norm(z), k));
  std::vector<cplx> c(len);
  for (std::size_t n = 0; n < len; ++n) {
    const long double mag = std::pow(std::abs(z), double(n)) / std::sqrt(ek(e, k, n)) / norm;
    c[n] = std::polar(double(mag), double(n) * std::arg(z) - alpha * e(n + k));
  }
  return c;
}

/// Closed-form Poschl-Teller KP coefficients at k = 0 on levels 0..len-1.
inline std::vector<cplx> kp_closed_k0(double lambda, cplx xi, double alpha, std::size_t len) {
  std::vector<cplx> c(len);
  const double x = std::norm(xi);
  for (std::size_t n = 0; n < len; ++n) {
    const double lm = 0.5 * (lambda + 1.0) * std::log1p(-x) + double(n) * std::log(std::abs(xi)) +
                      0.5 * (std::lgamma(n + lambda + 1.0) - std::lgamma(n + 1.0) - std::lgamma(lambda + 1.0));
    c[n] = (n > 0 && xi == cplx{}) ? cplx{} : std::polar(std::exp(lm), double(n) * std::arg(xi) - alpha * n * (n + lambda));
  }
  return c;
}

/// Ladder matrices a- and a+ on levels 0..N-1 with the alpha phases.
struct Ladder {
  Eigen::MatrixXcd lower, raise;
};

inline Ladder ladder(const Energy& e, double alpha, std::size_t N) {
  Ladder L{Eigen::MatrixXcd::Zero(N, N), Eigen::MatrixXcd::Zero(N, N)};
  for (std::size_t n = 0; n + 1 < N; ++n) {
    const double d = e(n + 1) - e(n);
    L.raise(n + 1, n) = std::polar(std::sqrt(e(n + 1)), -alpha * d);
    L.lower(n, n + 1) = std::polar(std::sqrt(e(n + 1)), alpha * d);
  }
  return L;
}

/// exp(Z a+ - conj(Z) a-) |0> on an N-level basis by Eigen's Pade matrix exponential.
inline Eigen::VectorXcd displaced_ground(const Energy& e, cplx Z, double alpha, std::size_t N) {
  const Ladder L = ladder(e, alpha, N);
  const Eigen::MatrixXcd g = Z * L.raise - std::conj(Z) * L.lower;
  const Eigen::MatrixXcd u = g.exp();
  return u.col(0);
}

/// |(a- - z) c| for coefficients on levels 0..c.size()-1, padded with one zero level.
inline double eigen_residual(const Energy& e, const std::vector<cplx>& levels, cplx z, double alpha) {
  double s = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const cplx up = n + 1 < levels.size() ? levels[n + 1] : cplx{};
    const double d = e(n + 1) - e(n);
    const cplx r = std::polar(std::sqrt(e(n + 1)), alpha * d) * up - z * levels[n];
    s += std::norm(r);
  }
  return std::sqrt(s);
}

// -- special functions ---------------------------------------------------------

inline double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

/// 0F1(; b; x) = Gamma(b) x^{(1-b)/2} I_{b-1}(2 sqrt x) for x > 0.
inline double hyp0f1(double b, double x) {
  return std::tgamma(b) * std::pow(x, 0.5 * (1.0 - b)) * boost::math::cyl_bessel_i(b - 1.0, 2.0 * std::sqrt(x));
}

inline double pfq(std::vector<double> a, std::vector<double> b, double x) {
  return boost::math::hypergeometric_pFq(a, b, x);
}

/// Jacobi polynomial from its explicit binomial sum, accumulated in long double.
inline double jacobi(std::size_t n, double a, double b, double x) {
  auto binom = [](long double top, long double j) {
    return std::exp(std::lgamma(top + 1) - std::lgamma(j + 1) - std::lgamma(top - j + 1));
  };
  const long double lo = 0.5L * ((long double)x - 1), hi = 0.5L * ((long double)x + 1);
  long double s = 0.0L;
  for (std::size_t j = 0; j <= n; ++j)
    s += binom((long double)n + a, n - j) * binom((long double)n + b, j) * std::pow(lo, (long double)j) *
         std::pow(hi, (long double)(n - j));
  return double(s);
}

// -- Poschl-Teller well ----------------------------------------------------------

struct Well {
  double kappa, kappa_prime, a;
  double length() const { return std::numbers::pi * a; }
};

/// Normalized eigenfunction with parameters (p, q); the partner uses (p+1, q+1).
inline double well_state(double p, double q, double a, std::size_t n, double x) {
  const double lc = std::log(a) + std::lgamma(n + p + 0.5) + std::lgamma(n + q + 0.5) - std::lgamma(n + 1.0) -
                    std::lgamma(n + p + q) - std::log(2.0 * n + p + q);
  const double s = std::sin(x / (2 * a)), c = std::cos(x / (2 * a));
  return std::exp(-0.5 * lc) * std::pow(c, q) * std::pow(s, p) * jacobi(n, p - 0.5, q - 0.5, std::cos(x / a));
}

inline double psi(const Well& w, std::size_t n, double x) { return well_state(w.kappa, w.kappa_prime, w.a, n, x); }
inline double psi_partner(const Well& w, std::size_t n, double x) {
  return well_state(w.kappa + 1.0, w.kappa_prime + 1.0, w.a, n, x);
}

inline double well_potential(const Well& w, double x) {
  const double s = std::sin(x / (2 * w.a)), c = std::cos(x / (2 * w.a)), l = w.kappa + w.kappa_prime;
  return (w.kappa * (w.kappa - 1) / (s * s) + w.kappa_prime * (w.kappa_prime - 1) / (c * c) - l * l) / (4 * w.a * w.a);
}

inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
  static boost::math::quadrature::tanh_sinh<double> ts(12);
  double err = 0.0;
  return ts.integrate(f, lo, hi, std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-3, &err);
}

/// Eighth-order central second derivative.
inline double d2(const std::function<double(double)>& f, double x, double h) {
  static const double w[] = {-205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
  double s = w[0] * f(x);
  for (int j = 1; j <= 4; ++j) s += w[j] * (f(x + j * h) + f(x - j * h));
  return s / (h * h);
}

/// Eigenvalues below index `count` of a symmetric tridiagonal matrix by Sturm bisection.
inline std::vector<double> sturm_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off,
                                             std::size_t count) {
  auto below = [&](double x) {
    std::size_t c = 0;
    double q = diag[0] - x;
    if (q < 0) ++c;
    for (std::size_t i = 1; i < diag.size(); ++i) {
      if (q == 0.0) q = 1e-300;
      q = diag[i] - x - off[i - 1] * off[i - 1] / q;
      if (q < 0) ++c;
    }
    return c;
  };
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double r = (i > 0 ? std::fabs(off[i - 1]) : 0.0) + (i + 1 < diag.size() ? std::fabs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  std::vector<double> out;
  for (std::size_t j = 0; j < count; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::fabs(b)); ++it) {
      const double m = 0.5 * (a + b);
      (below(m) > j ? b : a) = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

/// Lowest eigenvalues of -d2/dx2 + V on (0, L) with Dirichlet walls, second-order grid of N interior points.
inline std::vector<double> fd_levels(const std::function<double(double)>& V, double L, std::size_t N, std::size_t count) {
  const double h = L / double(N + 1);
  std::vector<double> diag(N), off(N - 1, -1.0 / (h * h));
  for (std::size_t i = 0; i < N; ++i) diag[i] = 2.0 / (h * h) + V(h * double(i + 1));
  return sturm_eigenvalues(diag, off, count);
}

/// Lower regularized incomplete gamma times Gamma(s).
inline double lower_gamma(double s, double x) { return boost::math::tgamma_lower(s, x); }

}  // namespace oracle
