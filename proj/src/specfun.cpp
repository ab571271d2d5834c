#include "solvstate/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "solvstate/errors.hpp"

namespace solvstate::specfun {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return std::lgamma(x);
}

double log_pochhammer(double a, std::size_t n) {
  if (!(a > 0.0)) throw DomainError("log_pochhammer: a must be positive");
  if (n == 0) return 0.0;
  // Direct products are more accurate than a Gamma difference for short runs.
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::log(a + static_cast<double>(j));
    return s;
  }
  return std::lgamma(a + static_cast<double>(n)) - std::lgamma(a);
}

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_beta(double mu, double nu) {
  if (!(mu > 0.0) || !(nu > 0.0)) throw DomainError("beta: arguments must be positive");
  return std::lgamma(mu) + std::lgamma(nu) - std::lgamma(mu + nu);
}

double beta(double mu, double nu) { return std::exp(log_beta(mu, nu)); }

double log_binomial(double x, std::size_t j) {
  const double jd = static_cast<double>(j);
  if (!(x - jd + 1.0 > 0.0)) throw DomainError("log_binomial: requires x - j + 1 > 0");
  return std::lgamma(x + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(x - jd + 1.0);
}

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be positive");
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
  if (consecutive_small < 2) throw DomainError("SeriesControl: consecutive_small must be >= 2");
}

// ---------------------------------------------------------------------------

template <class T>
void ScaledSum<T>::add(double log_mag, T unit) {
  if (log_mag == kNegInf || unit == T{}) return;
  if (scale_ == kNegInf) {
    scale_ = log_mag;
    sum_ = unit;
  } else if (log_mag > scale_) {
    sum_ = sum_ * std::exp(scale_ - log_mag) + unit;
    scale_ = log_mag;
  } else {
    sum_ += unit * std::exp(log_mag - scale_);
  }
}

template <class T>
double ScaledSum<T>::log_abs() const {
  if (scale_ == kNegInf || sum_ == T{}) return kNegInf;
  return std::log(std::abs(sum_)) + scale_;
}

template <class T>
T ScaledSum<T>::unit() const {
  if (sum_ == T{}) return T{};
  return sum_ / std::abs(sum_);
}

template <class T>
T ScaledSum<T>::value() const {
  if (scale_ == kNegInf) return T{};
  return sum_ * std::exp(scale_);
}

template class ScaledSum<double>;
template class ScaledSum<std::complex<double>>;

// ---------------------------------------------------------------------------

namespace {

template <class T>
PfqResult<T> pfq_impl(std::span<const double> a, std::span<const double> b, T x, const SeriesControl& ctl) {
  ctl.validate();

  // Index of the last nonzero term when some upper parameter is a nonpositive integer.
  std::optional<std::size_t> last;
  for (double ai : a) {
    if (is_nonpositive_integer(ai)) {
      auto m = static_cast<std::size_t>(-ai);
      last = last ? std::min(*last, m) : m;
    }
  }
  for (double bj : b) {
    if (is_nonpositive_integer(bj)) {
      auto m = static_cast<std::size_t>(-bj);
      if (!last || *last > m) throw DomainError("hyper_pfq: lower parameter is a nonpositive integer");
    }
  }

  PfqResult<T> out;
  const double ax = std::abs(x);
  if (ax == 0.0 || (last && *last == 0)) {
    out.value = T{1};
    out.unit = T{1};
    out.converged = out.terminated = true;
    out.terms = 1;
    return out;
  }
  if (!last) {
    if (a.size() > b.size() + 1) throw DomainError("hyper_pfq: p > q+1 series diverges for x != 0");
    if (a.size() == b.size() + 1 && ax >= 1.0)
      throw DomainError("hyper_pfq: p = q+1 requires |x| < 1 for a non-terminating series");
  }

  const T xunit = x / ax;
  const double logx = std::log(ax);
  ScaledSum<T> sum;
  sum.add(0.0, T{1});
  double log_term = 0.0;
  T unit{1};
  std::size_t small = 0;
  std::size_t n = 0;
  for (;; ++n) {
    if (last && n == *last) {
      out.converged = out.terminated = true;
      break;
    }
    if (n + 1 >= ctl.max_terms) break;
    const double nd = static_cast<double>(n);
    for (double ai : a) {
      const double v = ai + nd;
      log_term += std::log(std::fabs(v));
      if (v < 0) unit = -unit;
    }
    for (double bj : b) {
      const double v = bj + nd;
      log_term -= std::log(std::fabs(v));
      if (v < 0) unit = -unit;
    }
    log_term += logx - std::log(nd + 1.0);
    unit *= xunit;
    sum.add(log_term, unit);
    out.last_rel_term = std::exp(log_term - sum.log_abs());
    if (out.last_rel_term <= ctl.rel_tol) {
      if (++small >= ctl.consecutive_small) {
        out.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  out.terms = n + 1;
  out.log_abs = sum.log_abs();
  out.unit = sum.unit();
  out.value = sum.value();
  return out;
}

}  // namespace

PfqResult<double> hyper_pfq(std::span<const double> a, std::span<const double> b, double x,
                            const SeriesControl& ctl) {
  return pfq_impl<double>(a, b, x, ctl);
}

PfqResult<std::complex<double>> hyper_pfq(std::span<const double> a, std::span<const double> b,
                                          std::complex<double> x, const SeriesControl& ctl) {
  return pfq_impl<std::complex<double>>(a, b, x, ctl);
}

double hyp2f1_complement(double a, double b, double c, double r) {
  if (!(r > 0.0) || r > 1.0) throw DomainError("hyp2f1_complement: r must lie in (0, 1]");
  if (a == 0.0 || b == 0.0) return 1.0;
  const double x = 1.0 - r;
  // Degenerate case c = a + b: logarithmic expansion in powers of r.
  if (std::fabs(c - a - b) < 1e-13 && r <= 0.5 && a > 0.0 && b > 0.0) {
    const double lr = std::log(r);
    double psi_sum = 2.0 * boost::math::digamma(1.0) - boost::math::digamma(a) - boost::math::digamma(b);
    double coef = 1.0, sum = 0.0;
    for (std::size_t n = 0; n < 100000; ++n) {
      const double term = coef * (psi_sum - lr);
      sum += term;
      if (n > 2 && std::fabs(term) < 1e-17 * std::fabs(sum)) break;
      const double nd = static_cast<double>(n);
      psi_sum += 2.0 / (nd + 1.0) - 1.0 / (a + nd) - 1.0 / (b + nd);
      coef *= (a + nd) * (b + nd) / ((nd + 1.0) * (nd + 1.0)) * r;
    }
    return sum * std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b));
  }
  if (x <= 0.75) {
    const double up[] = {a, b};
    const double lo[] = {c};
    auto res = hyper_pfq(up, lo, x);
    if (!res.converged) throw ConvergenceError("hyp2f1_complement: series did not converge");
    return res.value;
  }
  if (!(c > b && b > 0.0)) std::swap(a, b);
  if (!(c > b && b > 0.0)) throw DomainError("hyp2f1_complement: Euler integral needs c > b > 0");

  // With u = 1 - t:  int_0^1 u^{c-b-1} (1-u)^{b-1} (u + r(1-u))^{-a} du.
  QuadratureRule rule;
  rule.left_exponent = c - b - 1.0;
  rule.right_exponent = b - 1.0;
  for (double m : {r, 10.0 * r, 100.0 * r})
    if (m < 0.5) rule.breakpoints.push_back(m);
  auto q = integrate([&](double u) { return std::pow(u + r * (1.0 - u), -a); }, 0.0, 1.0, rule);
  if (!q.converged) throw ConvergenceError("hyp2f1_complement: Euler integral did not converge");
  return q.value * std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
}

// ---------------------------------------------------------------------------

double angle_product(double a, double b) {
  // Cody-Waite split of 2 pi; the first two parts carry 30 bits each.
  constexpr double c1 = 6.283185303211212, c2 = 3.9683743166540886e-09, c3 = 2.068073192717642e-18;
  const double p = a * b;
  const double e = std::fma(a, b, -p);
  const double q = std::nearbyint(p / (2.0 * std::numbers::pi));
  if (std::fabs(q) > 4194304.0) return std::remainder(p, 2.0 * std::numbers::pi);
  return (((p - q * c1) - q * c2) - q * c3) + e;
}

double jacobi_poly(std::size_t n, double alpha, double beta, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
  const double ab2 = alpha * alpha - beta * beta;
  for (std::size_t m = 2; m <= n; ++m) {
    const double md = static_cast<double>(m);
    const double c = 2.0 * md + alpha + beta;
    const double a1 = 2.0 * md * (md + alpha + beta) * (c - 2.0);
    const double a2 = (c - 1.0) * ab2;
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (md + alpha - 1.0) * (md + beta - 1.0) * c;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_poly_derivative(std::size_t n, double alpha, double beta, double x) {
  if (n == 0) return 0.0;
  return 0.5 * (static_cast<double>(n) + alpha + beta + 1.0) * jacobi_poly(n - 1, alpha + 1.0, beta + 1.0, x);
}

GaussRule gauss_legendre(std::size_t n) {
  if (n < 2) throw DomainError("gauss_legendre: need at least two nodes");
  GaussRule g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = g.weights[n - 1 - i] = w;
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

enum class PanelMap { Direct, Left, Right };

struct Panel {
  double t0, t1;
  PanelMap map;
  double estimate;
  double error;
  double halves[2];
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureRule& rule) {
  if (!(a < b)) throw DomainError("integrate: requires a < b");
  const double sl = rule.left_exponent, sr = rule.right_exponent;
  if (sl <= -1.0 || sr <= -1.0) throw DomainError("integrate: endpoint exponents must exceed -1");
  const GaussRule gl = gauss_legendre(rule.nodes);

  std::vector<double> cuts{a};
  {
    std::vector<double> bp;
    for (double x : rule.breakpoints)
      if (x > a && x < b) bp.push_back(x);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    cuts.insert(cuts.end(), bp.begin(), bp.end());
  }
  cuts.push_back(b);
  if (cuts.size() == 2 && sl < 0.0 && sr < 0.0) cuts.insert(cuts.begin() + 1, 0.5 * (a + b));

  const double left_h = cuts[1] - a;
  const double right_h = b - cuts[cuts.size() - 2];
  const double pl = 1.0 / (sl + 1.0), pr = 1.0 / (sr + 1.0);
  const double left_jac = std::pow(left_h, sl + 1.0) * pl;
  const double right_jac = std::pow(right_h, sr + 1.0) * pr;

  auto eval = [&](double t, PanelMap map) -> double {
    double x, dl, dr, w = 1.0;
    switch (map) {
      case PanelMap::Left:
        dl = left_h * std::pow(t, pl);
        x = a + dl;
        dr = (b - a) - dl;
        w = left_jac * (sr != 0.0 ? std::pow(dr, sr) : 1.0);
        break;
      case PanelMap::Right:
        dr = right_h * std::pow(t, pr);
        x = b - dr;
        dl = (b - a) - dr;
        w = right_jac * (sl != 0.0 ? std::pow(dl, sl) : 1.0);
        break;
      default:
        x = t;
        if (sl != 0.0) w *= std::pow(x - a, sl);
        if (sr != 0.0) w *= std::pow(b - x, sr);
        break;
    }
    return w == 0.0 ? 0.0 : f(x) * w;
  };
  auto gauss = [&](double t0, double t1, PanelMap map) {
    const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * eval(c + h * gl.nodes[i], map);
    return s * h;
  };
  auto make_panel = [&](double t0, double t1, PanelMap map, double whole) {
    Panel p{t0, t1, map, 0.0, 0.0, {0.0, 0.0}};
    const double m = 0.5 * (t0 + t1);
    p.halves[0] = gauss(t0, m, map);
    p.halves[1] = gauss(m, t1, map);
    p.estimate = p.halves[0] + p.halves[1];
    p.error = std::fabs(p.estimate - whole);
    return p;
  };

  std::vector<Panel> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    PanelMap map = PanelMap::Direct;
    double t0 = cuts[i], t1 = cuts[i + 1];
    if (i == 0 && sl < 0.0) {
      map = PanelMap::Left;
      t0 = 0.0;
      t1 = 1.0;
    } else if (i + 2 == cuts.size() && sr < 0.0) {
      map = PanelMap::Right;
      t0 = 0.0;
      t1 = 1.0;
    }
    heap.push_back(make_panel(t0, t1, map, gauss(t0, t1, map)));
  }
  std::make_heap(heap.begin(), heap.end());

  QuadResult out;
  for (;;) {
    double total = 0.0, err = 0.0;
    for (const auto& p : heap) {
      total += p.estimate;
      err += p.error;
    }
    out.value = total;
    out.error = err;
    out.panels = heap.size();
    if (err <= std::max(rule.abs_tol, rule.rel_tol * std::fabs(total))) {
      out.converged = true;
      break;
    }
    if (heap.size() >= rule.max_panels) break;
    std::pop_heap(heap.begin(), heap.end());
    Panel worst = heap.back();
    heap.pop_back();
    const double m = 0.5 * (worst.t0 + worst.t1);
    if (!(m > worst.t0 && m < worst.t1)) {
      // Cannot split further in floating point; keep the panel and give up.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    heap.push_back(make_panel(worst.t0, m, worst.map, worst.halves[0]));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(make_panel(m, worst.t1, worst.map, worst.halves[1]));
    std::push_heap(heap.begin(), heap.end());
  }
  return out;
}

double log_meijer_g_mellin(std::span<const double> a, std::span<const double> b, double s) {
  double v = 0.0;
  for (double bj : b) v += log_gamma(bj + s);
  for (double ai : a) v -= log_gamma(ai + s);
  return v;
}

}  // namespace solvstate::specfun
