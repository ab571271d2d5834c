#include "solvstate/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>

#include "solvstate/errors.hpp"

namespace solvstate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
using specfun::ScaledSum;
using specfun::SeriesControl;
using specfun::angle_product;

struct Term {
  double log_weight;  // log |c_n|^2, unnormalized
  double phase;
};

/// Collects terms until the next-term ratio bound puts the dropped mass below tail_tol.
FockState assemble(const std::function<Term(std::size_t)>& term, std::size_t offset, double alpha,
                   std::size_t limit, double tail_tol) {
  constexpr std::size_t kLook = 4;
  std::vector<double> lw, ph;
  std::size_t keep = 0;
  double tail = std::numeric_limits<double>::infinity();
  bool converged = false;

  auto log_sum = [&](std::size_t count) {
    double s = kNegInf;
    for (std::size_t i = 0; i < count; ++i) s = log_add_exp(s, lw[i]);
    return s;
  };

  for (std::size_t n = 0;; ++n) {
    if (n >= limit) {
      keep = lw.size();
      if (keep >= 2 && lw[keep - 1] > kNegInf) {
        const double rho = std::exp(lw[keep - 1] - lw[keep - 2]);
        if (rho < 1.0) tail = std::exp(lw[keep - 1] - log_sum(keep)) * rho / (1.0 - rho);
      }
      break;
    }
    const Term t = term(n);
    lw.push_back(t.log_weight);
    ph.push_back(t.phase);
    if (n < kLook) continue;

    const std::size_t cand = n - kLook + 1;  // keep 0..cand-1, look at cand..n
    bool all_zero = true;
    for (std::size_t i = cand; i <= n; ++i)
      if (lw[i] > kNegInf) all_zero = false;
    if (all_zero) {
      keep = cand;
      tail = 0.0;
      converged = true;
      break;
    }
    bool ok = lw[cand - 1] > kNegInf;
    double rho_max = 0.0, prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = cand - 1; ok && i < n; ++i) {
      const double rho = lw[i + 1] == kNegInf ? 0.0 : std::exp(lw[i + 1] - lw[i]);
      if (!(rho < 1.0) || rho > prev * (1.0 + 1e-9)) ok = false;
      if (i >= cand) rho_max = std::max(rho_max, rho);
      prev = rho;
    }
    if (!ok) continue;
    const double est = std::exp(lw[cand] - log_sum(cand)) / (1.0 - rho_max);
    if (est <= tail_tol) {
      keep = cand;
      tail = est;
      converged = true;
      break;
    }
  }

  const double s = log_sum(keep);
  FockState st;
  st.offset = offset;
  st.alpha = alpha;
  st.coefficients.resize(keep);
  for (std::size_t i = 0; i < keep; ++i)
    st.coefficients[i] = lw[i] == kNegInf ? Complex{} : std::polar(std::exp(0.5 * (lw[i] - s)), ph[i]);
  st.tail_bound = tail;
  st.converged = converged;
  return st;
}

/// Sums exp(log_mag(n)) * unit(n) for n = 0, 1, ... until ctl's stopping rule fires.
template <class T, class F>
SeriesValue sum_series(F&& term, const SeriesControl& ctl, T* complex_out = nullptr) {
  ctl.validate();
  ScaledSum<T> sum;
  std::size_t small = 0, n = 0;
  bool converged = false;
  for (; n < ctl.max_terms; ++n) {
    auto [lm, u] = term(n);
    sum.add(lm, u);
    const double la = sum.log_abs();
    const bool is_small = lm == kNegInf || (la > kNegInf && lm - la <= std::log(ctl.rel_tol));
    if (is_small) {
      if (++small >= ctl.consecutive_small) {
        converged = true;
        ++n;
        break;
      }
    } else {
      small = 0;
    }
  }
  SeriesValue out;
  out.converged = converged;
  out.terms = n;
  out.value = LogReal{sum.log_abs(), sum.log_abs() == kNegInf ? 0 : 1};
  if constexpr (std::is_same_v<T, double>) {
    out.value.sign = sum.log_abs() == kNegInf ? 0 : (sum.unit() < 0 ? -1 : 1);
  } else {
    if (complex_out) *complex_out = sum.unit();
  }
  return out;
}

std::size_t level_limit(const Spectrum& spec, std::size_t k, std::size_t cap) {
  if (auto top = spec.max_level()) {
    if (*top < k + 1) throw OutOfRangeError("spectrum table too short for k = " + std::to_string(k));
    return std::min(cap, *top - k);
  }
  return cap;
}

/// Incremental log E_k(n): log E_k(n+1) - log E_k(n) = 2 log E_{n+1} - log E_{n+k+1}.
class EkLog {
 public:
  EkLog(const Spectrum& spec, std::size_t k) : spec_(spec), k_(k) {
    spec.check_increasing(k);
    for (std::size_t j = 1; j <= k; ++j) cur_ -= std::log(spec.energy(j));
  }
  double at(std::size_t n) {
    while (n_ < n) {
      cur_ += 2.0 * std::log(spec_.energy(n_ + 1)) - std::log(spec_.energy(n_ + k_ + 1));
      ++n_;
    }
    if (n < n_) throw Error("EkLog: values must be requested in increasing order");
    return cur_;
  }

 private:
  const Spectrum& spec_;
  std::size_t k_;
  std::size_t n_ = 0;
  double cur_ = 0.0;
};

void check_gk_radius(const Spectrum& spec, std::size_t k, double z2) {
  if (spec.has_known_infinite_radius() || z2 == 0.0) return;
  std::size_t probe = 200;
  if (auto top = spec.max_level()) {
    if (*top < k + 4) return;
    probe = std::min(probe, *top - k - 1);
  }
  const Radius r = radius(spec, k, probe);
  if (r.status == Radius::Status::Finite && z2 >= r.value)
    throw DomainError("gk_state: |z|^2 = " + std::to_string(z2) + " lies outside the radius of convergence " +
                      std::to_string(r.value));
}

double log_kp_gamma_ratio(double lambda, std::size_t n, std::size_t k, KpExponent exponent) {
  const double lam = exponent == KpExponent::Corrected ? lambda : 2.0 * lambda;
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  return std::lgamma(nd + kd + 1.0) + std::lgamma(nd + kd + lam + 1.0) - 2.0 * std::lgamma(nd + 1.0) -
         std::lgamma(lam + 1.0);
}

void check_disk(Complex xi) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("KP state: |xi| must be below 1");
}

double pt_energy(double lambda, std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd * (nd + lambda);
}

}  // namespace

Complex xi_from_z(Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return {};
  return z / r * std::tanh(r);
}

// -----------------------------------------------------------------------------

FockState gk_state(const Spectrum& spec, const GKLabel& label, const TruncationOptions& opt) {
  const double r = std::abs(label.z);
  check_gk_radius(spec, label.k, r * r);
  if (r == 0.0) return FockState::basis(label.k, label.alpha);

  EkLog ek(spec, label.k);
  const double lr = std::log(r), arg = std::arg(label.z);
  auto term = [&](std::size_t n) {
    const double nd = static_cast<double>(n);
    return Term{2.0 * nd * lr - ek.at(n), angle_product(nd, arg) - angle_product(label.alpha, spec.energy(n + label.k))};
  };
  return assemble(term, label.k, label.alpha, level_limit(spec, label.k, opt.max_dim), opt.tail_tol);
}

SeriesValue gk_norm_constant(const Spectrum& spec, double z2, std::size_t k, const SeriesControl& ctl) {
  if (z2 < 0.0) throw DomainError("gk_norm_constant: |z|^2 must be nonnegative");
  check_gk_radius(spec, k, z2);
  EkLog ek(spec, k);
  const double lx = z2 > 0.0 ? std::log(z2) : kNegInf;
  auto term = [&](std::size_t n) {
    const double lm = n == 0 ? 0.0 : static_cast<double>(n) * lx;
    return std::pair<double, double>{lm == kNegInf ? kNegInf : lm - ek.at(n), 1.0};
  };
  return sum_series<double>(term, ctl);
}

SeriesValue gk_norm_constant_closed_pt(double lambda, double z2, std::size_t k, const SeriesControl& ctl) {
  const double kd = static_cast<double>(k);
  const double a[] = {kd + 1.0, lambda + kd + 1.0};
  const double b[] = {1.0, lambda + 1.0, lambda + 1.0};
  auto f = specfun::hyper_pfq(a, b, z2, ctl);
  SeriesValue out;
  out.value = LogReal{f.log_abs + specfun::log_factorial(k), f.unit < 0 ? -1 : 1};
  out.converged = f.converged;
  out.terms = f.terms;
  return out;
}

OverlapValue gk_overlap(const Spectrum& spec, const GKLabel& bra, const GKLabel& ket, const SeriesControl& ctl) {
  if (bra.k != ket.k) throw DomainError("gk_overlap: labels must share k");
  const std::size_t k = bra.k;
  const double r1 = std::abs(bra.z), r2 = std::abs(ket.z);
  const auto n1 = gk_norm_constant(spec, r1 * r1, k, ctl);
  const auto n2 = gk_norm_constant(spec, r2 * r2, k, ctl);

  const Complex w = std::conj(bra.z) * ket.z;
  const double lw = std::abs(w) > 0.0 ? std::log(std::abs(w)) : kNegInf;
  const double aw = std::arg(w);
  const double dalpha = ket.alpha - bra.alpha;
  EkLog ek(spec, k);
  auto term = [&](std::size_t n) {
    const double nd = static_cast<double>(n);
    const double lm = n == 0 ? 0.0 : (lw == kNegInf ? kNegInf : nd * lw);
    const double ph = angle_product(nd, aw) - angle_product(dalpha, spec.energy(n + k));
    return std::pair<double, Complex>{lm == kNegInf ? kNegInf : lm - ek.at(n), std::polar(1.0, ph)};
  };
  Complex unit{};
  auto s = sum_series<Complex>(term, ctl, &unit);
  OverlapValue out;
  out.converged = s.converged && n1.converged && n2.converged;
  if (s.value.is_zero()) return out;
  out.value = unit * std::exp(s.value.log_abs - 0.5 * (n1.value.log_abs + n2.value.log_abs));
  return out;
}

OverlapValue gk_overlap_closed_pt(double lambda, const GKLabel& bra, const GKLabel& ket, const SeriesControl& ctl) {
  if (bra.k != ket.k) throw DomainError("gk_overlap_closed_pt: labels must share k");
  if (bra.alpha != ket.alpha) throw DomainError("gk_overlap_closed_pt: compact form needs equal alpha");
  const double kd = static_cast<double>(bra.k);
  const double a[] = {kd + 1.0, lambda + kd + 1.0};
  const double b[] = {1.0, lambda + 1.0, lambda + 1.0};
  const double r1 = std::abs(bra.z), r2 = std::abs(ket.z);
  auto f = specfun::hyper_pfq(a, b, std::conj(bra.z) * ket.z, ctl);
  auto f1 = specfun::hyper_pfq(a, b, r1 * r1, ctl);
  auto f2 = specfun::hyper_pfq(a, b, r2 * r2, ctl);
  OverlapValue out;
  out.converged = f.converged && f1.converged && f2.converged;
  out.value = f.unit * std::exp(f.log_abs - 0.5 * (f1.log_abs + f2.log_abs));
  return out;
}

double eigen_residual(const Spectrum& spec, const FockState& state, Complex z) {
  const std::size_t dim = state.extent() + 1;
  const LadderRep rep = build_ladder(spec, state.alpha, dim);
  const Eigen::VectorXcd v = state.absolute(dim);
  const Eigen::VectorXcd lowered = apply(rep.lower, state).absolute(dim);
  return (lowered - z * v).norm();
}

// -----------------------------------------------------------------------------

FockState kp_state_pt(double lambda, const KPLabel& label, const TruncationOptions& opt, KpExponent exponent) {
  check_disk(label.xi);
  const double r = std::abs(label.xi);
  if (r == 0.0) return FockState::basis(label.k, label.alpha);
  const double lr = std::log(r), arg = std::arg(label.xi);
  auto term = [&](std::size_t n) {
    const double nd = static_cast<double>(n);
    return Term{2.0 * nd * lr + log_kp_gamma_ratio(lambda, n, label.k, exponent),
                angle_product(nd, arg) - angle_product(label.alpha, pt_energy(lambda, n + label.k))};
  };
  return assemble(term, label.k, label.alpha, opt.max_dim, opt.tail_tol);
}

SeriesValue kp_norm_constant_pt(double lambda, double xi2, std::size_t k, const SeriesControl& ctl) {
  if (!(xi2 >= 0.0 && xi2 < 1.0)) throw DomainError("kp_norm_constant_pt: |xi|^2 must lie in [0, 1)");
  const double kd = static_cast<double>(k);
  const double a[] = {lambda + kd + 1.0, kd + 1.0};
  const double b[] = {1.0};
  auto f = specfun::hyper_pfq(a, b, xi2, ctl);
  SeriesValue out;
  out.value = LogReal::from_log((lambda + 1.0) * std::log1p(-xi2) + specfun::log_factorial(k) +
                                std::lgamma(lambda + 1.0 + kd) - std::lgamma(lambda + 1.0) + f.log_abs);
  out.converged = f.converged;
  out.terms = f.terms;
  return out;
}

SeriesValue kp_norm_series_pt(double lambda, double xi2, std::size_t k, const SeriesControl& ctl,
                              KpExponent exponent) {
  if (!(xi2 >= 0.0 && xi2 < 1.0)) throw DomainError("kp_norm_series_pt: |xi|^2 must lie in [0, 1)");
  const double lx = xi2 > 0.0 ? std::log(xi2) : kNegInf;
  const double lam = exponent == KpExponent::Corrected ? lambda : 2.0 * lambda;
  auto term = [&](std::size_t n) {
    const double lm = n == 0 ? 0.0 : static_cast<double>(n) * lx;
    return std::pair<double, double>{lm == kNegInf ? kNegInf : lm + log_kp_gamma_ratio(lambda, n, k, exponent),
                                     1.0};
  };
  auto s = sum_series<double>(term, ctl);
  s.value.log_abs += (lam + 1.0) * std::log1p(-xi2);
  return s;
}

OverlapValue kp_overlap_pt(double lambda, const KPLabel& bra, const KPLabel& ket, const SeriesControl& ctl) {
  if (bra.k != ket.k) throw DomainError("kp_overlap_pt: labels must share k");
  check_disk(bra.xi);
  check_disk(ket.xi);
  const std::size_t k = bra.k;
  const double x1 = std::norm(bra.xi), x2 = std::norm(ket.xi);
  const auto n1 = kp_norm_series_pt(lambda, x1, k, ctl);
  const auto n2 = kp_norm_series_pt(lambda, x2, k, ctl);

  const Complex w = std::conj(bra.xi) * ket.xi;
  const double lw = std::abs(w) > 0.0 ? std::log(std::abs(w)) : kNegInf;
  const double aw = std::arg(w);
  const double dalpha = ket.alpha - bra.alpha;
  auto term = [&](std::size_t n) {
    const double nd = static_cast<double>(n);
    const double lm = n == 0 ? 0.0 : (lw == kNegInf ? kNegInf : nd * lw);
    const double ph = angle_product(nd, aw) - angle_product(dalpha, pt_energy(lambda, n + k));
    return std::pair<double, Complex>{lm == kNegInf ? kNegInf : lm + log_kp_gamma_ratio(lambda, n, k, KpExponent::Corrected),
                                      std::polar(1.0, ph)};
  };
  Complex unit{};
  auto s = sum_series<Complex>(term, ctl, &unit);
  // The (1 - |xi|^2)^{(lambda+1)/2} prefactors of the states cancel against those inside the norms.
  const double pre = 0.5 * (lambda + 1.0) * (std::log1p(-x1) + std::log1p(-x2));
  OverlapValue out;
  out.converged = s.converged && n1.converged && n2.converged;
  if (s.value.is_zero()) return out;
  out.value = unit * std::exp(s.value.log_abs + pre - 0.5 * (n1.value.log_abs + n2.value.log_abs));
  return out;
}

FockState kp_state_general(const Spectrum& spec, Complex z, double alpha, std::size_t k,
                           const TruncationOptions& opt, std::size_t jmax) {
  const double x = std::norm(z);
  if (x == 0.0) return FockState::basis(k, alpha);

  std::size_t limit = level_limit(spec, k, opt.max_dim);
  // The nested sums need energies up to level limit + jmax + 2.
  std::size_t m0 = limit + 1 + jmax;
  if (auto top = spec.max_level()) {
    if (*top < jmax + 4) throw OutOfRangeError("kp_state_general: spectrum table too short for jmax");
    if (m0 + 1 > *top) {
      m0 = *top - 1;
      limit = std::min(limit, m0 - 1 - jmax);
    }
  }
  spec.check_increasing(m0 + 1);

  // log T_j(m) with T_0(m) = 1 and T_j(m) = sum_{i=1}^{m} E_i T_{j-1}(i+1); S_j(n) = T_j(n+1).
  std::vector<std::vector<double>> log_t(jmax + 1);
  log_t[0].assign(m0 + 1, 0.0);
  std::vector<double> log_e(m0 + 2, kNegInf);
  for (std::size_t i = 1; i < log_e.size(); ++i) log_e[i] = std::log(spec.energy(i));
  for (std::size_t j = 1; j <= jmax; ++j) {
    const std::size_t mj = m0 - j;
    log_t[j].assign(mj + 1, kNegInf);
    for (std::size_t m = 1; m <= mj; ++m) log_t[j][m] = log_add_exp(log_t[j][m - 1], log_e[m] + log_t[j - 1][m + 1]);
  }

  FactorialMoments fm(spec, limit + k);
  const double lx = std::log(x), arg = std::arg(z);
  bool inner_ok = true;
  auto term = [&](std::size_t n) {
    ScaledSum<double> b;
    double last_rel = 1.0;
    for (std::size_t j = 0; j <= jmax; ++j) {
      const double jd = static_cast<double>(j);
      const double lm = jd * lx + log_t[j][n + 1] - std::lgamma(static_cast<double>(n + 2 * j) + 1.0);
      b.add(lm, (j % 2 == 0) ? 1.0 : -1.0);
      last_rel = std::exp(lm - b.log_abs());
    }
    if (last_rel > 1e-14) inner_ok = false;
    const double nd = static_cast<double>(n);
    return Term{nd * lx + fm.log_e0(n + k) + 2.0 * b.log_abs(), angle_product(nd, arg) - angle_product(alpha, spec.energy(n + k))};
  };
  FockState st = assemble(term, k, alpha, limit, opt.tail_tol);
  st.converged = st.converged && inner_ok;
  return st;
}

// -----------------------------------------------------------------------------

FockState evolve(const FockState& state, const Spectrum& spec, double t) {
  FockState out = state;
  out.alpha = state.alpha + t;
  // Phases are taken between the stored labels so the result is exactly the state labelled out.alpha.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double e = spec.energy(state.offset + i);
    out.coefficients[i] *= std::polar(1.0, angle_product(state.alpha, e) - angle_product(out.alpha, e));
  }
  return out;
}

PhotonStatistics photon_statistics(const FockState& state, const Spectrum& spec) {
  PhotonStatistics ps;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const std::size_t level = state.offset + i;
    const double p = std::norm(state.coefficients[i]);
    ps.distribution.emplace_back(level, p);
    ps.total_probability += p;
    ps.mean_level += p * static_cast<double>(level);
    ps.mean_energy += p * spec.energy(level);
  }
  return ps;
}

}  // namespace solvstate
