#include "solvstate/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "solvstate/errors.hpp"

namespace solvstate {

LadderRep build_ladder(const Spectrum& spec, double alpha, std::size_t dim) {
  if (dim < 2) throw DomainError("build_ladder: dimension must be at least 2");
  spec.check_increasing(dim);
  LadderRep rep;
  rep.dim = dim;
  rep.alpha = alpha;
  rep.lower = Eigen::MatrixXcd::Zero(dim, dim);
  rep.a0 = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) {
    const double en = spec.energy(n), em = spec.energy(n - 1);
    rep.lower(n - 1, n) = std::polar(std::sqrt(en), alpha * (en - em));
  }
  rep.raise = rep.lower.adjoint();
  for (std::size_t n = 0; n < dim; ++n) rep.a0(n, n) = spec.energy(n + 1) - spec.energy(n);
  return rep;
}

double FockState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return s;
}

Complex FockState::amplitude(std::size_t level) const {
  if (level < offset || level >= extent()) return {};
  return coefficients[level - offset];
}

Eigen::VectorXcd FockState::absolute(std::size_t dim) const {
  if (extent() > dim) throw DimensionError("FockState: state extends beyond " + std::to_string(dim) + " levels");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (std::size_t i = 0; i < coefficients.size(); ++i) v(offset + i) = coefficients[i];
  return v;
}

FockState FockState::basis(std::size_t level, double alpha) {
  FockState s;
  s.offset = level;
  s.alpha = alpha;
  s.coefficients = {Complex{1.0, 0.0}};
  return s;
}

Complex inner_product(const FockState& bra, const FockState& ket) {
  const std::size_t lo = std::max(bra.offset, ket.offset);
  const std::size_t hi = std::min(bra.extent(), ket.extent());
  Complex s{};
  for (std::size_t n = lo; n < hi; ++n) s += std::conj(bra.amplitude(n)) * ket.amplitude(n);
  return s;
}

double max_coefficient_deviation(const FockState& x, const FockState& y) {
  const std::size_t lo = std::min(x.offset, y.offset);
  const std::size_t hi = std::max(x.extent(), y.extent());
  double m = 0.0;
  for (std::size_t n = lo; n < hi; ++n) m = std::max(m, std::abs(x.amplitude(n) - y.amplitude(n)));
  return m;
}

FockState apply(const Eigen::MatrixXcd& op, const FockState& state) {
  if (op.rows() != op.cols()) throw DimensionError("apply: operator must be square");
  const auto dim = static_cast<std::size_t>(op.rows());
  if (state.extent() > dim) throw DimensionError("apply: state does not fit the operator dimension");

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  double col_bound = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const Complex c = state.coefficients[j];
    const auto col = static_cast<Eigen::Index>(state.offset + j);
    col_bound = std::max(col_bound, op.col(col).norm());
    if (c == Complex{}) continue;
    out += op.col(col) * c;
  }
  FockState r;
  r.alpha = state.alpha;
  r.coefficients.assign(out.data(), out.data() + out.size());
  r.tail_bound = state.tail_bound * col_bound * col_bound;
  r.converged = state.converged;
  return r;
}

std::size_t default_max_dim() {
  if (const char* env = std::getenv("SOLVSTATE_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 1) return static_cast<std::size_t>(v);
  }
  return 2048;
}

FockState displace_ground(const Spectrum& spec, Complex z, double alpha, const TruncationOptions& opt,
                          const specfun::SeriesControl& ctl) {
  ctl.validate();
  FockState st;
  st.alpha = alpha;
  if (z == Complex{}) {
    st.coefficients = {Complex{1.0, 0.0}};
    return st;
  }

  const std::size_t cap = std::max<std::size_t>(opt.max_dim, 4);
  // A finite table limits the basis as well as the cap.
  std::size_t dim = std::clamp<std::size_t>(opt.initial_dim, 4, cap);
  if (auto top = spec.max_level()) dim = std::min(dim, *top + 1);

  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(z) / 0.25)));
  const Complex zs = z / static_cast<double>(steps);

  for (;;) {
    spec.check_increasing(dim - 1);
    // up[n]: a+ matrix element from level n to n+1.
    std::vector<Complex> up(dim - 1);
    for (std::size_t n = 0; n + 1 < dim; ++n) {
      const double e1 = spec.energy(n + 1), e0 = spec.energy(n);
      up[n] = std::polar(std::sqrt(e1), -alpha * (e1 - e0));
    }
    auto generate = [&](const std::vector<Complex>& v) {
      std::vector<Complex> w(dim);
      for (std::size_t n = 0; n + 1 < dim; ++n) {
        w[n + 1] += zs * up[n] * v[n];
        w[n] -= std::conj(zs) * std::conj(up[n]) * v[n + 1];
      }
      return w;
    };
    auto norm = [](const std::vector<Complex>& v) {
      double s = 0.0;
      for (const auto& c : v) s += std::norm(c);
      return std::sqrt(s);
    };

    std::vector<Complex> v(dim);
    v[0] = 1.0;
    std::size_t total_terms = 0;
    bool taylor_ok = true;
    for (int s = 0; s < steps; ++s) {
      std::vector<Complex> acc = v, term = v;
      std::size_t small = 0;
      bool done = false;
      for (std::size_t j = 1; j < ctl.max_terms; ++j) {
        term = generate(term);
        for (auto& c : term) c /= static_cast<double>(j);
        for (std::size_t n = 0; n < dim; ++n) acc[n] += term[n];
        ++total_terms;
        if (norm(term) < ctl.rel_tol * norm(acc)) {
          if (++small >= ctl.consecutive_small) {
            done = true;
            break;
          }
        } else {
          small = 0;
        }
      }
      taylor_ok = taylor_ok && done;
      v = std::move(acc);
    }

    const std::size_t edge = std::max<std::size_t>(4, dim / 8);
    double boundary = 0.0;
    for (std::size_t n = dim - edge; n < dim; ++n) boundary += std::norm(v[n]);

    const bool at_cap = dim >= cap || (spec.max_level() && dim >= *spec.max_level() + 1);
    if (boundary <= opt.tail_tol || at_cap) {
      st.coefficients = std::move(v);
      st.tail_bound = boundary + 64.0 * 2.2e-16 * static_cast<double>(total_terms + dim);
      st.converged = taylor_ok && boundary <= opt.tail_tol;
      return st;
    }
    dim = std::min(dim * 2, cap);
    if (auto top = spec.max_level()) dim = std::min(dim, *top + 1);
  }
}

}  // namespace solvstate
