#include "solvstate/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solvstate/errors.hpp"

namespace solvstate {

Spectrum Spectrum::poschl_teller(double kappa, double kappa_prime) {
  if (!(kappa + kappa_prime > 0.0)) throw DomainError("Poschl-Teller spectrum needs lambda = kappa + kappa' > 0");
  Spectrum s;
  s.kind_ = Kind::PoschlTeller;
  s.kappa_ = kappa;
  s.kappa_prime_ = kappa_prime;
  s.name_ = "poschl_teller";
  return s;
}

Spectrum Spectrum::poschl_teller_lambda(double lambda) { return poschl_teller(0.5 * lambda, 0.5 * lambda); }

Spectrum Spectrum::harmonic() {
  Spectrum s;
  s.kind_ = Kind::HarmonicOscillator;
  s.name_ = "harmonic";
  return s;
}

Spectrum Spectrum::from_table(std::vector<double> energies) {
  if (energies.empty() || energies.front() != 0.0) throw DomainError("custom spectrum: E_0 must be exactly 0");
  Spectrum s;
  s.kind_ = Kind::Custom;
  s.table_ = std::make_shared<const std::vector<double>>(std::move(energies));
  s.name_ = "custom";
  return s;
}

Spectrum Spectrum::from_rule(Rule rule, std::string name) {
  if (!rule) throw DomainError("custom spectrum: empty rule");
  if (rule(0) != 0.0) throw DomainError("custom spectrum: E_0 must be exactly 0");
  Spectrum s;
  s.kind_ = Kind::Custom;
  s.rule_ = std::move(rule);
  s.name_ = std::move(name);
  return s;
}

double Spectrum::energy(std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::PoschlTeller:
      return nd * (nd + lambda());
    case Kind::HarmonicOscillator:
      return nd;
    case Kind::Custom:
      if (table_) {
        if (n >= table_->size())
          throw OutOfRangeError("custom spectrum: level " + std::to_string(n) + " beyond table of " +
                                std::to_string(table_->size()) + " energies");
        return (*table_)[n];
      }
      return rule_(n);
  }
  return 0.0;
}

std::optional<std::size_t> Spectrum::max_level() const {
  if (kind_ == Kind::Custom && table_) return table_->size() - 1;
  return std::nullopt;
}

void Spectrum::check_increasing(std::size_t n_max) const {
  if (kind_ != Kind::Custom) return;
  double prev = energy(0);
  if (prev != 0.0) throw DomainError("spectrum: E_0 must be exactly 0");
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double e = energy(n);
    if (!(e > prev))
      throw DomainError("spectrum: energies not strictly increasing at level " + std::to_string(n));
    prev = e;
  }
}

// ---------------------------------------------------------------------------

FactorialMoments::FactorialMoments(const Spectrum& spec, std::size_t n_max) {
  spec.check_increasing(n_max);
  log_e0_.resize(n_max + 1);
  log_e0_[0] = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) log_e0_[n] = log_e0_[n - 1] + std::log(spec.energy(n));
}

double FactorialMoments::log_e0(std::size_t n) const {
  if (n >= log_e0_.size()) throw OutOfRangeError("FactorialMoments: level beyond precomputed range");
  return log_e0_[n];
}

double FactorialMoments::log_ek(std::size_t k, std::size_t n) const {
  return 2.0 * log_e0(n) - log_e0(n + k);
}

double energy(const Spectrum& spec, std::size_t n) { return spec.energy(n); }

LogReal e0_product(const Spectrum& spec, std::size_t n) {
  return LogReal::from_log(FactorialMoments(spec, n).log_e0(n));
}

LogReal ek_moment(const Spectrum& spec, std::size_t k, std::size_t n) {
  return LogReal::from_log(FactorialMoments(spec, n + k).log_ek(k, n));
}

Radius radius(const Spectrum& spec, std::size_t k, std::size_t n_probe, const RadiusOptions& opt) {
  if (n_probe < 2) throw DomainError("radius: n_probe must be at least 2");
  std::vector<double> ratio(n_probe);
  for (std::size_t n = 0; n < n_probe; ++n) {
    const double e1 = spec.energy(n + 1);
    ratio[n] = std::exp(2.0 * std::log(e1) - std::log(spec.energy(n + k + 1)));
  }

  const std::size_t window = std::max<std::size_t>(3, n_probe / 2);
  const std::size_t start = n_probe > window ? n_probe - window : 0;
  std::vector<double> d;
  for (std::size_t i = start + 1; i < n_probe; ++i) d.push_back(ratio[i] - ratio[i - 1]);

  Radius out;
  bool up = true, down = true;
  for (double di : d) {
    if (di < 0) up = false;
    if (di > 0) down = false;
  }
  if (!up && !down) return out;

  const double last = ratio.back();
  const double dl = d.empty() ? 0.0 : d.back();
  if (up && !down) {
    if (last > opt.divergence_threshold) {
      out.status = Radius::Status::Infinite;
      return out;
    }
    bool nondecreasing_steps = d.size() >= 2;
    for (std::size_t i = 1; i < d.size(); ++i)
      if (d[i] < d[i - 1] * (1.0 - 1e-12)) nondecreasing_steps = false;
    if (nondecreasing_steps) {
      out.status = Radius::Status::Infinite;
      return out;
    }
  }
  out.status = Radius::Status::Finite;
  if (std::fabs(dl) <= opt.settle_tol * std::fabs(last) || d.size() < 2) {
    out.value = last;
    return out;
  }
  // Aitken-style extrapolation of a geometrically settling sequence.
  const double q = dl / d[d.size() - 2];
  if (q > 0.0 && q < 1.0) {
    out.value = last + dl * q / (1.0 - q);
  } else {
    out.status = Radius::Status::Undetermined;
  }
  return out;
}

}  // namespace solvstate
