#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solvstate/logreal.hpp"

namespace solvstate {

/// An exactly solvable, nondegenerate spectrum 0 = E_0 < E_1 < E_2 < ...
///
/// Three kinds are supported: the Poschl-Teller family E_n = n(n + lambda)
/// with lambda = kappa + kappa', the harmonic oscillator E_n = n, and custom
/// spectra given either as a finite table or as a closed-form rule. Values are
/// immutable after construction and safe to share between threads.
class Spectrum {
 public:
  enum class Kind { PoschlTeller, HarmonicOscillator, Custom };
  using Rule = std::function<double(std::size_t)>;

  static Spectrum poschl_teller(double kappa, double kappa_prime);
  /// Symmetric split kappa = kappa' = lambda / 2.
  static Spectrum poschl_teller_lambda(double lambda);
  static Spectrum harmonic();
  /// Table must start with 0; strict increase is validated lazily.
  static Spectrum from_table(std::vector<double> energies);
  static Spectrum from_rule(Rule rule, std::string name = "custom");

  Kind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  double kappa_prime() const { return kappa_prime_; }
  double lambda() const { return kappa_ + kappa_prime_; }
  const std::string& name() const { return name_; }

  /// E_n. Throws OutOfRangeError beyond a table.
  double energy(std::size_t n) const;

  /// Highest level available, or nullopt for unbounded kinds.
  std::optional<std::size_t> max_level() const;

  /// Throws DomainError unless E_0 = 0 and E_0 < E_1 < ... < E_{n_max}.
  void check_increasing(std::size_t n_max) const;

  /// True when the factorial moments of this kind grow factorially (radius is infinite by construction).
  bool has_known_infinite_radius() const { return kind_ != Kind::Custom; }

 private:
  Spectrum() = default;

  Kind kind_ = Kind::HarmonicOscillator;
  double kappa_ = 0.0;
  double kappa_prime_ = 0.0;
  std::shared_ptr<const std::vector<double>> table_;
  Rule rule_;
  std::string name_;
};

/// Eagerly computed log E_0(n) = log(E_1 ... E_n) for n <= n_max.
class FactorialMoments {
 public:
  FactorialMoments(const Spectrum& spec, std::size_t n_max);

  std::size_t n_max() const { return log_e0_.size() - 1; }
  double log_e0(std::size_t n) const;
  /// log E_k(n) = 2 log E_0(n) - log E_0(n + k).
  double log_ek(std::size_t k, std::size_t n) const;

 private:
  std::vector<double> log_e0_;
};

double energy(const Spectrum& spec, std::size_t n);

/// E_0(n) = E_n E_{n-1} ... E_1, with E_0(0) = 1.
LogReal e0_product(const Spectrum& spec, std::size_t n);

/// E_k(n) = E_0(n)^2 / E_0(n + k).
LogReal ek_moment(const Spectrum& spec, std::size_t k, std::size_t n);

struct RadiusOptions {
  double divergence_threshold = 1e6;  ///< ratio beyond which a monotone increase counts as divergence
  double settle_tol = 1e-10;          ///< relative change that counts as settled
};

struct Radius {
  enum class Status { Finite, Infinite, Undetermined };
  Status status = Status::Undetermined;
  double value = 0.0;  ///< limit estimate when Finite
};

/// Estimate of lim E_k(n)^{1/n} from the ratios E_k(n+1)/E_k(n) = E_{n+1}^2 / E_{n+k+1}, n < n_probe.
Radius radius(const Spectrum& spec, std::size_t k, std::size_t n_probe, const RadiusOptions& opt = {});

}  // namespace solvstate
