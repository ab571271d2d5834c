#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "solvstate/fockspace.hpp"
#include "solvstate/logreal.hpp"
#include "solvstate/specfun.hpp"
#include "solvstate/spectrum.hpp"

namespace solvstate {

/// Label of a (photon-added) Gazeau-Klauder state |z, alpha, k>.
struct GKLabel {
  Complex z;
  double alpha = 0.0;
  std::size_t k = 0;
};

/// Label of a Poschl-Teller Klauder-Perelomov state in the unit-disk chart, |xi| < 1.
struct KPLabel {
  Complex xi;
  double alpha = 0.0;
  std::size_t k = 0;
};

/// Which Gamma argument the photon-added KP coefficients use. Corrected is
/// Gamma(n+k+lambda+1)/Gamma(lambda+1), the result of applying (a+)^k to the
/// k = 0 state. DoubledLambda is the Gamma(n+k+2 lambda+1)/Gamma(2 lambda+1)
/// variant, kept for errata reproduction.
enum class KpExponent { Corrected, DoubledLambda };

struct SeriesValue {
  LogReal value;
  bool converged = false;
  std::size_t terms = 0;
};

struct OverlapValue {
  Complex value;
  bool converged = false;
};

/// xi = (Z/|Z|) tanh|Z|.
Complex xi_from_z(Complex z);

// -- Gazeau-Klauder -----------------------------------------------------------

/// c_n ~ z^n exp(-i alpha E_{n+k}) / sqrt(E_k(n)) on |psi_{n+k}>, normalized by the summed series.
/// Throws DomainError when |z|^2 lies beyond a finite radius of convergence.
FockState gk_state(const Spectrum& spec, const GKLabel& label, const TruncationOptions& opt = {});

/// A_k(|z|^2) = sum_n |z|^{2n} / E_k(n).
SeriesValue gk_norm_constant(const Spectrum& spec, double z2, std::size_t k, const specfun::SeriesControl& ctl = {});

/// Gamma(k+1) 2F3(k+1, lambda+k+1; 1, lambda+1, lambda+1; |z|^2). This differs from
/// gk_norm_constant on the same spectrum by the constant factor (lambda+1)_k.
SeriesValue gk_norm_constant_closed_pt(double lambda, double z2, std::size_t k, const specfun::SeriesControl& ctl = {});

/// <bra|ket> by direct series.
OverlapValue gk_overlap(const Spectrum& spec, const GKLabel& bra, const GKLabel& ket,
                        const specfun::SeriesControl& ctl = {});

/// Compact 2F3 kernel for equal alpha. Throws DomainError when alphas differ.
OverlapValue gk_overlap_closed_pt(double lambda, const GKLabel& bra, const GKLabel& ket,
                                  const specfun::SeriesControl& ctl = {});

/// || a- |state> - z |state> ||, computed with the ladder matrices of the state's alpha.
double eigen_residual(const Spectrum& spec, const FockState& state, Complex z);

// -- Klauder-Perelomov ---------------------------------------------------------

/// Poschl-Teller KP state with k added excitations. Throws DomainError for |xi| >= 1.
FockState kp_state_pt(double lambda, const KPLabel& label, const TruncationOptions& opt = {},
                      KpExponent exponent = KpExponent::Corrected);

/// Closed form (1-x)^{lambda+1} Gamma(k+1) Gamma(lambda+1+k)/Gamma(lambda+1) 2F1(lambda+k+1, k+1; 1; x).
SeriesValue kp_norm_constant_pt(double lambda, double xi2, std::size_t k, const specfun::SeriesControl& ctl = {});

/// Direct sum of the squared unnormalized coefficients, including the (1-x)^{lambda+1} prefactor.
SeriesValue kp_norm_series_pt(double lambda, double xi2, std::size_t k, const specfun::SeriesControl& ctl = {},
                              KpExponent exponent = KpExponent::Corrected);

OverlapValue kp_overlap_pt(double lambda, const KPLabel& bra, const KPLabel& ket,
                           const specfun::SeriesControl& ctl = {});

/// KP state for a general spectrum from the nested energy sums, with the inner
/// j-series truncated at jmax. An inner series that has not settled by jmax
/// flags the result as unconverged.
FockState kp_state_general(const Spectrum& spec, Complex z, double alpha, std::size_t k,
                           const TruncationOptions& opt = {}, std::size_t jmax = 40);

// -- Dynamics and statistics ---------------------------------------------------

/// c_n -> exp(-i t E_{n+k}) c_n, alpha -> alpha + t. The phase step is measured between the rounded
/// labels, so t is effectively (alpha + t) - alpha.
FockState evolve(const FockState& state, const Spectrum& spec, double t);

struct PhotonStatistics {
  std::vector<std::pair<std::size_t, double>> distribution;  ///< (level n+k, probability)
  double total_probability = 0.0;
  double mean_level = 0.0;
  double mean_energy = 0.0;
};

PhotonStatistics photon_statistics(const FockState& state, const Spectrum& spec);

}  // namespace solvstate
