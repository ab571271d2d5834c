#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "solvstate/specfun.hpp"
#include "solvstate/spectrum.hpp"

namespace solvstate {

using Complex = std::complex<double>;

/// Truncated matrices of the ladder operators on the basis |psi_0> ... |psi_{dim-1}>.
///
///   a-|psi_n> = sqrt(E_n)     exp(+i alpha (E_n - E_{n-1}))   |psi_{n-1}>
///   a+|psi_n> = sqrt(E_{n+1}) exp(-i alpha (E_{n+1} - E_n))   |psi_{n+1}>
///   a0|psi_n> = (E_{n+1} - E_n) |psi_n>
///
/// The last row and column of any product are corrupted by the hard truncation.
struct LadderRep {
  std::size_t dim = 0;
  double alpha = 0.0;
  Eigen::MatrixXcd lower;
  Eigen::MatrixXcd raise;
  Eigen::MatrixXcd a0;
};

LadderRep build_ladder(const Spectrum& spec, double alpha, std::size_t dim);

/// Coefficients c_n of a state sum_n c_n |psi_{n+offset}>, truncated after
/// coefficients.size() terms. tail_bound estimates the squared-norm mass that
/// the truncation dropped.
struct FockState {
  std::size_t offset = 0;
  double alpha = 0.0;
  std::vector<Complex> coefficients;
  double tail_bound = 0.0;
  bool converged = true;

  std::size_t size() const { return coefficients.size(); }
  /// Highest absolute level held plus one.
  std::size_t extent() const { return offset + coefficients.size(); }
  double norm_squared() const;
  /// Amplitude on absolute level n (zero outside the stored window).
  Complex amplitude(std::size_t level) const;
  Eigen::VectorXcd absolute(std::size_t dim) const;

  static FockState basis(std::size_t level, double alpha = 0.0);
};

/// <bra|ket> over absolute levels.
Complex inner_product(const FockState& bra, const FockState& ket);

/// Largest |amplitude difference| over absolute levels.
double max_coefficient_deviation(const FockState& x, const FockState& y);

/// op * state, with op acting on absolute levels 0..op.rows()-1. Result has offset 0.
FockState apply(const Eigen::MatrixXcd& op, const FockState& state);

/// Truncation cap: SOLVSTATE_MAX_N when set to a positive integer, otherwise 2048.
std::size_t default_max_dim();

struct TruncationOptions {
  double tail_tol = 1e-30;  ///< squared-norm mass allowed beyond the truncation
  std::size_t initial_dim = 32;
  std::size_t max_dim = default_max_dim();
};

/// exp(Z a+ - conj(Z) a-)|psi_0> by Taylor application of the generator to the
/// ground vector, in substeps of |Z| <= 1/4. The dimension doubles until the
/// mass in the top eighth of the basis is below opt.tail_tol; reaching
/// opt.max_dim first yields converged == false.
FockState displace_ground(const Spectrum& spec, Complex z, double alpha, const TruncationOptions& opt = {},
                          const specfun::SeriesControl& ctl = {.max_terms = 400, .rel_tol = 1e-16,
                                                               .consecutive_small = 5});

}  // namespace solvstate
