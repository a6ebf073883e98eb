#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "enaqt/lindblad.hpp"

namespace enaqt {

struct SteadyStateOptions {
  // Kernel residual bound, relative to max(1, ||L||_inf).
  double residual_tol = 1e-10;
  // A singular value below degeneracy_tol * max(1, ||block||_inf) counts as
  // zero, per decoupled block of L (a numerical-rank cut of ~50 eps).
  double degeneracy_tol = 1e-14;
  // Negative eigenvalues above -positivity_tol are clipped; below are errors.
  double positivity_tol = 1e-9;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;      // ||L vec(rho)||_inf
  double liouvillian_norm = 0.0;  // ||L||_inf
  // Estimates of the two smallest singular values of L: the relative residual
  // of the kernel vector, and the smallest singular value of the
  // trace-augmented system (a lower bound on sigma_2 that vanishes iff the
  // kernel is degenerate).
  double sigma_min = 0.0;
  double sigma_second = 0.0;
  bool well_separated = true;  // sigma_second / sigma_min >= 1e3
  bool clipped = false;
};

/// Real matrix of L in the orthonormal Hermitian basis
/// {|i><i|, (|i><j| + |j><i|)/sqrt2, i(|i><j| - |j><i|)/sqrt2}. The change of
/// basis is unitary, so singular values coincide with those of L.
/// Coordinates are laid out on the column-stacked grid: position i + j*d holds
/// the diagonal (i == j), real (i < j) or imaginary (i > j) component.
Eigen::MatrixXd hermitian_representation(const Liouvillian& liou);
Eigen::VectorXd to_hermitian_coordinates(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd from_hermitian_coordinates(const Eigen::VectorXd& x, Eigen::Index d);

// Exact two smallest singular values of L (full SVD; for diagnostics/tests).
std::pair<double, double> smallest_singular_values(const Liouvillian& liou);

// Index sets of the connected components of the coupling graph of `a`
// (i ~ j when a(i, j) != 0), ordered by smallest member. For the Liouvillians
// built here these are the sectors of fixed particle-number difference
// between the two sides of rho.
std::vector<std::vector<Eigen::Index>> coupled_blocks(const Eigen::MatrixXd& a);

/// Kernel of L with unit trace. The kernel is searched in the decoupled block
/// that carries the populations (where the uniform on-site energy cancels);
/// the remaining blocks are checked for singularity. Throws DegeneracyError
/// when the kernel is not one-dimensional and NumericError when positivity or
/// the residual bound fails.

SteadyState steady_state(const Liouvillian& liou, const SteadyStateOptions& options = {});

struct PropagationOptions {
  double dt = 0.0;  // <= 0: 0.1 / (||H||_inf + sum of rates), halved until runs agree
  double t_max = 100.0;
  double tol = 1e-10;  // stop once ||drho/dt||_inf < tol
  double step_agreement = 1e-8;
  int max_halvings = 8;
};

struct PropagationResult {
  DensityMatrix rho;
  bool converged = false;
  double residual = 0.0;  // ||drho/dt||_inf at the final state
  double time = 0.0;
  double dt = 0.0;
  long steps = 0;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
};

double default_time_step(const OperatorMatrix& h, std::span<const Dissipator> diss);

/// Fixed-step RK4 integration of the master equation in matrix form. Running
/// out of time is not an error: the result reports converged = false and the
/// residual reached.
PropagationResult propagate(const OperatorMatrix& h, std::span<const Dissipator> diss,
                            const DensityMatrix& rho0, const PropagationOptions& options = {});

DensityMatrix vacuum_state(Eigen::Index d);

}  // namespace enaqt
