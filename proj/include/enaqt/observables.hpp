#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "enaqt/fock.hpp"
#include "enaqt/lindblad.hpp"
#include "enaqt/model.hpp"

namespace enaqt {

/// Current and particle bookkeeping sign convention: Tr(N L_ext[rho]) is the
/// rate of change of <N> due to extraction and is negative. `current` reports
/// its magnitude, J = -Tr(N L_ext[rho]) >= 0.
double current(const DensityMatrix& rho, const Dissipator& extraction,
               const OperatorMatrix& total_number, const FockBasis& basis);

// gamma_ext * sum of rho(s, s) over states s occupying the extraction site.
double current_from_density(const DensityMatrix& rho, const Dissipator& extraction,
                            const FockBasis& basis);

// Tr(N L_k[rho]) summed over the given channels (signed).
double particle_flow(const DensityMatrix& rho, std::span<const Dissipator> channels,
                     const OperatorMatrix& total_number);

Eigen::VectorXd site_populations(const DensityMatrix& rho, const FockBasis& basis);

// (1/L) sum_i (n_i - mean)^2
double delta_n(const Eigen::VectorXd& populations);

// p_n = <psi_n| rho_single |psi_n> over the single-exciton block. n_max = 1 only.
Eigen::VectorXd eigenbasis_populations(const DensityMatrix& rho, const FockBasis& basis,
                                       const EigenStructure& eig);

/// Closed-form mean exciton number of an end-driven chain in the one-exciton
/// space: <N> = eta / (eta + 1/K) with
/// K = L + (L+1)/4 * g_ext^2/t^2 + L(L-1)/4 * g_ext*g_deph/t^2.
double exciton_number_analytic(double eta, int L, double gamma_ext, double gamma_deph, double t);

struct ObservableSet {
  double J = 0.0;
  Eigen::VectorXd n;  // site populations
  double N_total = 0.0;
  double delta_n = 0.0;
  Eigen::VectorXd eigen_pops;  // empty when n_max = 2
  Eigen::VectorXd state_diagonal;
};

ObservableSet compute_observables(const DensityMatrix& rho, const FockBasis& basis,
                                  std::span<const Dissipator> diss, const EigenStructure& eig);

}  // namespace enaqt
