#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "enaqt/fock.hpp"
#include "enaqt/model.hpp"

namespace enaqt {

using DensityMatrix = Eigen::MatrixXcd;

enum class DissipatorKind { Dephase, Inject, Extract };

// One Lindblad channel: jump = sqrt(rate) * {n_site | e_site^dagger | e_site}.
struct Dissipator {
  DissipatorKind kind;
  int site;
  double rate;
  OperatorMatrix jump;
};

// L dephasing channels (one per site, including i_inj and i_ext), then the
// injection channel, then the extraction channel.
std::vector<Dissipator> build_dissipators(const ChainSpec& spec, const FockBasis& basis);

std::vector<Dissipator> select(std::span<const Dissipator> diss, DissipatorKind kind);
const Dissipator& extraction_channel(std::span<const Dissipator> diss);

/// Superoperator acting on column-stacked density matrices:
/// vec(rho)[i + j*d] = rho(i, j).
struct Liouvillian {
  Eigen::Index dim = 0;  // d; the matrix is d^2 x d^2
  Eigen::MatrixXcd matrix;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix * v; }
  double norm_inf() const;
};

Eigen::VectorXcd vec(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index d);

// -i[H, .] + sum_k (V_k . V_k^dagger - 1/2 {V_k^dagger V_k, .}) assembled from
// Kronecker products.
Liouvillian build_liouvillian(const OperatorMatrix& h, std::span<const Dissipator> diss);

// sum_k (V_k rho V_k^dagger - 1/2 {V_k^dagger V_k, rho}) in matrix form.
Eigen::MatrixXcd apply_dissipator_part(std::span<const Dissipator> diss,
                                       const Eigen::MatrixXcd& rho);

// Full right-hand side of the master equation in matrix form.
Eigen::MatrixXcd lindblad_rhs(const OperatorMatrix& h, std::span<const Dissipator> diss,
                              const Eigen::MatrixXcd& rho);

}  // namespace enaqt
