#include "enaqt/observables.hpp"

#include <cmath>
#include <sstream>

#include "enaqt/errors.hpp"

namespace enaqt {

namespace {

constexpr double kCurrentAgreement = 1e-10;

}  // namespace

double particle_flow(const DensityMatrix& rho, std::span<const Dissipator> channels,
                     const OperatorMatrix& total_number) {
  return (total_number * apply_dissipator_part(channels, rho)).trace().real();
}

double current_from_density(const DensityMatrix& rho, const Dissipator& extraction,
                            const FockBasis& basis) {
  double weight = 0.0;
  for (std::size_t s = 0; s < basis.dim(); ++s)
    if (basis.occupied(s, extraction.site)) weight += rho(s, s).real();
  return extraction.rate * weight;
}

double current(const DensityMatrix& rho, const Dissipator& extraction,
               const OperatorMatrix& total_number, const FockBasis& basis) {
  if (extraction.kind != DissipatorKind::Extract)
    throw ArgumentError("current: dissipator is not an extraction channel");
  const double j = -particle_flow(rho, std::span(&extraction, 1), total_number);
  const double shortcut = current_from_density(rho, extraction, basis);
  if (std::abs(j - shortcut) > kCurrentAgreement * std::max(1.0, std::abs(j))) {
    std::ostringstream os;
    os << "current: Tr(N L_ext[rho]) = " << -j << " disagrees with extraction-site density "
       << "formula " << shortcut;
    throw ConsistencyError(os.str());
  }
  return j;
}

Eigen::VectorXd site_populations(const DensityMatrix& rho, const FockBasis& basis) {
  Eigen::VectorXd n = Eigen::VectorXd::Zero(basis.n_sites());
  for (std::size_t s = 0; s < basis.dim(); ++s) {
    const double p = rho(s, s).real();
    for (int site : basis.occupied_sites(s)) n[site - 1] += p;
  }
  return n;
}

double delta_n(const Eigen::VectorXd& populations) {
  if (populations.size() == 0) return 0.0;
  const double mean = populations.mean();
  return (populations.array() - mean).square().mean();
}

Eigen::VectorXd eigenbasis_populations(const DensityMatrix& rho, const FockBasis& basis,
                                       const EigenStructure& eig) {
  if (basis.n_max() != 1)
    throw UnsupportedError("eigenbasis_populations: only defined for n_max = 1");
  const int L = basis.n_sites();
  if (eig.vectors.rows() != L) throw ArgumentError("eigenbasis_populations: L mismatch");
  // Single-exciton states occupy indices 1..L in site order.
  const Eigen::MatrixXcd block = rho.block(1, 1, L, L);
  const Eigen::MatrixXcd psi = eig.vectors.cast<Complex>();
  return (psi.adjoint() * block * psi).diagonal().real();
}

double exciton_number_analytic(double eta, int L, double gamma_ext, double gamma_deph, double t) {
  if (!(t > 0)) throw ArgumentError("exciton_number_analytic: t must be > 0");
  if (!(eta >= 0) || L < 1 || !(gamma_ext >= 0) || !(gamma_deph >= 0))
    throw ArgumentError("exciton_number_analytic: arguments must be non-negative");
  if (eta == 0.0) return 0.0;
  const double t2 = t * t;
  const double k = L + (L + 1) / 4.0 * gamma_ext * gamma_ext / t2 +
                   L * (L - 1) / 4.0 * gamma_ext * gamma_deph / t2;
  return eta / (eta + 1.0 / k);
}

ObservableSet compute_observables(const DensityMatrix& rho, const FockBasis& basis,
                                  std::span<const Dissipator> diss, const EigenStructure& eig) {
  ObservableSet obs;
  const OperatorMatrix total = total_number_op(basis);
  obs.J = current(rho, extraction_channel(diss), total, basis);
  obs.n = site_populations(rho, basis);
  obs.N_total = (total * rho).trace().real();
  obs.delta_n = delta_n(obs.n);
  if (basis.n_max() == 1) obs.eigen_pops = eigenbasis_populations(rho, basis, eig);
  obs.state_diagonal = rho.diagonal().real();
  return obs;
}

}  // namespace enaqt
