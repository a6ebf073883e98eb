#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "enaqt/fock.hpp"

namespace enaqt {

enum class HoppingKind { NearestNeighbor, LongRange };

struct Barrier {
  int site = 4;
  double height = 0.0;  // s^-1, added to the on-site energy
};

/// Physical description of an open chain. All energies and rates in s^-1;
/// sites are 1-based.
struct ChainSpec {
  int L = 7;
  double eps0 = 43000.0;
  double t = 145.0;
  double W = 0.0;  // disorder strength, xi_i ~ U[-W/2, W/2]
  HoppingKind hopping = HoppingKind::NearestNeighbor;
  std::optional<double> t0;  // long-range amplitude, defaults to t
  double U = 0.0;            // nearest-neighbour pair interaction
  std::optional<Barrier> barrier;
  double gamma_inj = 17.0;
  double gamma_ext = 17.0;
  double gamma_deph = 0.0;
  int i_inj = 1;
  int i_ext = 6;
  int n_max = 1;

  void validate() const;

  // Magnitude of the hopping between sites i != j (enters H with a minus sign).
  double hopping_amplitude(int i, int j) const;
  double barrier_offset(int site) const;
};

struct DisorderRealization {
  std::uint64_t seed = 0;
  Eigen::VectorXd xi;  // xi[i-1] for site i
};

// Counter-based draw: the result depends only on (master_seed,
// realization_index), never on call order.
DisorderRealization sample_disorder(const ChainSpec& spec, std::uint64_t master_seed,
                                    std::uint64_t realization_index);
DisorderRealization no_disorder(const ChainSpec& spec);

// L x L single-particle matrix: eps0 + xi_i + barrier on the diagonal,
// -t_ij off the diagonal.
Eigen::MatrixXd single_particle_hamiltonian(const ChainSpec& spec,
                                            const DisorderRealization& real);

OperatorMatrix build_hamiltonian(const ChainSpec& spec, const DisorderRealization& real,
                                 const FockBasis& basis);

struct EigenStructure {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column n is psi_n, vectors(i-1, n) = psi_n(i)
};

EigenStructure eigen_decompose(const ChainSpec& spec, const DisorderRealization& real);

// (sum_{n,i} |psi_n(i)|^4)^-1
double ipr(const EigenStructure& eig);

}  // namespace enaqt
