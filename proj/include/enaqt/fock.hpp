#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace enaqt {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;

// Occupation bit-vector: bit (i-1) set <=> site i holds an exciton.
using Occupation = std::uint64_t;

/// Restricted hard-core exciton Fock space: at most one exciton per site and
/// at most `n_max` excitons in total.
///
/// States are ordered by particle number, then lexicographically by the tuple
/// of occupied sites, so state 0 is always the vacuum. Sites are 1-based
/// throughout the public interface.
class FockBasis {
 public:
  FockBasis(int n_sites, int n_max);

  int n_sites() const { return n_sites_; }
  int n_max() const { return n_max_; }
  std::size_t dim() const { return states_.size(); }

  const std::vector<Occupation>& states() const { return states_; }
  Occupation state(std::size_t k) const { return states_.at(k); }
  std::optional<std::size_t> index_of(Occupation occ) const;

  int particle_count(std::size_t k) const;
  bool occupied(std::size_t k, int site) const;
  std::vector<int> occupied_sites(std::size_t k) const;

  // "0" for the vacuum, "3" for a single exciton on site 3, "1,2" for a pair.
  std::string label(std::size_t k) const;

  void check_site(int site) const;

 private:
  int n_sites_;
  int n_max_;
  std::vector<Occupation> states_;
  std::unordered_map<Occupation, std::size_t> index_;
};

FockBasis enumerate_basis(int n_sites, int n_max);

// Hard-core bosonic ladder operators; all nonzero amplitudes are +1.
OperatorMatrix creation_op(const FockBasis& basis, int site);
OperatorMatrix annihilation_op(const FockBasis& basis, int site);
OperatorMatrix number_op(const FockBasis& basis, int site);
OperatorMatrix total_number_op(const FockBasis& basis);

}  // namespace enaqt
