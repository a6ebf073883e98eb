#include "enaqt/fock.hpp"

#include <bit>
#include <sstream>

#include "enaqt/errors.hpp"

namespace enaqt {

namespace {

Occupation site_bit(int site) { return Occupation{1} << (site - 1); }

}  // namespace

FockBasis::FockBasis(int n_sites, int n_max) : n_sites_(n_sites), n_max_(n_max) {
  if (n_sites < 1 || n_sites > 63) {
    throw ArgumentError("FockBasis: site count must be in [1, 63], got " +
                        std::to_string(n_sites));
  }
  if (n_max != 1 && n_max != 2) {
    throw ArgumentError("FockBasis: n_max must be 1 or 2, got " + std::to_string(n_max));
  }

  states_.push_back(0);
  for (int i = 1; i <= n_sites; ++i) states_.push_back(site_bit(i));
  if (n_max == 2) {
    for (int i = 1; i <= n_sites; ++i)
      for (int j = i + 1; j <= n_sites; ++j) states_.push_back(site_bit(i) | site_bit(j));
  }

  index_.reserve(states_.size());
  for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k], k);
}

std::optional<std::size_t> FockBasis::index_of(Occupation occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FockBasis::particle_count(std::size_t k) const { return std::popcount(states_.at(k)); }

bool FockBasis::occupied(std::size_t k, int site) const {
  check_site(site);
  return (states_.at(k) & site_bit(site)) != 0;
}

std::vector<int> FockBasis::occupied_sites(std::size_t k) const {
  std::vector<int> sites;
  Occupation occ = states_.at(k);
  for (int i = 1; i <= n_sites_; ++i)
    if (occ & site_bit(i)) sites.push_back(i);
  return sites;
}

std::string FockBasis::label(std::size_t k) const {
  auto sites = occupied_sites(k);
  if (sites.empty()) return "0";
  std::ostringstream os;
  for (std::size_t n = 0; n < sites.size(); ++n) os << (n ? "," : "") << sites[n];
  return os.str();
}

void FockBasis::check_site(int site) const {
  if (site < 1 || site > n_sites_) {
    throw ArgumentError("site index " + std::to_string(site) + " outside [1, " +
                        std::to_string(n_sites_) + "]");
  }
}

FockBasis enumerate_basis(int n_sites, int n_max) { return FockBasis(n_sites, n_max); }

OperatorMatrix creation_op(const FockBasis& basis, int site) {
  basis.check_site(site);
  const auto d = static_cast<Eigen::Index>(basis.dim());
  OperatorMatrix op = OperatorMatrix::Zero(d, d);
  const Occupation bit = site_bit(site);
  for (Eigen::Index col = 0; col < d; ++col) {
    const Occupation from = basis.state(col);
    if (from & bit) continue;  // hard-core
    // States beyond n_max are absent from the index, which truncates.
    if (auto row = basis.index_of(from | bit)) op(static_cast<Eigen::Index>(*row), col) = 1.0;
  }
  return op;
}

OperatorMatrix annihilation_op(const FockBasis& basis, int site) {
  return creation_op(basis, site).adjoint();
}

OperatorMatrix number_op(const FockBasis& basis, int site) {
  basis.check_site(site);
  const auto d = static_cast<Eigen::Index>(basis.dim());
  OperatorMatrix op = OperatorMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    if (basis.occupied(k, site)) op(k, k) = 1.0;
  return op;
}

OperatorMatrix total_number_op(const FockBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  OperatorMatrix op = OperatorMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) op(k, k) = basis.particle_count(k);
  return op;
}

}  // namespace enaqt
