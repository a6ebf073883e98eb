#include "enaqt/model.hpp"

#include <cmath>
#include <string>

#include "enaqt/errors.hpp"

namespace enaqt {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits.
double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

void ChainSpec::validate() const {
  auto fail = [](const std::string& what) { throw ArgumentError("ChainSpec: " + what); };
  if (L < 1) fail("L must be >= 1");
  if (n_max != 1 && n_max != 2) fail("n_max must be 1 or 2");
  if (!(t >= 0)) fail("t must be >= 0");
  if (!(W >= 0)) fail("W must be >= 0");
  if (!(gamma_inj >= 0) || !(gamma_ext >= 0) || !(gamma_deph >= 0)) fail("rates must be >= 0");
  if (i_inj < 1 || i_inj > L) fail("i_inj outside [1, L]");
  if (i_ext < 1 || i_ext > L) fail("i_ext outside [1, L]");
  if (barrier && (barrier->site < 1 || barrier->site > L)) fail("barrier site outside [1, L]");
  if (t0 && !(*t0 >= 0)) fail("t0 must be >= 0");
  if (!std::isfinite(eps0) || !std::isfinite(U)) fail("eps0 and U must be finite");
}

double ChainSpec::hopping_amplitude(int i, int j) const {
  const int dist = std::abs(i - j);
  if (dist == 0) return 0.0;
  if (hopping == HoppingKind::NearestNeighbor) return dist == 1 ? t : 0.0;
  return t0.value_or(t) / dist;
}

double ChainSpec::barrier_offset(int site) const {
  return (barrier && barrier->site == site) ? barrier->height : 0.0;
}

DisorderRealization sample_disorder(const ChainSpec& spec, std::uint64_t master_seed,
                                    std::uint64_t realization_index) {
  DisorderRealization real;
  real.seed = splitmix64(master_seed ^ splitmix64(realization_index));
  real.xi.resize(spec.L);
  for (int i = 0; i < spec.L; ++i) {
    const double u = unit_interval(splitmix64(real.seed + kGolden * static_cast<std::uint64_t>(i + 1)));
    real.xi[i] = spec.W * (u - 0.5);
  }
  return real;
}

DisorderRealization no_disorder(const ChainSpec& spec) {
  return DisorderRealization{0, Eigen::VectorXd::Zero(spec.L)};
}

Eigen::MatrixXd single_particle_hamiltonian(const ChainSpec& spec,
                                            const DisorderRealization& real) {
  if (real.xi.size() != spec.L) throw ArgumentError("disorder realization length != L");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(spec.L, spec.L);
  for (int i = 1; i <= spec.L; ++i) {
    h(i - 1, i - 1) = spec.eps0 + real.xi[i - 1] + spec.barrier_offset(i);
    for (int j = i + 1; j <= spec.L; ++j) {
      const double tij = spec.hopping_amplitude(i, j);
      h(i - 1, j - 1) = -tij;
      h(j - 1, i - 1) = -tij;
    }
  }
  return h;
}

OperatorMatrix build_hamiltonian(const ChainSpec& spec, const DisorderRealization& real,
                                 const FockBasis& basis) {
  spec.validate();
  if (basis.n_sites() != spec.L || basis.n_max() != spec.n_max)
    throw ArgumentError("build_hamiltonian: basis does not match ChainSpec (L, n_max)");
  if (real.xi.size() != spec.L) throw ArgumentError("disorder realization length != L");

  const auto d = static_cast<Eigen::Index>(basis.dim());
  std::vector<OperatorMatrix> create, annihilate, number;
  for (int i = 1; i <= spec.L; ++i) {
    create.push_back(creation_op(basis, i));
    annihilate.push_back(create.back().adjoint());
    number.push_back(number_op(basis, i));
  }

  OperatorMatrix h = OperatorMatrix::Zero(d, d);
  for (int i = 1; i <= spec.L; ++i) {
    h += (spec.eps0 + real.xi[i - 1] + spec.barrier_offset(i)) * number[i - 1];
    for (int j = i + 1; j <= spec.L; ++j) {
      const double tij = spec.hopping_amplitude(i, j);
      if (tij == 0.0) continue;
      h -= tij * (create[i - 1] * annihilate[j - 1] + create[j - 1] * annihilate[i - 1]);
    }
  }
  // n_i n_{i+1} is Hermitian already; counted once.
  if (spec.U != 0.0) {
    for (int i = 1; i < spec.L; ++i) h += spec.U * number[i - 1] * number[i];
  }
  return h;
}

EigenStructure eigen_decompose(const ChainSpec& spec, const DisorderRealization& real) {
  const Eigen::MatrixXd h = single_particle_hamiltonian(spec, real);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigen_decompose: eigensolver did not converge (L=" +
                       std::to_string(spec.L) + ", W=" + std::to_string(spec.W) +
                       ", max|h|=" + std::to_string(h.cwiseAbs().maxCoeff()) + ")");
  }
  return EigenStructure{solver.eigenvalues(), solver.eigenvectors()};
}

double ipr(const EigenStructure& eig) {
  return 1.0 / eig.vectors.array().square().square().sum();
}

}  // namespace enaqt
