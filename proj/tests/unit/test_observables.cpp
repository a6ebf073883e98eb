#include <doctest.h>

#include "enaqt/errors.hpp"
#include "enaqt/observables.hpp"
#include "enaqt/solver.hpp"

using namespace enaqt;

namespace {

struct Solved {
  FockBasis basis;
  std::vector<Dissipator> diss;
  DensityMatrix rho;
  EigenStructure eig;
};

Solved solve(const ChainSpec& s, std::uint64_t r = 0) {
  FockBasis b(s.L, s.n_max);
  const auto real = sample_disorder(s, 1, r);
  auto diss = build_dissipators(s, b);
  auto rho = steady_state(build_liouvillian(build_hamiltonian(s, real, b), diss)).rho;
  return {std::move(b), std::move(diss), std::move(rho), eigen_decompose(s, real)};
}

}  // namespace

TEST_CASE("delta_n") {
  CHECK(delta_n(Eigen::Vector2d(1, 0)) == doctest::Approx(0.25));
  CHECK(delta_n(Eigen::VectorXd::Constant(7, 0.3)) == doctest::Approx(0.0));
}

TEST_CASE("vacuum has no population") {
  const FockBasis b(7, 2);
  CHECK(site_populations(vacuum_state(b.dim()), b).isZero());
}

TEST_CASE("zero extraction rate gives zero current") {
  ChainSpec s;
  s.gamma_ext = 0;
  s.gamma_deph = 10;
  const FockBasis b(7, 1);
  const auto diss = build_dissipators(s, b);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(8, 1.0 / 8);
  const DensityMatrix rho = p.cast<Complex>().asDiagonal();
  CHECK(current(rho, extraction_channel(diss), total_number_op(b), b) == 0.0);
  CHECK_THROWS_AS(current(rho, diss.front(), total_number_op(b), b), ArgumentError);
}

TEST_CASE("particle balance and observable invariants") {
  for (int n_max : {1, 2})
    for (double W : {0.0, 2.5})
      for (double g : {0.0, 30.0, 1000.0}) {
        ChainSpec s;
        s.n_max = n_max;
        s.W = W * s.t;
        s.gamma_deph = g;
        s.U = n_max == 2 ? 20 * s.t : 0;
        const auto sol = solve(s, 2);
        const auto N = total_number_op(sol.basis);
        const double J = current(sol.rho, extraction_channel(sol.diss), N, sol.basis);
        const double inflow = particle_flow(sol.rho, select(sol.diss, DissipatorKind::Inject), N);
        CHECK(std::abs(inflow - J) <= 1e-9 * std::max(1.0, J));
        CHECK(std::abs(particle_flow(sol.rho, select(sol.diss, DissipatorKind::Dephase), N)) < 1e-9);

        const auto obs = compute_observables(sol.rho, sol.basis, sol.diss, sol.eig);
        CHECK(obs.n.minCoeff() >= -1e-12);
        CHECK(obs.n.maxCoeff() <= 1 + 1e-12);
        CHECK(std::abs(obs.N_total - obs.n.sum()) <= 1e-10);
        CHECK(obs.N_total <= n_max + 1e-12);
        if (n_max == 1) {
          CHECK(std::abs(obs.eigen_pops.sum() - (1 - sol.rho(0, 0).real())) <= 1e-10);
        } else {
          CHECK(obs.eigen_pops.size() == 0);
        }
      }
}

TEST_CASE("eigen-space populations") {
  ChainSpec s;
  const FockBasis b(7, 1);
  const auto eig = eigen_decompose(s, no_disorder(s));
  DensityMatrix rho = DensityMatrix::Zero(8, 8);
  const Eigen::VectorXcd psi3 = eig.vectors.col(2).cast<Complex>();
  rho.block(1, 1, 7, 7) = psi3 * psi3.adjoint();
  const auto p = eigenbasis_populations(rho, b, eig);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(7);
  unit[2] = 1;
  CHECK((p - unit).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(eigenbasis_populations(DensityMatrix::Zero(29, 29), FockBasis(7, 2), eig), UnsupportedError);

  // Clean chain with a node at the drain: the node state dominates.
  const auto sol = solve(s);
  const auto pops = eigenbasis_populations(sol.rho, sol.basis, sol.eig);
  Eigen::Index best;
  CHECK(pops.maxCoeff(&best) > 0.5);
  CHECK(std::abs(sol.eig.vectors(5, best)) < 1e-10);
}

TEST_CASE("eigen-space populations spread with disorder") {
  auto participation = [](const Eigen::VectorXd& p) {
    const Eigen::VectorXd q = p / p.sum();
    return 1.0 / q.array().square().sum();
  };
  ChainSpec s;
  const auto clean = solve(s);
  const double clean_pr = participation(eigenbasis_populations(clean.rho, clean.basis, clean.eig));
  s.W = 20 * s.t;
  double disordered_pr = 0;
  const int R = 50;
  for (int r = 0; r < R; ++r) {
    const auto sol = solve(s, r);
    disordered_pr += participation(eigenbasis_populations(sol.rho, sol.basis, sol.eig)) / R;
  }
  CHECK(disordered_pr > clean_pr);
}

TEST_CASE("population profiles") {
  ChainSpec s;
  s.gamma_deph = 1e4;
  const auto high = solve(s);
  const Eigen::VectorXd n = site_populations(high.rho, high.basis);
  for (int i = 1; i < s.i_ext; ++i) CHECK(n[i] < n[i - 1]);

  // Near the current maximum the profile is flatter than without dephasing.
  s.gamma_deph = 30;
  const auto mid = solve(s);
  s.gamma_deph = 0;
  const auto zero = solve(s);
  CHECK(delta_n(site_populations(mid.rho, mid.basis)) < delta_n(site_populations(zero.rho, zero.basis)));
}

TEST_CASE("analytic exciton number") {
  CHECK(exciton_number_analytic(0, 7, 17, 0, 145) == 0.0);
  CHECK_THROWS_AS(exciton_number_analytic(1, 7, 17, 0, 0), ArgumentError);
  const double K = 7 + 2 * (17.0 / 145) * (17.0 / 145);
  CHECK(K == doctest::Approx(7.0275).epsilon(1e-4));
  CHECK(exciton_number_analytic(1, 7, 17, 0, 145) == doctest::Approx(K / (K + 1)).epsilon(1e-14));
  CHECK(exciton_number_analytic(1, 7, 17, 0, 145) == doctest::Approx(0.8754).epsilon(1e-4));

  // Numerical cross-check for the end-driven wire.
  for (double g : {0.0, 30.0, 100.0, 1000.0}) {
    ChainSpec s;
    s.i_ext = 7;
    s.gamma_deph = g;
    const auto sol = solve(s);
    const double N = (total_number_op(sol.basis) * sol.rho).trace().real();
    CHECK(std::abs(N / exciton_number_analytic(1, 7, 17, g, 145) - 1) < 0.01);
  }
}
