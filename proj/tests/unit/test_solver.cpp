#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "enaqt/errors.hpp"
#include "enaqt/observables.hpp"
#include "enaqt/solver.hpp"

using namespace enaqt;

namespace {

struct System {
  FockBasis basis;
  OperatorMatrix h;
  std::vector<Dissipator> diss;
  Liouvillian liou;
};

System make(const ChainSpec& s, std::uint64_t realization = 0) {
  FockBasis b(s.L, s.n_max);
  auto h = build_hamiltonian(s, sample_disorder(s, 1, realization), b);
  auto diss = build_dissipators(s, b);
  auto liou = build_liouvillian(h, diss);
  return {std::move(b), std::move(h), std::move(diss), std::move(liou)};
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

void check_density_matrix(const SteadyState& ss, const Liouvillian& liou) {
  CHECK(max_abs(liou.apply(vec(ss.rho))) <= 1e-10 * std::max(1.0, liou.norm_inf()));
  CHECK(std::abs(ss.rho.trace() - Complex(1)) <= 1e-10);
  CHECK(max_abs(ss.rho - ss.rho.adjoint()) <= 1e-10);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(ss.rho).eigenvalues().minCoeff() >= -1e-9);
}

}  // namespace

TEST_CASE("two-state steady state") {
  ChainSpec s;
  s.L = 1;
  s.i_ext = 1;
  const auto sys = make(s);
  const auto ss = steady_state(sys.liou);
  CHECK(std::abs(ss.rho(0, 0).real() - 0.5) < 1e-12);
  CHECK(std::abs(ss.rho(1, 1).real() - 0.5) < 1e-12);
  const double J = current(ss.rho, extraction_channel(sys.diss), total_number_op(sys.basis), sys.basis);
  CHECK(J == doctest::Approx(8.5).epsilon(1e-12));
}

TEST_CASE("Hermitian coordinates are an isometry") {
  ChainSpec s = ChainSpec{};
  s.L = 3;
  s.gamma_deph = 5;
  s.i_ext = 3;
  const auto sys = make(s);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Random(4, 4);
  rho = (rho + rho.adjoint()).eval();
  const auto x = to_hermitian_coordinates(rho);
  CHECK(x.norm() == doctest::Approx(rho.norm()));
  CHECK(max_abs(from_hermitian_coordinates(x, 4) - rho) < 1e-14);
  // A x equals the coordinates of L[rho].
  const Eigen::MatrixXd a = hermitian_representation(sys.liou);
  const auto expected = to_hermitian_coordinates(unvec(sys.liou.apply(vec(rho)), 4));
  CHECK((a * x - expected).cwiseAbs().maxCoeff() < 1e-10 * sys.liou.norm_inf());
  // Singular values of the real form equal those of L.
  const auto sv_real = Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues();
  const auto sv_complex = Eigen::BDCSVD<Eigen::MatrixXcd>(sys.liou.matrix).singularValues();
  CHECK((sv_real - sv_complex).cwiseAbs().maxCoeff() < 1e-9 * sys.liou.norm_inf());
}

TEST_CASE("coupled blocks split by particle-number difference") {
  ChainSpec s;
  s.L = 3;
  s.i_ext = 3;
  s.gamma_deph = 1;
  const auto sys = make(s);
  const auto blocks = coupled_blocks(hermitian_representation(sys.liou));
  // n_max = 1, d = 4. H is real, so within Delta N = 0 the vacuum, the three
  // populations and the imaginary parts of the three coherences form one
  // block; the real parts of those coherences form another.
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  CHECK(total == 16);
  CHECK(blocks.front().size() == 7);
  const auto re12 = std::find_if(blocks.begin(), blocks.end(), [](const auto& b) {
    return std::find(b.begin(), b.end(), 1 + 2 * 4) != b.end();
  });
  REQUIRE(re12 != blocks.end());
  CHECK(re12->size() == 3);
}

TEST_CASE("steady state invariants on presets") {
  for (int n_max : {1, 2})
    for (double W : {0.0, 1.0, 10.0})
      for (double g : {0.0, 30.0, 1000.0})
        for (int i_ext : {5, 6, 7}) {
          if (n_max == 2 && W == 10.0 && g == 0.0) continue;
          ChainSpec s;
          s.n_max = n_max;
          s.W = W * s.t;
          s.gamma_deph = g;
          s.i_ext = i_ext;
          s.U = n_max == 2 ? 30 * s.t : 0.0;
          const auto sys = make(s, 3);
          check_density_matrix(steady_state(sys.liou), sys.liou);
        }
}

TEST_CASE("uniqueness margin on ordered presets") {
  for (int i_ext : {5, 6, 7}) {
    ChainSpec s;
    s.i_ext = i_ext;
    const auto sys = make(s);
    const auto [s1, s2] = smallest_singular_values(sys.liou);
    CHECK(s1 < 1e-10 * sys.liou.norm_inf());
    CHECK(s2 > 1e-6 * sys.liou.norm_inf());
    const auto ss = steady_state(sys.liou);
    CHECK(ss.well_separated);
    CHECK(ss.sigma_second <= s2 * (1 + 1e-6));
  }
}

TEST_CASE("near-trapped two-exciton states are reported as degenerate") {
  // Strong disorder, no dephasing: a pair localized away from the extraction
  // site leaks out at a rate far below the tolerance.
  ChainSpec s;
  s.n_max = 2;
  s.W = 10 * s.t;
  s.U = 30 * s.t;
  s.i_ext = 7;
  const auto sys = make(s);
  CHECK_THROWS_AS(steady_state(sys.liou), DegeneracyError);
}

TEST_CASE("degenerate kernel is reported") {
  // No injection or extraction: every diagonal state is stationary.
  ChainSpec s;
  s.L = 3;
  s.i_ext = 3;
  s.gamma_inj = s.gamma_ext = 0;
  s.gamma_deph = 1;
  const auto sys = make(s);
  CHECK_THROWS_AS(steady_state(sys.liou), DegeneracyError);
  try {
    steady_state(sys.liou);
  } catch (const DegeneracyError& e) {
    CHECK(e.sigma_second() < 1e-12);
  }
}

TEST_CASE("global energy shift invariance") {
  for (int n_max : {1, 2}) {
    ChainSpec s;
    s.n_max = n_max;
    s.W = 2 * s.t;
    s.gamma_deph = 30;
    s.U = 10 * s.t;
    ChainSpec shifted = s;
    shifted.eps0 = s.eps0 + 12345.0;
    const auto a = make(s, 4), b = make(shifted, 4);
    const auto ra = steady_state(a.liou).rho, rb = steady_state(b.liou).rho;
    CHECK(max_abs(ra - rb) < 1e-9);
    const double ja = current(ra, extraction_channel(a.diss), total_number_op(a.basis), a.basis);
    const double jb = current(rb, extraction_channel(b.diss), total_number_op(b.basis), b.basis);
    CHECK(std::abs(ja - jb) <= 1e-9 * std::abs(ja));
  }
}

TEST_CASE("propagation: analytic dephasing decay") {
  ChainSpec s;
  s.L = 1;
  s.i_ext = 1;
  s.gamma_inj = s.gamma_ext = 0;
  s.gamma_deph = 4.0;
  const FockBasis b(1, 1);
  const auto diss = build_dissipators(s, b);
  DensityMatrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;
  PropagationOptions opt;
  opt.t_max = 3 / s.gamma_deph;
  opt.dt = opt.t_max / 3000;
  opt.tol = 1e-300;
  const auto res = propagate(OperatorMatrix::Zero(2, 2), diss, rho0, opt);
  CHECK(std::abs(res.rho(0, 1) - 0.5 * std::exp(-s.gamma_deph * res.time / 2)) < 1e-8);
  CHECK_FALSE(res.converged);
}

TEST_CASE("propagation from the steady state converges immediately") {
  ChainSpec s;
  s.eps0 = 0;
  s.L = 4;
  s.i_ext = 4;
  s.gamma_deph = 30;
  const auto sys = make(s);
  const auto ss = steady_state(sys.liou);
  PropagationOptions opt;
  opt.tol = 1e-8;
  const auto res = propagate(sys.h, sys.diss, ss.rho, opt);
  CHECK(res.converged);
  CHECK(res.steps == 0);
}

TEST_CASE("kernel solver matches propagation") {
  // eps0 = 0 keeps the time step large; shift invariance is tested separately.
  for (int n_max : {1, 2})
    for (double g : {0.0, 30.0, 1000.0}) {
      ChainSpec s;
      s.eps0 = 0;
      s.L = 4;
      s.i_ext = 4;
      s.n_max = n_max;
      s.gamma_deph = g;
      const auto sys = make(s);
      const auto ss = steady_state(sys.liou);
      PropagationOptions opt;
      opt.t_max = 400;
      const auto res = propagate(sys.h, sys.diss, vacuum_state(sys.basis.dim()), opt);
      CHECK(res.converged);
      CHECK(res.max_trace_error <= 1e-8);
      CHECK(res.max_hermiticity_error <= 1e-10);
      CHECK(max_abs(res.rho - ss.rho) <= 1e-6);
    }
}

TEST_CASE("L=7 ordered chain: J > 0 and kernel matches propagation") {
  ChainSpec s;
  s.eps0 = 0;
  s.i_ext = 7;
  const auto sys = make(s);
  const auto ss = steady_state(sys.liou);
  const double J = current(ss.rho, extraction_channel(sys.diss), total_number_op(sys.basis), sys.basis);
  CHECK(J > 0.1);
  PropagationOptions opt;
  opt.t_max = 400;
  const auto res = propagate(sys.h, sys.diss, vacuum_state(sys.basis.dim()), opt);
  CHECK(res.converged);
  CHECK(max_abs(res.rho - ss.rho) <= 1e-6);
}
