#include "enaqt/solver.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "enaqt/errors.hpp"

namespace enaqt {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double hermiticity_error(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Smallest singular value of the factored (full column rank) matrix, by
// power iteration on (R^T R)^-1. For the trace-augmented Liouvillian this is
// zero iff the kernel is degenerate and otherwise bounds sigma_2(L) from below.
double smallest_singular_value_estimate(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr) {
  const Eigen::Index n = qr.cols();
  const auto r = qr.matrixQR().topLeftCorner(n, n).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k)
    if (qr.matrixQR()(k, k) == 0.0) return 0.0;
  Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXd w = r.transpose().solve(z);
    w = r.solve(w);
    const double next = w.norm();
    if (!std::isfinite(next)) return 0.0;
    z = w / next;
    const bool settled = std::abs(next - lambda) <= 1e-6 * next;
    lambda = next;
    if (settled) break;
  }
  return 1.0 / std::sqrt(lambda);
}

}  // namespace

Eigen::VectorXd to_hermitian_coordinates(const Eigen::MatrixXcd& rho) {
  const Eigen::Index d = rho.rows();
  Eigen::VectorXd x(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const Complex r = rho(i, j);
      x[i + j * d] = i == j ? r.real() : (i < j ? kSqrt2 * r.real() : kSqrt2 * r.imag());
    }
  return x;
}

Eigen::MatrixXcd from_hermitian_coordinates(const Eigen::VectorXd& x, Eigen::Index d) {
  if (x.size() != d * d) throw ArgumentError("from_hermitian_coordinates: length is not d^2");
  Eigen::MatrixXcd rho(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    rho(j, j) = x[j + j * d];
    for (Eigen::Index i = 0; i < j; ++i) {
      // (i, j) with i < j: real part at i + j*d, imaginary part of rho(j, i) at j + i*d.
      const double re = kInvSqrt2 * x[i + j * d];
      const double im_ji = kInvSqrt2 * x[j + i * d];
      rho(j, i) = Complex(re, im_ji);
      rho(i, j) = Complex(re, -im_ji);
    }
  }
  return rho;
}

Eigen::MatrixXd hermitian_representation(const Liouvillian& liou) {
  const Eigen::Index d = liou.dim;
  const Eigen::Index n = d * d;
  const Eigen::MatrixXcd& m = liou.matrix;
  if (m.rows() != n || m.cols() != n) throw ArgumentError("Liouvillian matrix is not d^2 x d^2");

  const Complex i_unit(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXcd y(n);
  for (Eigen::Index q = 0; q < d; ++q)
    for (Eigen::Index p = 0; p < d; ++p) {
      const Eigen::Index k = p + q * d;
      const Eigen::Index kt = q + p * d;
      // Image of the basis element attached to grid position (p, q).
      if (p == q) {
        y = m.col(k);
      } else if (p < q) {
        y = kInvSqrt2 * (m.col(k) + m.col(kt));
      } else {
        y = (kInvSqrt2 * i_unit) * (m.col(k) - m.col(kt));
      }
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
          const Complex v = y[i + j * d];
          a(i + j * d, k) = i == j ? v.real() : (i < j ? kSqrt2 * v.real() : kSqrt2 * v.imag());
        }
    }
  return a;
}

std::pair<double, double> smallest_singular_values(const Liouvillian& liou) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(hermitian_representation(liou));
  const Eigen::VectorXd& s = svd.singularValues();
  const Eigen::Index n = s.size();
  if (n < 2) return {s[n - 1], s[n - 1]};
  return {s[n - 1], s[n - 2]};
}

std::vector<std::vector<Eigen::Index>> coupled_blocks(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> parent(n);
  for (Eigen::Index k = 0; k < n; ++k) parent[k] = k;
  auto find = [&](Eigen::Index k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (a(i, j) != 0.0) {
        const Eigen::Index ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> block_of(n, -1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index root = find(k);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(k);
  }
  return blocks;
}

SteadyState steady_state(const Liouvillian& liou, const SteadyStateOptions& options) {
  const Eigen::Index d = liou.dim;
  const Eigen::Index n = d * d;
  const Eigen::MatrixXd a = hermitian_representation(liou);

  SteadyState out;
  out.liouvillian_norm = liou.norm_inf();

  // Population coordinates sit on the diagonal of the column-stacked grid.
  std::vector<bool> is_population(n, false);
  for (Eigen::Index i = 0; i < d; ++i) is_population[i + i * d] = true;

  // Split into the decoupled blocks of L. Blocks touching a population carry
  // the trace; every other block must be non-singular for a unique kernel.
  std::vector<Eigen::Index> trace_block;
  double sigma_second = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  for (const auto& block : coupled_blocks(a)) {
    const bool carries_trace = std::any_of(block.begin(), block.end(),
                                           [&](Eigen::Index k) { return is_population[k]; });
    if (carries_trace) {
      trace_block.insert(trace_block.end(), block.begin(), block.end());
      continue;
    }
    const Eigen::MatrixXd sub = a(block, block);
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    const double sigma = smallest_singular_value_estimate(qr);
    const double norm = sub.cwiseAbs().rowwise().sum().maxCoeff();
    sigma_second = std::min(sigma_second, sigma);
    degenerate = degenerate || sigma <= options.degeneracy_tol * std::max(1.0, norm);
  }
  std::sort(trace_block.begin(), trace_block.end());
  const auto m = static_cast<Eigen::Index>(trace_block.size());

  // Append the trace constraint and solve the overdetermined system in the
  // least-squares sense.
  const Eigen::MatrixXd sub = a(trace_block, trace_block);
  Eigen::MatrixXd augmented(m + 1, m);
  augmented.topRows(m) = sub;
  for (Eigen::Index k = 0; k < m; ++k) augmented(m, k) = is_population[trace_block[k]] ? 1.0 : 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs[m] = 1.0;

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(augmented);
  const Eigen::VectorXd y = qr.solve(rhs);
  const double sigma_trace = smallest_singular_value_estimate(qr);
  const double sub_norm = sub.cwiseAbs().rowwise().sum().maxCoeff();
  degenerate = degenerate || qr.rank() < m ||
               sigma_trace <= options.degeneracy_tol * std::max(1.0, sub_norm);

  out.sigma_second = std::min(sigma_second, sigma_trace);
  out.sigma_min = (sub * y).norm() / y.norm();
  out.well_separated = out.sigma_second >= 1e3 * out.sigma_min;

  if (degenerate) {
    std::ostringstream os;
    os << "steady_state: kernel is not one-dimensional (sigma_min ~ " << out.sigma_min
       << ", sigma_second ~ " << out.sigma_second << ", relative threshold "
       << options.degeneracy_tol << ")";
    throw DegeneracyError(os.str(), out.sigma_min, out.sigma_second);
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x(trace_block) = y;
  DensityMatrix rho = from_hermitian_coordinates(x, d);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  const double lowest = eig.eigenvalues().minCoeff();
  if (lowest < -options.positivity_tol) {
    std::ostringstream os;
    os << "steady_state: density matrix has eigenvalue " << lowest << " below -"
       << options.positivity_tol;
    throw NumericError(os.str());
  }
  if (lowest < 0.0) {
    const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
    rho = eig.eigenvectors() * clipped.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    out.clipped = true;
  }

  out.residual = liou.apply(vec(rho)).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, out.liouvillian_norm);
  if (out.residual > options.residual_tol * scale) {
    std::ostringstream os;
    os << "steady_state: kernel residual " << out.residual << " exceeds "
       << options.residual_tol * scale;
    throw NumericError(os.str());
  }
  out.rho = std::move(rho);
  return out;
}

DensityMatrix vacuum_state(Eigen::Index d) {
  DensityMatrix rho = DensityMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return rho;
}

double default_time_step(const OperatorMatrix& h, std::span<const Dissipator> diss) {
  double rates = 0.0;
  for (const auto& k : diss) rates += k.rate;
  const double hnorm = h.cwiseAbs().rowwise().sum().maxCoeff();
  return 0.1 / (hnorm + rates);
}

namespace {

/// Matrix-form right-hand side with the anti-commutator folded into a
/// non-Hermitian effective Hamiltonian: -i(Heff rho - rho Heff^dagger) plus
/// the jump sandwiches. Diagonal jumps reduce to an elementwise weight.
class LindbladRhs {
 public:
  LindbladRhs(const OperatorMatrix& h, std::span<const Dissipator> diss) : d_(h.rows()) {
    const Complex i_unit(0.0, 1.0);
    Eigen::MatrixXcd heff = h;
    diagonal_weight_ = Eigen::MatrixXcd::Zero(d_, d_);
    for (const auto& k : diss) {
      const Eigen::MatrixXcd& v = k.jump;
      heff -= 0.5 * i_unit * (v.adjoint() * v);
      if (v.isDiagonal(0.0)) {
        const Eigen::VectorXcd diag = v.diagonal();
        diagonal_weight_ += diag * diag.adjoint();
      } else {
        std::vector<Entry> entries;
        for (Eigen::Index c = 0; c < d_; ++c)
          for (Eigen::Index r = 0; r < d_; ++r)
            if (v(r, c) != Complex(0.0)) entries.push_back({r, c, v(r, c)});
        jumps_.push_back(std::move(entries));
      }
    }
    // -i * Heff and its adjoint partner, stored sparse.
    minus_i_heff_ = (-i_unit * heff).sparseView();
    plus_i_heff_adj_ = (i_unit * heff.adjoint()).sparseView();
  }

  Eigen::MatrixXcd operator()(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out = minus_i_heff_ * rho;
    out += rho * plus_i_heff_adj_;
    out += diagonal_weight_.cwiseProduct(rho);
    for (const auto& entries : jumps_)
      for (const auto& e1 : entries)
        for (const auto& e2 : entries) out(e1.row, e2.row) += e1.value * rho(e1.col, e2.col) * std::conj(e2.value);
    return out;
  }

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };
  Eigen::Index d_;
  Eigen::SparseMatrix<Complex> minus_i_heff_;
  Eigen::SparseMatrix<Complex> plus_i_heff_adj_;
  Eigen::MatrixXcd diagonal_weight_;
  std::vector<std::vector<Entry>> jumps_;
};

PropagationResult integrate(const LindbladRhs& rhs, const DensityMatrix& rho0, double dt,
                            double t_max, double tol) {
  PropagationResult res;
  res.dt = dt;
  DensityMatrix rho = rho0;
  Eigen::MatrixXcd k1 = rhs(rho);
  auto track = [&](const DensityMatrix& r) {
    res.max_trace_error = std::max(res.max_trace_error, std::abs(r.trace() - Complex(1.0)));
    res.max_hermiticity_error = std::max(res.max_hermiticity_error, hermiticity_error(r));
  };
  track(rho);
  double time = 0.0;
  res.residual = k1.cwiseAbs().maxCoeff();
  while (res.residual >= tol && time < t_max) {
    const Eigen::MatrixXcd k2 = rhs(rho + (0.5 * dt) * k1);
    const Eigen::MatrixXcd k3 = rhs(rho + (0.5 * dt) * k2);
    const Eigen::MatrixXcd k4 = rhs(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    time += dt;
    ++res.steps;
    track(rho);
    k1 = rhs(rho);
    res.residual = k1.cwiseAbs().maxCoeff();
  }
  res.converged = res.residual < tol;
  res.time = time;
  res.rho = std::move(rho);
  return res;
}

}  // namespace

PropagationResult propagate(const OperatorMatrix& h, std::span<const Dissipator> diss,
                            const DensityMatrix& rho0, const PropagationOptions& options) {
  const Eigen::Index d = h.rows();
  if (rho0.rows() != d || rho0.cols() != d)
    throw ArgumentError("propagate: rho0 dimension does not match H");
  for (const auto& k : diss)
    if (k.jump.rows() != d || k.jump.cols() != d)
      throw ArgumentError("propagate: jump operator dimension does not match H");
  if (!(options.t_max > 0) || !(options.tol > 0))
    throw ArgumentError("propagate: t_max and tol must be positive");

  const LindbladRhs rhs(h, diss);
  if (options.dt > 0) return integrate(rhs, rho0, options.dt, options.t_max, options.tol);

  // Default step, halved until consecutive runs agree.
  double dt = default_time_step(h, diss);
  PropagationResult coarse = integrate(rhs, rho0, dt, options.t_max, options.tol);
  for (int halving = 0; halving < options.max_halvings; ++halving) {
    dt *= 0.5;
    PropagationResult fine = integrate(rhs, rho0, dt, options.t_max, options.tol);
    const double diff = (fine.rho - coarse.rho).cwiseAbs().maxCoeff();
    const bool finite = fine.rho.allFinite() && coarse.rho.allFinite();
    coarse = std::move(fine);
    if (finite && diff <= options.step_agreement) break;
  }
  return coarse;
}

}  // namespace enaqt
