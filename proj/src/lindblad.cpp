#include "enaqt/lindblad.hpp"

#include <cmath>
#include <string>

#include "enaqt/errors.hpp"

namespace enaqt {

namespace {

// out += scale * kron(a, b), skipping structural zeros of a.
void add_kron(Eigen::MatrixXcd& out, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
              Complex scale) {
  const Eigen::Index rb = b.rows(), cb = b.cols();
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      out.block(i * rb, j * cb, rb, cb) += (scale * aij) * b;
    }
}

void check_dim(std::string_view where, Eigen::Index expected, const Eigen::MatrixXcd& m) {
  if (m.rows() != expected || m.cols() != expected) {
    throw ArgumentError(std::string(where) + ": dimension mismatch, expected " +
                        std::to_string(expected) + "x" + std::to_string(expected) + ", got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

std::vector<Dissipator> build_dissipators(const ChainSpec& spec, const FockBasis& basis) {
  spec.validate();
  if (basis.n_sites() != spec.L || basis.n_max() != spec.n_max)
    throw ArgumentError("build_dissipators: basis does not match ChainSpec (L, n_max)");

  std::vector<Dissipator> diss;
  diss.reserve(spec.L + 2);
  const double deph = std::sqrt(spec.gamma_deph);
  for (int i = 1; i <= spec.L; ++i)
    diss.push_back({DissipatorKind::Dephase, i, spec.gamma_deph, deph * number_op(basis, i)});
  diss.push_back({DissipatorKind::Inject, spec.i_inj, spec.gamma_inj,
                  std::sqrt(spec.gamma_inj) * creation_op(basis, spec.i_inj)});
  diss.push_back({DissipatorKind::Extract, spec.i_ext, spec.gamma_ext,
                  std::sqrt(spec.gamma_ext) * annihilation_op(basis, spec.i_ext)});
  return diss;
}

std::vector<Dissipator> select(std::span<const Dissipator> diss, DissipatorKind kind) {
  std::vector<Dissipator> out;
  for (const auto& d : diss)
    if (d.kind == kind) out.push_back(d);
  return out;
}

const Dissipator& extraction_channel(std::span<const Dissipator> diss) {
  for (const auto& d : diss)
    if (d.kind == DissipatorKind::Extract) return d;
  throw ArgumentError("no extraction channel in dissipator list");
}

double Liouvillian::norm_inf() const { return matrix.cwiseAbs().rowwise().sum().maxCoeff(); }

Eigen::VectorXcd vec(const Eigen::MatrixXcd& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
  if (v.size() != d * d) throw ArgumentError("unvec: vector length is not d^2");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

Liouvillian build_liouvillian(const OperatorMatrix& h, std::span<const Dissipator> diss) {
  const Eigen::Index d = h.rows();
  check_dim("build_liouvillian (H)", d, h);
  for (const auto& k : diss) check_dim("build_liouvillian (jump)", d, k.jump);

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const Complex i_unit(0.0, 1.0);

  Liouvillian liou{d, Eigen::MatrixXcd::Zero(d * d, d * d)};
  Eigen::MatrixXcd& m = liou.matrix;
  add_kron(m, id, h, -i_unit);
  add_kron(m, h.transpose(), id, i_unit);
  for (const auto& k : diss) {
    const Eigen::MatrixXcd& v = k.jump;
    const Eigen::MatrixXcd vdv = v.adjoint() * v;
    add_kron(m, v.conjugate(), v, 1.0);
    add_kron(m, id, vdv, -0.5);
    add_kron(m, vdv.transpose(), id, -0.5);
  }
  return liou;
}

Eigen::MatrixXcd apply_dissipator_part(std::span<const Dissipator> diss,
                                       const Eigen::MatrixXcd& rho) {
  const Eigen::Index d = rho.rows();
  check_dim("apply_dissipator_part (rho)", d, rho);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& k : diss) {
    check_dim("apply_dissipator_part (jump)", d, k.jump);
    const Eigen::MatrixXcd& v = k.jump;
    const Eigen::MatrixXcd vdv = v.adjoint() * v;
    out += v * rho * v.adjoint() - 0.5 * (vdv * rho + rho * vdv);
  }
  return out;
}

Eigen::MatrixXcd lindblad_rhs(const OperatorMatrix& h, std::span<const Dissipator> diss,
                              const Eigen::MatrixXcd& rho) {
  check_dim("lindblad_rhs (H)", rho.rows(), h);
  const Complex i_unit(0.0, 1.0);
  return -i_unit * (h * rho - rho * h) + apply_dissipator_part(diss, rho);
}

}  // namespace enaqt
