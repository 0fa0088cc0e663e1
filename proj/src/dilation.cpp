#include "qi/dilation.hpp"

#include <cmath>
#include <string>

namespace qi {

MeasurementDilation::MeasurementDilation(Eigen::Index sys_dim,
                                         Eigen::Index aux_dim,
                                         DensityOperator sigma,
                                         UnitaryOperator v, SharpObservable q)
    : sys_dim_(sys_dim),
      aux_dim_(aux_dim),
      sigma_(std::move(sigma)),
      v_(std::move(v)),
      q_(std::move(q)) {
  if (sys_dim_ < 1 || aux_dim_ < 1)
    throw ShapeError("MeasurementDilation: dimensions must be positive");
  if (sigma_.dim() != aux_dim_)
    throw ShapeError("MeasurementDilation: sigma must live on the auxiliary space");
  if (v_.dim() != sys_dim_ * aux_dim_)
    throw ShapeError("MeasurementDilation: V must act on sys_dim·aux_dim");
  if (q_.dim() != aux_dim_)
    throw ShapeError("MeasurementDilation: Q must live on the auxiliary space");
}

ComplexMatrix post_measurement_state(const MeasurementDilation& d,
                                     const DensityOperator& rho) {
  if (rho.dim() != d.sys_dim())
    throw ShapeError("post_measurement_state: dimension mismatch");
  const ComplexMatrix joint = tensor_product(rho.matrix(), d.sigma().matrix());
  const ComplexMatrix evolved =
      d.v().matrix() * joint * d.v().matrix().adjoint();
  const Eigen::Index total = d.sys_dim() * d.aux_dim();
  const ComplexMatrix eye_sys =
      ComplexMatrix::Identity(d.sys_dim(), d.sys_dim());
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (const HermitianOperator& qn : d.q().projections()) {
    const ComplexMatrix sandwich = tensor_product(eye_sys, qn.matrix());
    out += sandwich * evolved * sandwich;
  }
  return (out + out.adjoint()) / 2.0;
}

std::vector<double> branch_probabilities(const MeasurementDilation& d,
                                         const DensityOperator& rho) {
  if (rho.dim() != d.sys_dim())
    throw ShapeError("branch_probabilities: dimension mismatch");
  const ComplexMatrix joint = tensor_product(rho.matrix(), d.sigma().matrix());
  const ComplexMatrix evolved =
      d.v().matrix() * joint * d.v().matrix().adjoint();
  const ComplexMatrix eye_sys =
      ComplexMatrix::Identity(d.sys_dim(), d.sys_dim());
  std::vector<double> p;
  p.reserve(d.q().size());
  for (const HermitianOperator& qn : d.q().projections()) {
    const ComplexMatrix proj = tensor_product(eye_sys, qn.matrix());
    p.push_back(std::max((proj * evolved).trace().real(), 0.0));
  }
  return p;
}

namespace {

// Orthonormal columns spanning the range of a projector.
std::vector<ComplexVector> projector_basis(const HermitianOperator& p) {
  EigenDecomposition eig = hermitian_eig(p);
  std::vector<ComplexVector> basis;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > 0.5)
      basis.push_back(eig.eigenvectors.matrix().col(i));
  return basis;
}

std::vector<std::string> index_labels(std::size_t count) {
  std::vector<std::string> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = std::to_string(i);
  return labels;
}

// Deterministic completion shared by extend_partial_isometry and
// standard_dilation; `positions` lists the column slots of the given vectors.
ComplexMatrix complete_to_unitary(const std::vector<ComplexVector>& columns,
                                  Eigen::Index total_dim,
                                  const std::vector<Eigen::Index>& positions) {
  const std::size_t given = columns.size();
  if (given > static_cast<std::size_t>(total_dim))
    throw ShapeError("extend_partial_isometry: more columns than dimensions");
  for (std::size_t a = 0; a < given; ++a) {
    if (columns[a].size() != total_dim)
      throw ShapeError("extend_partial_isometry: column length mismatch");
    for (std::size_t b = 0; b <= a; ++b) {
      const Complex overlap = columns[b].dot(columns[a]);
      const double target = (a == b) ? 1.0 : 0.0;
      if (std::abs(overlap - target) > tol::unitary)
        throw ValidationError("extend_partial_isometry: columns not orthonormal");
    }
  }

  std::vector<ComplexVector> accumulated(columns);
  std::vector<ComplexVector> completion;
  for (Eigen::Index i = 0;
       i < total_dim &&
       accumulated.size() < static_cast<std::size_t>(total_dim);
       ++i) {
    ComplexVector r = ComplexVector::Zero(total_dim);
    r(i) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const ComplexVector& u : accumulated) r -= u.dot(r) * u;
    const double norm = r.norm();
    if (norm <= 1e-8) continue;
    r /= norm;
    accumulated.push_back(r);
    completion.push_back(std::move(r));
  }
  if (accumulated.size() != static_cast<std::size_t>(total_dim))
    throw NumericError("extend_partial_isometry: completion failed");

  std::vector<bool> taken(total_dim, false);
  ComplexMatrix out(total_dim, total_dim);
  for (std::size_t a = 0; a < given; ++a) {
    out.col(positions[a]) = columns[a];
    taken[positions[a]] = true;
  }
  std::size_t next = 0;
  for (Eigen::Index c = 0; c < total_dim; ++c)
    if (!taken[c]) out.col(c) = completion[next++];
  return out;
}

}  // namespace

Instrument instrument_from_dilation(const MeasurementDilation& d) {
  const Eigen::Index sys = d.sys_dim();
  const Eigen::Index aux = d.aux_dim();
  const ComplexMatrix& v = d.v().matrix();

  EigenDecomposition sigma_eig =
      hermitian_eig(HermitianOperator(d.sigma().matrix()));

  std::vector<Operation> ops;
  std::vector<std::string> labels = index_labels(d.q().size());
  for (const HermitianOperator& qn : d.q().projections()) {
    std::vector<ComplexMatrix> kraus;
    for (const ComplexVector& phi : projector_basis(qn)) {
      for (Eigen::Index j = 0; j < sigma_eig.eigenvalues.size(); ++j) {
        const double qj = sigma_eig.eigenvalues(j);
        if (qj <= tol::kraus_cutoff) continue;
        const ComplexVector psi = sigma_eig.eigenvectors.matrix().col(j);
        ComplexMatrix a(sys, sys);
        for (Eigen::Index col = 0; col < sys; ++col) {
          const ComplexVector image =
              v.middleCols(col * aux, aux) * psi;  // V |col ⊗ ψ_j⟩
          for (Eigen::Index row = 0; row < sys; ++row)
            a(row, col) = std::sqrt(qj) * phi.dot(image.segment(row * aux, aux));
        }
        if (max_abs(a) > tol::kraus_cutoff) kraus.push_back(std::move(a));
      }
    }
    if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(sys, sys));
    ops.emplace_back(std::move(kraus));
  }
  return Instrument(std::move(labels), std::move(ops));
}

MeasurementDilation standard_dilation(const Instrument& ins) {
  const Eigen::Index sys = ins.dim();
  Eigen::Index aux = 0;
  for (const Operation& op : ins.ops())
    aux += static_cast<Eigen::Index>(op.kraus().size());

  // Slice columns: V(|b⟩⊗φ) = Σ_{ni} A_{ni}|b⟩ ⊗ |ni⟩ with φ = |n₀i₀⟩.
  std::vector<ComplexVector> slice(sys, ComplexVector::Zero(sys * aux));
  Eigen::Index offset = 0;
  for (const Operation& op : ins.ops()) {
    for (const ComplexMatrix& kraus : op.kraus()) {
      for (Eigen::Index b = 0; b < sys; ++b)
        for (Eigen::Index a = 0; a < sys; ++a)
          slice[b](a * aux + offset) = kraus(a, b);
      ++offset;
    }
  }
  std::vector<Eigen::Index> positions(sys);
  for (Eigen::Index b = 0; b < sys; ++b) positions[b] = b * aux;
  UnitaryOperator v(complete_to_unitary(slice, sys * aux, positions));

  ComplexVector phi = ComplexVector::Zero(aux);
  phi(0) = 1.0;

  std::vector<HermitianOperator> q;
  offset = 0;
  for (const Operation& op : ins.ops()) {
    ComplexMatrix proj = ComplexMatrix::Zero(aux, aux);
    for (std::size_t i = 0; i < op.kraus().size(); ++i)
      proj(offset + static_cast<Eigen::Index>(i),
           offset + static_cast<Eigen::Index>(i)) = 1.0;
    offset += static_cast<Eigen::Index>(op.kraus().size());
    q.emplace_back(std::move(proj));
  }

  return MeasurementDilation(sys, aux, DensityOperator::pure(phi),
                             std::move(v), SharpObservable(std::move(q)));
}

UnitaryOperator extend_partial_isometry(const std::vector<ComplexVector>& columns,
                                        Eigen::Index total_dim) {
  std::vector<Eigen::Index> positions(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i)
    positions[i] = static_cast<Eigen::Index>(i);
  return UnitaryOperator(complete_to_unitary(columns, total_dim, positions));
}

std::pair<DensityOperator, DensityOperator> reduced_states(
    const MeasurementDilation& d, const DensityOperator& rho) {
  const ComplexMatrix joint = post_measurement_state(d, rho);
  ComplexMatrix rho1 =
      partial_trace(joint, d.sys_dim(), d.aux_dim(), TraceSide::Right);
  ComplexMatrix rho2 =
      partial_trace(joint, d.sys_dim(), d.aux_dim(), TraceSide::Left);
  return {DensityOperator((rho1 + rho1.adjoint()) / 2.0),
          DensityOperator((rho2 + rho2.adjoint()) / 2.0)};
}

namespace {

// Choi matrix of the map ρ ↦ Tr_𝒦(V (ρ⊗σ) V†), evaluated on basis units.
ComplexMatrix measurement_free_choi(const MeasurementDilation& d) {
  const Eigen::Index sys = d.sys_dim();
  const Eigen::Index aux = d.aux_dim();
  ComplexMatrix choi = ComplexMatrix::Zero(sys * sys, sys * sys);
  for (Eigen::Index i = 0; i < sys; ++i)
    for (Eigen::Index j = 0; j < sys; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(sys, sys);
      unit(i, j) = 1.0;
      const ComplexMatrix evolved = d.v().matrix() *
                                    tensor_product(unit, d.sigma().matrix()) *
                                    d.v().matrix().adjoint();
      const ComplexMatrix image = partial_trace(evolved, sys, aux, TraceSide::Right);
      for (Eigen::Index k = 0; k < sys; ++k)
        for (Eigen::Index l = 0; l < sys; ++l)
          choi(i * sys + k, j * sys + l) = image(k, l);
    }
  return choi;
}

}  // namespace

bool verify_total_op_independence(const MeasurementDilation& d,
                                  const SharpObservable& q_alt, double tol) {
  if (q_alt.dim() != d.aux_dim())
    throw ShapeError("verify_total_op_independence: Q_alt on wrong space");
  const MeasurementDilation alt(d.sys_dim(), d.aux_dim(), d.sigma(), d.v(),
                                q_alt);
  const ComplexMatrix choi_a =
      choi_matrix(total_operation(instrument_from_dilation(d))).matrix();
  const ComplexMatrix choi_b =
      choi_matrix(total_operation(instrument_from_dilation(alt))).matrix();
  const ComplexMatrix choi_free = measurement_free_choi(d);
  return max_abs(choi_a - choi_b) <= tol && max_abs(choi_a - choi_free) <= tol;
}

}  // namespace qi
