#include "qi/instruments.hpp"

#include <cmath>

namespace qi {

namespace {

ComplexMatrix kraus_gram(const std::vector<ComplexMatrix>& kraus) {
  const Eigen::Index d = kraus.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& a : kraus) sum += a.adjoint() * a;
  return sum;
}

double largest_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("largest_eigenvalue: solver did not converge");
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

Operation::Operation(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("Operation: empty Kraus list");
  const Eigen::Index d = kraus_.front().rows();
  for (const ComplexMatrix& a : kraus_) {
    if (a.rows() != d || a.cols() != d)
      throw ShapeError("Operation: Kraus operators must share one square shape");
    if (!all_finite(a))
      throw ValidationError("Operation: non-finite Kraus entries");
  }
  if (largest_eigenvalue(kraus_gram(kraus_)) > 1.0 + tol::unitary)
    throw ValidationError("Operation: Σ A†A exceeds the identity");
}

Instrument::Instrument(std::vector<std::string> outcomes,
                       std::vector<Operation> ops)
    : outcomes_(std::move(outcomes)), ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("Instrument: no outcomes");
  if (outcomes_.size() != ops_.size())
    throw ShapeError("Instrument: outcome/operation count mismatch");
  const Eigen::Index d = ops_.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const Operation& op : ops_) {
    if (op.dim() != d) throw ShapeError("Instrument: mixed dimensions");
    sum += kraus_gram(op.kraus());
  }
  sum -= ComplexMatrix::Identity(d, d);
  if (max_abs(sum) > tol::trace_one)
    throw ValidationError("Instrument: total operation not trace-preserving");
}

Effect::Effect(HermitianOperator op) : op_(std::move(op)) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op_.matrix(),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("Effect: eigenvalue check failed");
  if (solver.eigenvalues().minCoeff() < -tol::positivity ||
      solver.eigenvalues().maxCoeff() > 1.0 + tol::positivity)
    throw ValidationError("Effect: spectrum outside [0, 1]");
}

Povm::Povm(std::vector<Effect> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("Povm: no effects");
  const Eigen::Index d = effects_.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const Effect& e : effects_) {
    if (e.dim() != d) throw ShapeError("Povm: mixed dimensions");
    sum += e.op().matrix();
  }
  sum -= ComplexMatrix::Identity(d, d);
  if (max_abs(sum) > tol::trace_one)
    throw ValidationError("Povm: effects do not resolve the identity");
}

SharpObservable::SharpObservable(std::vector<HermitianOperator> projections)
    : projections_(std::move(projections)) {
  if (projections_.empty())
    throw ValidationError("SharpObservable: no projections");
  const Eigen::Index d = projections_.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projections_.size(); ++i) {
    const ComplexMatrix& p = projections_[i].matrix();
    if (p.rows() != d) throw ShapeError("SharpObservable: mixed dimensions");
    if (max_abs(p * p - p) > tol::projector)
      throw ValidationError("SharpObservable: projection not idempotent");
    for (std::size_t j = 0; j < i; ++j)
      if (max_abs(p * projections_[j].matrix()) > tol::projector)
        throw ValidationError("SharpObservable: projections not orthogonal");
    sum += p;
  }
  sum -= ComplexMatrix::Identity(d, d);
  if (max_abs(sum) > tol::projector)
    throw ValidationError("SharpObservable: projections do not sum to 1");
}

ComplexMatrix apply_kraus(const Operation& op, const ComplexMatrix& x) {
  if (x.rows() != op.dim() || x.cols() != op.dim())
    throw ShapeError("apply_kraus: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(op.dim(), op.dim());
  for (const ComplexMatrix& a : op.kraus()) out += a * x * a.adjoint();
  return out;
}

HermitianOperator apply_operation(const Operation& op,
                                  const DensityOperator& rho) {
  ComplexMatrix out = apply_kraus(op, rho.matrix());
  // Symmetrize away round-off so the Hermitian invariant holds exactly.
  return HermitianOperator((out + out.adjoint()) / 2.0);
}

HermitianOperator dual_apply(const Operation& op, const HermitianOperator& x) {
  if (x.dim() != op.dim()) throw ShapeError("dual_apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(op.dim(), op.dim());
  for (const ComplexMatrix& a : op.kraus()) out += a.adjoint() * x.matrix() * a;
  return HermitianOperator((out + out.adjoint()) / 2.0);
}

Operation total_operation(const Instrument& ins) {
  std::vector<ComplexMatrix> kraus;
  for (const Operation& op : ins.ops())
    kraus.insert(kraus.end(), op.kraus().begin(), op.kraus().end());
  return Operation(std::move(kraus));
}

Povm effects_of(const Instrument& ins) {
  std::vector<Effect> effects;
  effects.reserve(ins.size());
  for (const Operation& op : ins.ops()) {
    ComplexMatrix f = kraus_gram(op.kraus());
    effects.emplace_back(HermitianOperator((f + f.adjoint()) / 2.0));
  }
  return Povm(std::move(effects));
}

std::vector<double> outcome_probabilities(const Instrument& ins,
                                          const DensityOperator& rho) {
  if (rho.dim() != ins.dim())
    throw ShapeError("outcome_probabilities: dimension mismatch");
  Povm povm = effects_of(ins);
  std::vector<double> p(ins.size());
  for (std::size_t n = 0; n < ins.size(); ++n) {
    double value = (rho.matrix() * povm.effect(n).op().matrix()).trace().real();
    p[n] = std::max(value, 0.0);
  }
  return p;
}

namespace {

std::vector<std::string> index_labels(std::size_t count) {
  std::vector<std::string> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

Instrument luders_instrument(const SharpObservable& p) {
  std::vector<Operation> ops;
  ops.reserve(p.size());
  for (const HermitianOperator& proj : p.projections())
    ops.emplace_back(std::vector<ComplexMatrix>{proj.matrix()});
  return Instrument(index_labels(p.size()), std::move(ops));
}

Instrument maxwell_instrument(const SharpObservable& p,
                              const std::vector<UnitaryOperator>& u) {
  if (u.size() != p.size())
    throw ShapeError("maxwell_instrument: one unitary per outcome required");
  std::vector<Operation> ops;
  ops.reserve(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (u[n].dim() != p.dim())
      throw ShapeError("maxwell_instrument: dimension mismatch");
    ops.emplace_back(std::vector<ComplexMatrix>{u[n].matrix() *
                                                p.projection(n).matrix()});
  }
  return Instrument(index_labels(p.size()), std::move(ops));
}

Instrument convex_combination(std::span<const double> weights,
                              const std::vector<Instrument>& parts) {
  if (parts.empty() || weights.size() != parts.size())
    throw ShapeError("convex_combination: weight/part count mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w <= 0.0) throw ValidationError("convex_combination: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw ValidationError("convex_combination: weights must sum to 1");
  const Instrument& first = parts.front();
  for (const Instrument& part : parts)
    if (part.outcomes() != first.outcomes() || part.dim() != first.dim())
      throw ShapeError("convex_combination: parts must share outcomes and dim");

  std::vector<Operation> ops;
  ops.reserve(first.size());
  for (std::size_t n = 0; n < first.size(); ++n) {
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const double scale = std::sqrt(weights[i]);
      for (const ComplexMatrix& a : parts[i].op(n).kraus())
        kraus.push_back(scale * a);
    }
    ops.emplace_back(std::move(kraus));
  }
  return Instrument(first.outcomes(), std::move(ops));
}

HermitianOperator choi_matrix(const Operation& op) {
  const Eigen::Index d = op.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (const ComplexMatrix& a : op.kraus()) {
    // vec(A) with entries vec(i·d + k) = A(k, i); Choi += vec vec†.
    ComplexVector vec(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < d; ++k) vec(i * d + k) = a(k, i);
    choi += vec * vec.adjoint();
  }
  return HermitianOperator((choi + choi.adjoint()) / 2.0);
}

double choi_distance(const Operation& a, const Operation& b) {
  if (a.dim() != b.dim()) throw ShapeError("choi_distance: dimension mismatch");
  return max_abs(choi_matrix(a).matrix() - choi_matrix(b).matrix());
}

bool operations_equal(const Operation& a, const Operation& b, double tol) {
  return choi_distance(a, b) <= tol;
}

bool is_pure(const Instrument& ins) {
  for (const Operation& op : ins.ops()) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        choi_matrix(op).matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericError("is_pure: Choi eigendecomposition failed");
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      if (solver.eigenvalues()(i) > tol::channel_equality) ++rank;
    if (rank > 1) return false;
  }
  return true;
}

Operation minimal_kraus_operation(const Operation& op) {
  const Eigen::Index d = op.dim();
  EigenDecomposition eig = hermitian_eig(choi_matrix(op));
  std::vector<ComplexMatrix> kraus;
  // Ascending spectrum; walk backwards so the dominant operator comes first.
  for (Eigen::Index i = eig.eigenvalues.size() - 1; i >= 0; --i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda <= 1e-10) break;
    const auto vec = eig.eigenvectors.matrix().col(i);
    ComplexMatrix a(d, d);
    for (Eigen::Index col = 0; col < d; ++col)
      for (Eigen::Index row = 0; row < d; ++row)
        a(row, col) = std::sqrt(lambda) * vec(col * d + row);
    kraus.push_back(std::move(a));
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(d, d));
  return Operation(std::move(kraus));
}

}  // namespace qi
