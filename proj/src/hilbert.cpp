#include "qi/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qi {

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

namespace {

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw ShapeError(std::string(what) + ": matrix must be square");
  if (!all_finite(m))
    throw ValidationError(std::string(what) + ": non-finite entries");
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square_finite(matrix_, "HermitianOperator");
  if (max_abs(matrix_ - matrix_.adjoint()) > tol::hermitian)
    throw ValidationError("HermitianOperator: not Hermitian within 1e-12");
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square_finite(matrix_, "UnitaryOperator");
  ComplexMatrix gram = matrix_.adjoint() * matrix_;
  gram -= ComplexMatrix::Identity(matrix_.rows(), matrix_.cols());
  if (max_abs(gram) > tol::unitary)
    throw ValidationError("UnitaryOperator: U†U deviates from identity");
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
  return UnitaryOperator(ComplexMatrix::Identity(dim, dim));
}

DensityOperator::DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square_finite(matrix_, "DensityOperator");
  if (max_abs(matrix_ - matrix_.adjoint()) > tol::hermitian)
    throw ValidationError("DensityOperator: not Hermitian within 1e-12");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::trace_one ||
      std::abs(matrix_.trace().imag()) > tol::trace_one)
    throw ValidationError("DensityOperator: trace must equal 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("DensityOperator: eigenvalue check failed");
  if (solver.eigenvalues().minCoeff() < -tol::positivity)
    throw ValidationError("DensityOperator: negative eigenvalue");
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  return DensityOperator(ComplexMatrix::Identity(dim, dim) /
                         static_cast<double>(dim));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("DensityOperator::pure: zero vector");
  ComplexVector unit = psi / norm;
  return DensityOperator(unit * unit.adjoint());
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!all_finite(a) || !all_finite(b))
    throw ValidationError("tensor_product: non-finite entries");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_left,
                            Eigen::Index dim_right, TraceSide traced_out) {
  const Eigen::Index total = dim_left * dim_right;
  if (dim_left < 1 || dim_right < 1 || m.rows() != total || m.cols() != total)
    throw ShapeError("partial_trace: matrix is not dim_left·dim_right square");
  if (traced_out == TraceSide::Right) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_left, dim_left);
    for (Eigen::Index i = 0; i < dim_left; ++i)
      for (Eigen::Index j = 0; j < dim_left; ++j)
        for (Eigen::Index k = 0; k < dim_right; ++k)
          out(i, j) += m(i * dim_right + k, j * dim_right + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_right, dim_right);
  for (Eigen::Index k = 0; k < dim_right; ++k)
    for (Eigen::Index l = 0; l < dim_right; ++l)
      for (Eigen::Index i = 0; i < dim_left; ++i)
        out(k, l) += m(i * dim_right + k, i * dim_right + l);
  return out;
}

namespace {

void fix_column_phase(Eigen::Ref<ComplexVector> col) {
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    const double mag = std::abs(col(i));
    if (mag > 1e-12) {
      col *= std::conj(col(i)) / mag;
      return;
    }
  }
}

// Strict lexicographic order on (re, im) pairs; used only to make the
// ordering of degenerate eigenvectors reproducible.
bool column_less(const ComplexMatrix& v, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const Complex& x = v(i, a);
    const Complex& y = v(i, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

EigenDecomposition hermitian_eig(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw NumericError("hermitian_eig: solver did not converge");
  RealVector values = solver.eigenvalues();
  ComplexMatrix vectors = solver.eigenvectors();

  for (Eigen::Index j = 0; j < vectors.cols(); ++j)
    fix_column_phase(vectors.col(j));

  // Reorder inside numerically degenerate groups.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double group_tol = 1e-12 * scale;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index stop = start + 1;
    while (stop < values.size() && values(stop) - values(start) <= group_tol)
      ++stop;
    if (stop - start > 1) {
      std::vector<Eigen::Index> order(stop - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return column_less(vectors, a, b);
                       });
      ComplexMatrix block(vectors.rows(), stop - start);
      RealVector block_values(stop - start);
      for (Eigen::Index k = 0; k < stop - start; ++k) {
        block.col(k) = vectors.col(order[k]);
        block_values(k) = values(order[k]);
      }
      vectors.middleCols(start, stop - start) = block;
      values.segment(start, stop - start) = block_values;
    }
    start = stop;
  }
  return EigenDecomposition{std::move(values),
                            UnitaryOperator(std::move(vectors))};
}

UnitaryOperator unitary_exp(const HermitianOperator& h, double t) {
  EigenDecomposition eig = hermitian_eig(h);
  const ComplexMatrix& v = eig.eigenvectors.matrix();
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -t * eig.eigenvalues(i)));
  return UnitaryOperator(v * phases.asDiagonal() * v.adjoint());
}

HermitianOperator eigenspace_projector(const HermitianOperator& h,
                                       double level, double tol) {
  if (tol <= 0.0) throw DomainError("eigenspace_projector: tol must be > 0");
  EigenDecomposition eig = hermitian_eig(h);
  ComplexMatrix proj = ComplexMatrix::Zero(h.dim(), h.dim());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues(i) - level) <= tol) {
      const auto v = eig.eigenvectors.matrix().col(i);
      proj += v * v.adjoint();
      ++rank;
    }
  }
  if (rank == 0)
    throw DomainError("eigenspace_projector: empty eigenspace at this level");
  return HermitianOperator(std::move(proj));
}

}  // namespace qi
