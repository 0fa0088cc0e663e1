#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qi/errors.hpp"

namespace qi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double unitary = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double positivity = 1e-10;
inline constexpr double projector = 1e-10;
inline constexpr double reconstruction = 1e-10;
inline constexpr double channel_equality = 1e-9;
inline constexpr double kraus_cutoff = 1e-12;
inline constexpr double degeneracy = 1e-8;
}  // namespace tol

/// Entrywise infinity norm, max_ij |m(i,j)|.
double max_abs(const ComplexMatrix& m);

/// True iff no entry is NaN or infinite.
bool all_finite(const ComplexMatrix& m);

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

/// Hermitian operator on a finite-dimensional Hilbert space.
/// Construction enforces ‖M − M†‖_∞ ≤ 1e-12 and finiteness.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Unitary operator; construction enforces ‖U†U − 1‖_∞ ≤ 1e-10.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  static UnitaryOperator identity(Eigen::Index dim);

 private:
  ComplexMatrix matrix_;
};

/// Statistical operator: Hermitian, unit trace, positive semi-definite
/// (smallest eigenvalue ≥ −1e-10 to absorb round-off from partial traces).
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  static DensityOperator maximally_mixed(Eigen::Index dim);
  static DensityOperator pure(const ComplexVector& psi);

 private:
  ComplexMatrix matrix_;
};

/// Spectral decomposition M = V diag(λ) V† with ascending eigenvalues and a
/// deterministic eigenvector convention (see hermitian_eig).
struct EigenDecomposition {
  RealVector eigenvalues;
  UnitaryOperator eigenvectors;
};

/// Kronecker product with the LEFT factor major: entry
/// (i·cols_B + k, j·cols_B + l) = A(i,j)·B(k,l).  All bipartite index
/// conventions in this library derive from this choice.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

enum class TraceSide { Left, Right };

/// Partial trace of an operator on a (dim_left·dim_right)-dimensional
/// bipartite space; `traced_out` names the factor that is removed.
ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_left,
                            Eigen::Index dim_right, TraceSide traced_out);

/// Eigendecomposition with ascending eigenvalues.  Within a degenerate group
/// the columns are phase-fixed (first entry of magnitude > 1e-12 made real
/// positive) and then ordered lexicographically by (re, im) entry pairs, so
/// repeated runs on identical input produce identical output.
EigenDecomposition hermitian_eig(const HermitianOperator& h);

/// exp(−i t H) computed through the eigendecomposition of H.
UnitaryOperator unitary_exp(const HermitianOperator& h, double t);

/// Orthogonal projector onto span{v : |λ_v − level| ≤ tol}.
/// Throws DomainError when no eigenvalue lies in the window.
HermitianOperator eigenspace_projector(const HermitianOperator& h,
                                       double level,
                                       double tol = tol::degeneracy);

}  // namespace qi
