#pragma once

#include <utility>
#include <vector>

#include "qi/instruments.hpp"

namespace qi {

/// Physical realization of an instrument: couple the system to an auxiliary
/// space 𝒦 prepared in σ, evolve with the global unitary V, then measure the
/// sharp auxiliary observable Q and reduce back to the system,
///   ℐ(n)(ρ) = Tr_𝒦((1⊗Qₙ) V (ρ⊗σ) V† (1⊗Qₙ)).
/// The system is always the LEFT tensor factor.
class MeasurementDilation {
 public:
  MeasurementDilation(Eigen::Index sys_dim, Eigen::Index aux_dim,
                      DensityOperator sigma, UnitaryOperator v,
                      SharpObservable q);

  Eigen::Index sys_dim() const { return sys_dim_; }
  Eigen::Index aux_dim() const { return aux_dim_; }
  const DensityOperator& sigma() const { return sigma_; }
  const UnitaryOperator& v() const { return v_; }
  const SharpObservable& q() const { return q_; }

 private:
  Eigen::Index sys_dim_;
  Eigen::Index aux_dim_;
  DensityOperator sigma_;
  UnitaryOperator v_;
  SharpObservable q_;
};

/// Joint state after the auxiliary measurement (without selection):
/// Σₙ (1⊗Qₙ) V (ρ⊗σ) V† (1⊗Qₙ).
ComplexMatrix post_measurement_state(const MeasurementDilation& d,
                                     const DensityOperator& rho);

/// Branch weights pₙ = Tr((1⊗Qₙ) V (ρ⊗σ) V† (1⊗Qₙ)).
std::vector<double> branch_probabilities(const MeasurementDilation& d,
                                         const DensityOperator& rho);

/// Extract the instrument realized by the dilation.  The Kraus operators are
/// A_{n,(m,j)} = √q_j ⟨a⊗φₘ| V |b⊗ψ_j⟩ over an eigenbasis (φₘ) of each Qₙ
/// and the spectral decomposition σ = Σ_j q_j |ψ_j⟩⟨ψ_j|; terms with
/// q_j ≤ 1e-12 are skipped and operators with ‖A‖_∞ ≤ 1e-12 are dropped.
Instrument instrument_from_dilation(const MeasurementDilation& d);

/// Canonical dilation of an arbitrary instrument: 𝒦 = ℂ^{Σₙ|ℐₙ|} with basis
/// vectors |ni⟩, pure initial state φ = the first |ni⟩, Qₙ = Σᵢ |ni⟩⟨ni|, and
/// V defined on the φ-slice by ψ⊗φ ↦ Σₙᵢ Aₙᵢψ ⊗ |ni⟩, completed to a
/// unitary.  The round trip instrument_from_dilation(standard_dilation(ins))
/// is outcome-wise channel-equal to ins.
MeasurementDilation standard_dilation(const Instrument& ins);

/// Extend orthonormal columns to a full unitary occupying columns 0..k−1.
/// Completion is deterministic: canonical basis vectors are orthonormalized
/// against the accumulated set in index order, skipping candidates whose
/// residual norm is ≤ 1e-8.
UnitaryOperator extend_partial_isometry(const std::vector<ComplexVector>& columns,
                                        Eigen::Index total_dim);

/// System and auxiliary reductions (ρ₁, ρ₂) of the post-measurement state.
std::pair<DensityOperator, DensityOperator> reduced_states(
    const MeasurementDilation& d, const DensityOperator& rho);

/// True iff replacing Q by q_alt leaves the total operation channel-equal,
/// and both agree with the measurement-free reduction ρ ↦ Tr_𝒦(V(ρ⊗σ)V†).
bool verify_total_op_independence(const MeasurementDilation& d,
                                  const SharpObservable& q_alt,
                                  double tol = tol::channel_equality);

}  // namespace qi
