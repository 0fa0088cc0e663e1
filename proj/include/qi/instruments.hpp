#pragma once

#include <span>
#include <string>
#include <vector>

#include "qi/hilbert.hpp"

namespace qi {

/// Completely positive map given by a finite Kraus list, possibly
/// trace-decreasing: ρ ↦ Σᵢ Aᵢ ρ Aᵢ†.  Construction enforces that all Kraus
/// operators share one square shape and that Σᵢ Aᵢ†Aᵢ ≤ 1 (largest eigenvalue
/// at most 1 + 1e-10).
class Operation {
 public:
  explicit Operation(std::vector<ComplexMatrix> kraus);

  Eigen::Index dim() const { return kraus_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<ComplexMatrix> kraus_;
};

/// Outcome-indexed family of operations whose total operation is
/// trace-preserving: Σₙ Σᵢ Aₙᵢ†Aₙᵢ = 1 within 1e-10.  Outcomes are ordered
/// string labels; the order fixes serialization and report layout.
class Instrument {
 public:
  Instrument(std::vector<std::string> outcomes, std::vector<Operation> ops);

  Eigen::Index dim() const { return ops_.front().dim(); }
  std::size_t size() const { return ops_.size(); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const Operation& op(std::size_t index) const { return ops_[index]; }
  const std::vector<Operation>& ops() const { return ops_; }

 private:
  std::vector<std::string> outcomes_;
  std::vector<Operation> ops_;
};

/// Yes-no observable: Hermitian with spectrum inside [0, 1].
class Effect {
 public:
  explicit Effect(HermitianOperator op);

  Eigen::Index dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }

 private:
  HermitianOperator op_;
};

/// Positive operator-valued measure: effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Effect> effects);

  std::size_t size() const { return effects_.size(); }
  const Effect& effect(std::size_t index) const { return effects_[index]; }
  const std::vector<Effect>& effects() const { return effects_; }

 private:
  std::vector<Effect> effects_;
};

/// Projection-valued resolution of the identity: each element idempotent,
/// mutually orthogonal, summing to 1 (all within 1e-10).
class SharpObservable {
 public:
  explicit SharpObservable(std::vector<HermitianOperator> projections);

  Eigen::Index dim() const { return projections_.front().dim(); }
  std::size_t size() const { return projections_.size(); }
  const HermitianOperator& projection(std::size_t index) const {
    return projections_[index];
  }
  const std::vector<HermitianOperator>& projections() const {
    return projections_;
  }

 private:
  std::vector<HermitianOperator> projections_;
};

/// Linear action Σᵢ Aᵢ X Aᵢ† on an arbitrary matrix.
ComplexMatrix apply_kraus(const Operation& op, const ComplexMatrix& x);

/// Schrödinger-picture action on a state; result is positive semi-definite
/// with trace in [0, 1].
HermitianOperator apply_operation(const Operation& op,
                                  const DensityOperator& rho);

/// Heisenberg-picture dual Σᵢ Aᵢ† X Aᵢ, satisfying
/// Tr(X·op(ρ)) = Tr(dual(X)·ρ).
HermitianOperator dual_apply(const Operation& op, const HermitianOperator& x);

/// Concatenation of all outcome Kraus lists; trace-preserving by the
/// instrument invariant.
Operation total_operation(const Instrument& ins);

/// The POVM (Fₙ) with Fₙ = Σᵢ Aₙᵢ†Aₙᵢ, in outcome order.
Povm effects_of(const Instrument& ins);

/// pₙ = Tr(ρ Fₙ); non-negative and summing to 1.
std::vector<double> outcome_probabilities(const Instrument& ins,
                                          const DensityOperator& rho);

/// Projective-measurement instrument n ↦ (ρ ↦ Pₙ ρ Pₙ).
Instrument luders_instrument(const SharpObservable& p);

/// Conditional-action instrument n ↦ (ρ ↦ Uₙ Pₙ ρ Pₙ Uₙ†): measure the sharp
/// observable, then apply the unitary selected by the outcome.
Instrument maxwell_instrument(const SharpObservable& p,
                              const std::vector<UnitaryOperator>& u);

/// Convex mixture Σᵢ λᵢ ℐ⁽ⁱ⁾ realized as a single instrument by concatenating
/// the √λᵢ-scaled Kraus lists outcome by outcome.
Instrument convex_combination(std::span<const double> weights,
                              const std::vector<Instrument>& parts);

/// True iff every outcome operation has Choi rank ≤ 1 (tolerance 1e-9),
/// i.e. is expressible through a single Kraus operator.
bool is_pure(const Instrument& ins);

/// Choi matrix (1 ⊗ op)(|Ω⟩⟨Ω|) with Ω = Σᵢ |ii⟩ unnormalized; equality of
/// Choi matrices is the channel-equality convention used throughout.
HermitianOperator choi_matrix(const Operation& op);

/// ‖Choi(a) − Choi(b)‖_∞ (entrywise max norm).
double choi_distance(const Operation& a, const Operation& b);

bool operations_equal(const Operation& a, const Operation& b,
                      double tol = tol::channel_equality);

/// Canonical minimal Kraus list: eigenpairs of the Choi matrix with
/// eigenvalue > 1e-10, scaled eigenvectors reshaped into operators, largest
/// eigenvalue first.  Channel-equal to the input.
Operation minimal_kraus_operation(const Operation& op);

}  // namespace qi
