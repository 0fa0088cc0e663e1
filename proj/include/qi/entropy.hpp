#pragma once

#include <span>
#include <vector>

#include "qi/dilation.hpp"

namespace qi {

/// Entropy bookkeeping for one conditional-action run.  All values in nats.
struct EntropyReport {
  double s0 = 0.0;        // S(ρ), initial system entropy
  double s1 = 0.0;        // S(ρ₁), final system entropy
  double s2 = 0.0;        // S(ρ₂), final auxiliary entropy
  double s_sigma = 0.0;   // S(σ), initial auxiliary entropy
  double delta_s = 0.0;   // S₀ − S₁
  double shannon_h = 0.0; // H(ρ, F), Shannon entropy of the experiment
  bool szilard_bound_holds = false;  // ΔS ≤ H(ρ,F) + 1e-9
  bool balance_holds = false;        // ΔS ≤ S₂ − S(σ) + 1e-9
};

/// Mutual-information balance of a conditional action against its projective
/// counterpart, both realized through their standard dilations.  Unprimed
/// entropies belong to the conditional action, primed ones to the bare
/// projective measurement.
struct OlrReport {
  double s1 = 0.0, s2 = 0.0, s12 = 0.0;
  double s1_prime = 0.0, s2_prime = 0.0, s12_prime = 0.0;
  double info = 0.0;        // 𝓘  = S₁ + S₂ − S₁₂
  double info_prime = 0.0;  // 𝓘′ = S₁′ + S₂′ − S₁₂′
  double delta_info = 0.0;  // 𝓘′ − 𝓘
  double delta_s = 0.0;     // S₀ − S₁
  bool bound_holds = false; // ΔS ≤ Δ𝓘 + 1e-9
};

/// −Σ λ log λ over the spectrum, natural logarithm, 0·log 0 := 0.
/// Eigenvalues in [−1e-10, 0) are clamped to 0.
double von_neumann_entropy(const DensityOperator& rho);

/// −Σ p log p for a probability vector (entries ≥ 0, sum 1 within 1e-8).
double shannon_entropy(std::span<const double> p);

/// Full entropy balance of running the dilation on ρ.
EntropyReport conditional_action_report(const MeasurementDilation& d,
                                        const DensityOperator& rho);

/// S(ρ) − S(ℐ(𝒩)(ρ)) ≤ H(ρ, F) + 1e-9 — guaranteed for pure instruments and
/// their convex combinations, reported empirically for anything else.
bool szilard_bound_check(const Instrument& ins, const DensityOperator& rho);

/// Compare the conditional action (P, U) with the bare measurement of P via
/// their standard dilations and bound ΔS by the drop in correlation Δ𝓘.
OlrReport olr_report(const SharpObservable& p,
                     const std::vector<UnitaryOperator>& u,
                     const DensityOperator& rho);

/// S(ρ₁) + S(ρ₂) ≥ S(ρ₁₂) − 1e-9 for the reductions of a bipartite state.
bool subadditivity_check(const DensityOperator& rho12, Eigen::Index dim_left,
                         Eigen::Index dim_right);

namespace tol {
inline constexpr double entropy_bound = 1e-9;
}

}  // namespace qi
