#pragma once

#include <array>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "qi/entropy.hpp"

namespace qi {

/// Parameters of the spin-bath erasure model: a single qubit coupled to
/// n_bath spin-½ sites with uniform antiferromagnetic Heisenberg exchange J,
/// a Zeeman field B, and evolution time t before the bath measurement.
struct SpinBathConfig {
  int n_bath = 6;
  double coupling = 1.0;                     // J > 0
  double field = 1.0;                        // B > 0
  double time = 2.0 * std::numbers::pi;      // half the recurrence period

  void validate() const;
};

/// Multiplicities D_N(S) of total-spin sectors obtained by coupling N
/// spin-½ sites, computed by the lattice-path recurrence
/// D_{N+1}(S) = D_N(S−½) + D_N(S+½) with D₁(½) = 1.
/// Spin values are stored doubled so half-integers stay exact.
class DegeneracyTable {
 public:
  explicit DegeneracyTable(int max_n);

  int max_n() const { return max_n_; }
  long long degeneracy(int n, int twice_s) const;  // 0 outside the table

  struct Entry {
    int n;
    int twice_s;
    long long count;
  };
  std::vector<Entry> entries() const;

 private:
  int max_n_;
  std::map<std::pair<int, int>, long long> table_;
};

/// Closed-form level E_N(S, M) = (J/2)(S(S+1) − 3N/4) + B·M.
struct EnergyLevel {
  int twice_s;
  int twice_m;
  double energy;
};

/// Trace-preserving qubit channel written as a 4×4 real matrix in the basis
/// (σ₀, σ₁, σ₂, σ₃); acts on coordinate vectors (1, x₁, x₂, x₃).
struct BlochAffineMap {
  Eigen::Matrix4d matrix;
};

struct EllipsoidLandmarks {
  DensityOperator center;
  DensityOperator north_pole_image;
  DensityOperator south_pole_image;
  std::array<double, 3> semi_axes;  // ascending
};

struct CurvePoint {
  double p;
  double s0;
  double s1;
  double s2;
  double shannon_h;
  double delta_s;
};

/// The perfect two-qubit erasure scenario: swap dilation measured once with
/// the full rank-1 auxiliary observable (pure instrument) and once with the
/// coarse-grained two-outcome observable, both run on ρ = 1/4.
struct TwoQubitCounterexample {
  MeasurementDilation fine_dilation;
  MeasurementDilation coarse_dilation;
  EntropyReport fine_report;    // satisfies the Szilard bound
  EntropyReport coarse_report;  // violates it while Prop-0 balance holds
};

/// H_N = J Σ_{μ<ν} s⃗_μ·s⃗_ν + B Σ_μ s^z_μ on (ℂ²)^⊗N, dimension ≤ 512.
HermitianOperator heisenberg_hamiltonian(const SpinBathConfig& cfg,
                                         int total_spins);

/// All admissible (S, M) levels for N coupled spin-½ sites.
std::vector<EnergyLevel> energy_levels(int n, double j, double b);

DegeneracyTable degeneracy_table(int max_n);

/// The erasure instrument's dilation: bath ground projector Q₀ (rank 14 for
/// the default bath), σ = Q₀/rank(Q₀), V = exp(−i t H_{n_bath+1}) with the
/// system spin as the left tensor factor, Q = (Q₀, 1−Q₀).
MeasurementDilation erasure_dilation(const SpinBathConfig& cfg);

/// 𝐈_ab = ½ Tr(σ_a op(σ_b)) for a trace-preserving qubit operation.
BlochAffineMap bloch_affine_map(const Operation& op);

EllipsoidLandmarks ellipsoid_landmarks(const BlochAffineMap& map);

/// Replace every outcome operation by its canonical minimal Kraus list.
Instrument minimal_kraus(const Instrument& ins);

/// ρ(p) = diag(p, 1−p); p is the weight of the excited state ↑.
DensityOperator qubit_diag(double p);

/// Entropy balance along the family ρ(p) for the configured erasure model.
std::vector<CurvePoint> entropy_curve(const SpinBathConfig& cfg,
                                      std::span<const double> p_grid);

/// The p where the erasure leaves the entropy of ρ(p) unchanged, located by
/// bisection of S₀(ρ(p)) = S₁(ρ(p)) on (0, 1) to 1e-10.
double find_p1(const SpinBathConfig& cfg);

TwoQubitCounterexample two_qubit_counterexample();

}  // namespace qi
