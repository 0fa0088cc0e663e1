#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qi/spinmodel.hpp"

namespace qi::verify {

using Rng = std::mt19937_64;

/// Deterministic generators for the randomized suites; all draws come from
/// the passed engine, so a fixed seed reproduces every trial exactly.
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);
DensityOperator random_density(Eigen::Index dim, Rng& rng);
UnitaryOperator random_unitary(Eigen::Index dim, Rng& rng);
SharpObservable random_sharp_observable(Eigen::Index dim, int parts, Rng& rng);
HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng);
Instrument random_instrument(Eigen::Index dim, int outcomes, int max_kraus,
                             Rng& rng);
Instrument random_pure_instrument(Eigen::Index dim, int outcomes, Rng& rng);
MeasurementDilation random_dilation(Eigen::Index sys_dim, Eigen::Index aux_dim,
                                    int parts, Rng& rng);

struct PropertyResult {
  std::string name;
  int trials = 0;
  double worst = 0.0;      // largest observed violation / distance
  double threshold = 0.0;  // pass iff worst ≤ threshold
  bool pass = false;
};

struct CounterexampleResult {
  double delta_s = 0.0;
  double shannon_h = 0.0;
  bool expected_violation = true;
  bool violation_observed = false;
  bool balance_holds = false;
  bool prop1_total_ops_equal = false;
  bool pass = false;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::vector<PropertyResult> properties;
  CounterexampleResult counterexample;
  bool all_pass = false;
};

/// Run every randomized property suite (entropy bounds, dilation round
/// trips, duality, subadditivity) plus the two-qubit counterexample, which
/// passes exactly when its expected bound violation occurs.  tol_scale
/// multiplies every pass threshold; 0 serves as a negative control.
SuiteReport run_suites(std::uint64_t seed, int trials = 200,
                       double tol_scale = 1.0);

}  // namespace qi::verify
