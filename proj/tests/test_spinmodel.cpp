#include <doctest.h>

#include <cmath>
#include <map>

#include "qi/spinmodel.hpp"
#include "qi/verify.hpp"

using namespace qi;

namespace {

ComplexMatrix diag(std::initializer_list<double> entries) {
  ComplexMatrix m = ComplexMatrix::Zero(entries.size(), entries.size());
  Eigen::Index i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

const SpinBathConfig defaults{};

// The reduced Kraus triple of the default erasure instrument.
Operation reference_outcome0() {
  const double a = std::sqrt(5.0 / 14.0);
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(0, 0) = -1.0 / std::sqrt(14.0);
  a2(1, 1) = 3.0 / std::sqrt(14.0);
  return Operation({a * ComplexMatrix::Identity(2, 2), a2});
}

Operation reference_outcome1() {
  ComplexMatrix a3 = ComplexMatrix::Zero(2, 2);
  a3(1, 0) = 2.0 / std::sqrt(7.0);
  return Operation({a3});
}

// Closed-form level map energy → multiplicity, keys rounded for grouping.
std::map<long long, long long> level_multiplicities(int n) {
  const DegeneracyTable table = degeneracy_table(n);
  std::map<long long, long long> mult;
  for (const EnergyLevel& level : energy_levels(n, 1.0, 1.0))
    mult[std::llround(level.energy * 1e6)] += table.degeneracy(n, level.twice_s);
  return mult;
}

}  // namespace

TEST_CASE("single spin is a pure Zeeman term") {
  const HermitianOperator h = heisenberg_hamiltonian(defaults, 1);
  CHECK(max_abs(h.matrix() - diag({0.5, -0.5})) == 0.0);
}

TEST_CASE("spectra match the closed form with path-counting multiplicities") {
  for (int n = 2; n <= 7; ++n) {
    const RealVector values =
        hermitian_eig(heisenberg_hamiltonian(defaults, n)).eigenvalues;
    std::map<long long, long long> numerical;
    for (Eigen::Index i = 0; i < values.size(); ++i)
      numerical[std::llround(values(i) * 1e6)] += 1;
    CHECK(numerical == level_multiplicities(n));
  }
}

TEST_CASE("six-spin bath: 14-fold degenerate ground state at -9/4") {
  const HermitianOperator h6 = heisenberg_hamiltonian(defaults, 6);
  const EigenDecomposition eig = hermitian_eig(h6);
  CHECK(eig.eigenvalues.minCoeff() == doctest::Approx(-2.25).epsilon(1e-12));

  const HermitianOperator q0 = eigenspace_projector(h6, -2.25, 1e-8);
  CHECK(std::llround(q0.matrix().trace().real()) == 14);
  const HermitianOperator q1(ComplexMatrix::Identity(64, 64) - q0.matrix());
  CHECK(std::llround(q0.matrix().trace().real() +
                     q1.matrix().trace().real()) == 64);
}

TEST_CASE("closed-form levels reproduce the degenerate ground energy") {
  const std::vector<EnergyLevel> levels = energy_levels(6, 1.0, 1.0);
  double singlet = 0.0, triplet = 0.0;
  for (const EnergyLevel& level : levels) {
    if (level.twice_s == 0 && level.twice_m == 0) singlet = level.energy;
    if (level.twice_s == 2 && level.twice_m == -2) triplet = level.energy;
  }
  CHECK(singlet == doctest::Approx(-2.25).epsilon(1e-15));
  CHECK(triplet == doctest::Approx(-2.25).epsilon(1e-15));
}

TEST_CASE("degeneracy table values and sum rule") {
  const DegeneracyTable table = degeneracy_table(8);
  CHECK(table.degeneracy(2, 0) == 1);
  CHECK(table.degeneracy(2, 2) == 1);
  CHECK(table.degeneracy(6, 0) == 5);
  CHECK(table.degeneracy(6, 2) == 9);
  for (int n = 1; n <= 8; ++n) {
    long long states = 0;
    for (int twice_s = 0; twice_s <= n; ++twice_s)
      states += table.degeneracy(n, twice_s) * (twice_s + 1);
    CHECK(states == (1LL << n));
  }
}

TEST_CASE("erasure dilation reproduces the reference effects") {
  const MeasurementDilation d = erasure_dilation(defaults);
  CHECK(d.aux_dim() == 64);
  CHECK(von_neumann_entropy(d.sigma()) ==
        doctest::Approx(std::log(14.0)).epsilon(1e-12));

  const Instrument ins = instrument_from_dilation(d);
  const Povm effects = effects_of(ins);
  CHECK(max_abs(effects.effect(0).op().matrix() - diag({3.0 / 7.0, 1.0})) <
        1e-9);
  CHECK(max_abs(effects.effect(1).op().matrix() - diag({4.0 / 7.0, 0.0})) <
        1e-9);
  CHECK(max_abs(effects.effect(0).op().matrix() +
                effects.effect(1).op().matrix() -
                ComplexMatrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("erasure instrument equals the reduced Kraus triple") {
  const Instrument ins = instrument_from_dilation(erasure_dilation(defaults));
  CHECK(operations_equal(ins.op(0), reference_outcome0(), 1e-9));
  CHECK(operations_equal(ins.op(1), reference_outcome1(), 1e-9));
  CHECK_FALSE(is_pure(ins));

  // Branch 0 on the maximally mixed state, cross-checked against the
  // operator-route value diag(3/14, 1/2).
  const ComplexMatrix out =
      apply_kraus(ins.op(0), ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(max_abs(out - diag({3.0 / 14.0, 0.5})) < 1e-9);

  const std::vector<double> p =
      outcome_probabilities(ins, DensityOperator::maximally_mixed(2));
  CHECK(p[0] == doctest::Approx(5.0 / 7.0).epsilon(1e-9));
  CHECK(p[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("south pole is a fixed point of the erasure") {
  const MeasurementDilation d = erasure_dilation(defaults);
  const auto [rho1, rho2] = reduced_states(d, qubit_diag(0.0));
  CHECK(max_abs(rho1.matrix() - diag({0.0, 1.0})) < 1e-9);
}

TEST_CASE("minimal kraus reduction yields counts (2, 1)") {
  const Instrument ins = instrument_from_dilation(erasure_dilation(defaults));
  const Instrument minimal = minimal_kraus(ins);
  CHECK(minimal.op(0).kraus().size() == 2);
  CHECK(minimal.op(1).kraus().size() == 1);
  CHECK(operations_equal(minimal.op(0), reference_outcome0(), 1e-9));
  CHECK(operations_equal(minimal.op(1), reference_outcome1(), 1e-9));
}

TEST_CASE("bloch map of the identity channel is the identity") {
  const BlochAffineMap map =
      bloch_affine_map(Operation({ComplexMatrix::Identity(2, 2)}));
  CHECK((map.matrix - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("bloch map of the erasure total operation") {
  const Instrument ins = instrument_from_dilation(erasure_dilation(defaults));
  const BlochAffineMap map = bloch_affine_map(total_operation(ins));

  Eigen::Matrix4d expected;
  expected << 7, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, -4, 0, 0, 3;
  expected /= 7.0;
  CHECK((map.matrix - expected).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(map.matrix.block<3, 3>(1, 1).determinant() ==
        doctest::Approx(3.0 / 343.0).epsilon(1e-9));
  // Trace preservation pins the first row.
  CHECK((map.matrix.row(0) - Eigen::RowVector4d(1, 0, 0, 0)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("bloch map is invariant under rotations about the 3-axis") {
  const Instrument ins = instrument_from_dilation(erasure_dilation(defaults));
  const Operation total = total_operation(ins);
  const BlochAffineMap base = bloch_affine_map(total);
  for (double theta : {0.4, 1.9}) {
    ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    u(1, 1) = std::exp(Complex(0.0, theta));
    std::vector<ComplexMatrix> conjugated;
    for (const ComplexMatrix& a : total.kraus())
      conjugated.push_back(u.adjoint() * a * u);
    const BlochAffineMap rotated = bloch_affine_map(Operation(conjugated));
    CHECK((rotated.matrix - base.matrix).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("ellipsoid landmarks of the erasure map") {
  const Instrument ins = instrument_from_dilation(erasure_dilation(defaults));
  const EllipsoidLandmarks marks =
      ellipsoid_landmarks(bloch_affine_map(total_operation(ins)));
  CHECK(max_abs(marks.center.matrix() - diag({3.0 / 14.0, 11.0 / 14.0})) <
        1e-9);
  CHECK(max_abs(marks.north_pole_image.matrix() - diag({3.0 / 7.0, 4.0 / 7.0})) <
        1e-9);
  CHECK(max_abs(marks.south_pole_image.matrix() - diag({0.0, 1.0})) < 1e-9);
  CHECK(marks.semi_axes[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-9));
  CHECK(marks.semi_axes[1] == doctest::Approx(1.0 / 7.0).epsilon(1e-9));
  CHECK(marks.semi_axes[2] == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("entropy curve hits the closed form") {
  std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<CurvePoint> curve = entropy_curve(defaults, grid);

  const auto binary = [](double q) {
    return q <= 0.0 || q >= 1.0 ? 0.0
                                : -q * std::log(q) - (1 - q) * std::log(1 - q);
  };
  for (const CurvePoint& pt : curve) {
    CHECK(pt.s0 == doctest::Approx(binary(pt.p)).epsilon(1e-9));
    CHECK(pt.s1 == doctest::Approx(binary(3.0 * pt.p / 7.0)).epsilon(1e-9));
    // Prop 0 along the curve: S0 + log 14 ≤ S1 + S2.
    CHECK(pt.s0 + std::log(14.0) <= pt.s1 + pt.s2 + 1e-9);
    CHECK(pt.delta_s <= pt.shannon_h + 1e-9);
  }
  CHECK(curve[0].s0 == doctest::Approx(0.0));
  CHECK(curve[0].s1 == doctest::Approx(0.0));
  CHECK(curve[2].s1 == doctest::Approx(0.5195798391305154).epsilon(1e-9));
  CHECK(curve[4].s1 + curve[4].s2 ==
        doctest::Approx(3.5462146387862505).epsilon(1e-7));
}

TEST_CASE("entropy crossing point of the erasure") {
  const double p1 = find_p1(defaults);
  // The fixed point of the entropy balance: ρ(p₁) maps to ρ(1−p₁), so the
  // crossing sits at exactly 7/10.
  CHECK(p1 == doctest::Approx(0.7).epsilon(1e-6));

  const MeasurementDilation d = erasure_dilation(defaults);
  const EntropyReport at_root = conditional_action_report(d, qubit_diag(p1));
  CHECK(std::abs(at_root.s0 - at_root.s1) < 1e-8);

  CHECK(conditional_action_report(d, qubit_diag(0.25)).delta_s > 0.0);
  CHECK(conditional_action_report(d, qubit_diag(0.75)).delta_s < 0.0);
}

TEST_CASE("reports are 4π-periodic in the evolution time") {
  SpinBathConfig shifted = defaults;
  shifted.time += 4.0 * std::numbers::pi;
  const MeasurementDilation d1 = erasure_dilation(defaults);
  const MeasurementDilation d2 = erasure_dilation(shifted);
  for (double p : {0.2, 0.8}) {
    const auto [a1, a2] = reduced_states(d1, qubit_diag(p));
    const auto [b1, b2] = reduced_states(d2, qubit_diag(p));
    CHECK(max_abs(a1.matrix() - b1.matrix()) < 1e-9);
    const EntropyReport r1 = conditional_action_report(d1, qubit_diag(p));
    const EntropyReport r2 = conditional_action_report(d2, qubit_diag(p));
    CHECK(std::abs(r1.s1 - r2.s1) < 1e-9);
    CHECK(std::abs(r1.s2 - r2.s2) < 1e-9);
  }
}

TEST_CASE("instrument extraction agrees with the direct dilation formula") {
  const MeasurementDilation d = erasure_dilation(defaults);
  const Instrument ins = instrument_from_dilation(d);
  const DensityOperator rho = qubit_diag(0.37);
  const ComplexMatrix joint = post_measurement_state(d, rho);
  const ComplexMatrix rho1_direct = partial_trace(joint, 2, 64, TraceSide::Right);
  const ComplexMatrix rho1_kraus =
      apply_kraus(total_operation(ins), rho.matrix());
  CHECK(max_abs(rho1_direct - rho1_kraus) < 1e-10);
}

TEST_CASE("two-qubit counterexample: violation with intact balance") {
  const TwoQubitCounterexample ce = two_qubit_counterexample();

  CHECK(ce.coarse_report.delta_s ==
        doctest::Approx(std::log(4.0)).epsilon(1e-10));
  CHECK(ce.coarse_report.shannon_h ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_FALSE(ce.coarse_report.szilard_bound_holds);
  CHECK(ce.coarse_report.balance_holds);

  CHECK(ce.fine_report.szilard_bound_holds);
  CHECK(ce.fine_report.delta_s == doctest::Approx(std::log(4.0)).epsilon(1e-10));
  CHECK(ce.fine_report.shannon_h ==
        doctest::Approx(std::log(4.0)).epsilon(1e-10));
  CHECK(is_pure(instrument_from_dilation(ce.fine_dilation)));

  // Every basis state lands on the default state ↓↓.
  const Operation total =
      total_operation(instrument_from_dilation(ce.fine_dilation));
  ComplexMatrix target = ComplexMatrix::Zero(4, 4);
  target(3, 3) = 1.0;
  for (int nu = 0; nu < 4; ++nu) {
    ComplexMatrix basis_state = ComplexMatrix::Zero(4, 4);
    basis_state(nu, nu) = 1.0;
    CHECK(max_abs(apply_kraus(total, basis_state) - target) < 1e-12);
  }

  // Both dilations share one total operation.
  CHECK(verify_total_op_independence(ce.fine_dilation, ce.coarse_dilation.q()));
}

TEST_CASE("config validation") {
  SpinBathConfig bad = defaults;
  bad.n_bath = 0;
  CHECK_THROWS_AS(erasure_dilation(bad), ValidationError);
  bad = defaults;
  bad.coupling = -1.0;
  CHECK_THROWS_AS(heisenberg_hamiltonian(bad, 2), ValidationError);
  CHECK_THROWS_AS(heisenberg_hamiltonian(defaults, 10), ShapeError);
  CHECK_THROWS_AS(qubit_diag(1.5), DomainError);
}
