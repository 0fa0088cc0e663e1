#include <doctest.h>

#include "qi/dilation.hpp"
#include "qi/entropy.hpp"
#include "qi/verify.hpp"

using namespace qi;

namespace {

ComplexMatrix qubit_proj(int index) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(index, index) = 1.0;
  return p;
}

Instrument qubit_erasure_instrument() {
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const SharpObservable p(
      {HermitianOperator(qubit_proj(0)), HermitianOperator(qubit_proj(1))});
  return maxwell_instrument(
      p, {UnitaryOperator::identity(2), UnitaryOperator(swap)});
}

}  // namespace

TEST_CASE("trivial dilation realizes the identity instrument") {
  ComplexVector phi = ComplexVector::Zero(3);
  phi(0) = 1.0;
  const MeasurementDilation d(
      2, 3, DensityOperator::pure(phi), UnitaryOperator::identity(6),
      SharpObservable({HermitianOperator(ComplexMatrix::Identity(3, 3))}));
  const Instrument ins = instrument_from_dilation(d);
  CHECK(ins.size() == 1);
  CHECK(operations_equal(ins.op(0), Operation({ComplexMatrix::Identity(2, 2)}),
                         1e-12));
}

TEST_CASE("standard dilation of a pure two-outcome instrument has aux dim 2") {
  const MeasurementDilation d = standard_dilation(qubit_erasure_instrument());
  CHECK(d.aux_dim() == 2);
  CHECK(d.sys_dim() == 2);
  // Initial state is the first auxiliary basis vector.
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs(d.sigma().matrix() - expected) == 0.0);
}

TEST_CASE("standard dilation slice is a partial isometry") {
  verify::Rng rng(41);
  const Instrument ins = verify::random_instrument(2, 2, 3, rng);
  const MeasurementDilation d = standard_dilation(ins);
  const ComplexMatrix& v = d.v().matrix();
  const Eigen::Index aux = d.aux_dim();
  // Columns at the φ-slice positions b·aux carry Σ A_{ni}|b⟩⊗|ni⟩ and must
  // be orthonormal on their own (Σ F_n = 1).
  ComplexMatrix slice(v.rows(), 2);
  slice.col(0) = v.col(0 * aux);
  slice.col(1) = v.col(1 * aux);
  CHECK(max_abs(slice.adjoint() * slice - ComplexMatrix::Identity(2, 2)) <
        1e-12);
}

TEST_CASE("dilation round trip is channel-equal outcome by outcome") {
  verify::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Instrument ins = verify::random_instrument(2, 2 + trial % 2, 3, rng);
    const Instrument round = instrument_from_dilation(standard_dilation(ins));
    REQUIRE(round.size() == ins.size());
    for (std::size_t n = 0; n < ins.size(); ++n)
      CHECK(choi_distance(ins.op(n), round.op(n)) <= 1e-9);
  }
}

TEST_CASE("extend_partial_isometry keeps a complete basis untouched") {
  verify::Rng rng(43);
  const UnitaryOperator u = verify::random_unitary(4, rng);
  std::vector<ComplexVector> columns;
  for (Eigen::Index j = 0; j < 4; ++j) columns.push_back(u.matrix().col(j));
  CHECK(max_abs(extend_partial_isometry(columns, 4).matrix() - u.matrix()) ==
        0.0);
}

TEST_CASE("extend_partial_isometry completes canonically") {
  ComplexVector e1 = ComplexVector::Zero(3);
  e1(0) = 1.0;
  const ComplexMatrix u = extend_partial_isometry({e1}, 3).matrix();
  CHECK(max_abs(u - ComplexMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("extend_partial_isometry on random orthonormal columns") {
  verify::Rng rng(44);
  const UnitaryOperator u = verify::random_unitary(8, rng);
  std::vector<ComplexVector> columns;
  for (Eigen::Index j = 0; j < 4; ++j) columns.push_back(u.matrix().col(j));
  const UnitaryOperator extended = extend_partial_isometry(columns, 8);
  for (Eigen::Index j = 0; j < 4; ++j)
    CHECK(max_abs(extended.matrix().col(j) - columns[j]) == 0.0);

  ComplexVector tilted = ComplexVector::Zero(3);
  tilted(0) = 1.0;
  tilted(1) = 0.5;
  CHECK_THROWS_AS(extend_partial_isometry({tilted}, 3), ValidationError);
}

TEST_CASE("reduced system state equals the total-operation route") {
  verify::Rng rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const MeasurementDilation d = verify::random_dilation(2, 3, 2, rng);
    const DensityOperator rho = verify::random_density(2, rng);
    const auto [rho1, rho2] = reduced_states(d, rho);
    const ComplexMatrix via_total = apply_kraus(
        total_operation(instrument_from_dilation(d)), rho.matrix());
    CHECK(max_abs(rho1.matrix() - via_total) < 1e-10);
    CHECK(rho2.dim() == 3);
  }
}

TEST_CASE("total operation is independent of the auxiliary observable") {
  verify::Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const MeasurementDilation d = verify::random_dilation(2, 3, 3, rng);
    // Trivial observable (1_K) and a random coarse-graining both qualify.
    const SharpObservable trivial(
        {HermitianOperator(ComplexMatrix::Identity(3, 3))});
    CHECK(verify_total_op_independence(d, trivial));
    CHECK(verify_total_op_independence(
        d, verify::random_sharp_observable(3, 2, rng)));
  }
}

TEST_CASE("entropy balance holds for every generated dilation") {
  verify::Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const MeasurementDilation d =
        verify::random_dilation(2 + trial % 2, 2 + trial % 3, 2, rng);
    const DensityOperator rho = verify::random_density(d.sys_dim(), rng);
    const EntropyReport r = conditional_action_report(d, rho);
    CHECK(r.balance_holds);
    CHECK(r.delta_s <= r.s2 - r.s_sigma + 1e-9);
  }
}

TEST_CASE("branch probabilities sum to one") {
  verify::Rng rng(48);
  const MeasurementDilation d = verify::random_dilation(3, 4, 3, rng);
  const std::vector<double> p =
      branch_probabilities(d, verify::random_density(3, rng));
  double sum = 0.0;
  for (double pn : p) {
    CHECK(pn >= 0.0);
    sum += pn;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dilation dimension validation") {
  ComplexVector phi = ComplexVector::Zero(2);
  phi(0) = 1.0;
  CHECK_THROWS_AS(
      MeasurementDilation(
          2, 2, DensityOperator::pure(phi), UnitaryOperator::identity(5),
          SharpObservable({HermitianOperator(ComplexMatrix::Identity(2, 2))})),
      ShapeError);
}
