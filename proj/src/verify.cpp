#include "qi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qi::verify {

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

DensityOperator random_density(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator((rho + rho.adjoint()) / 2.0);
}

UnitaryOperator random_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return UnitaryOperator(std::move(q));
}

SharpObservable random_sharp_observable(Eigen::Index dim, int parts, Rng& rng) {
  if (parts < 1 || parts > dim)
    throw DomainError("random_sharp_observable: invalid part count");
  const UnitaryOperator u = random_unitary(dim, rng);

  // Random composition of dim into `parts` positive sizes.
  std::vector<Eigen::Index> sizes(parts, 1);
  std::uniform_int_distribution<int> pick(0, parts - 1);
  for (Eigen::Index extra = dim - parts; extra > 0; --extra)
    ++sizes[pick(rng)];

  std::vector<HermitianOperator> projections;
  Eigen::Index col = 0;
  for (int k = 0; k < parts; ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < sizes[k]; ++i, ++col)
      p += u.matrix().col(col) * u.matrix().col(col).adjoint();
    projections.emplace_back((p + p.adjoint()) / 2.0);
  }
  return SharpObservable(std::move(projections));
}

HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  return HermitianOperator((g + g.adjoint()) / 2.0);
}

Instrument random_instrument(Eigen::Index dim, int outcomes, int max_kraus,
                             Rng& rng) {
  std::uniform_int_distribution<int> kraus_count(1, max_kraus);
  std::vector<std::vector<ComplexMatrix>> raw(outcomes);
  ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
  for (auto& list : raw) {
    const int count = kraus_count(rng);
    for (int i = 0; i < count; ++i) {
      list.push_back(random_gaussian(dim, dim, rng));
      gram += list.back().adjoint() * list.back();
    }
  }
  // Normalize with T^{−1/2} so the total operation is exactly trace-preserving.
  const EigenDecomposition eig =
      hermitian_eig(HermitianOperator((gram + gram.adjoint()) / 2.0));
  ComplexVector inv_sqrt(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i)
    inv_sqrt(i) = 1.0 / std::sqrt(eig.eigenvalues(i));
  const ComplexMatrix t_inv_sqrt = eig.eigenvectors.matrix() *
                                   inv_sqrt.asDiagonal() *
                                   eig.eigenvectors.matrix().adjoint();

  std::vector<std::string> labels(outcomes);
  std::vector<Operation> ops;
  for (int n = 0; n < outcomes; ++n) {
    labels[n] = std::to_string(n);
    std::vector<ComplexMatrix> kraus;
    for (ComplexMatrix& b : raw[n]) kraus.push_back(b * t_inv_sqrt);
    ops.emplace_back(std::move(kraus));
  }
  return Instrument(std::move(labels), std::move(ops));
}

Instrument random_pure_instrument(Eigen::Index dim, int outcomes, Rng& rng) {
  return random_instrument(dim, outcomes, 1, rng);
}

MeasurementDilation random_dilation(Eigen::Index sys_dim, Eigen::Index aux_dim,
                                    int parts, Rng& rng) {
  return MeasurementDilation(sys_dim, aux_dim, random_density(aux_dim, rng),
                             random_unitary(sys_dim * aux_dim, rng),
                             random_sharp_observable(aux_dim, parts, rng));
}

namespace {

struct Suite {
  PropertyResult result;

  Suite(std::string name, int trials, double threshold) {
    result.name = std::move(name);
    result.trials = trials;
    result.threshold = threshold;
    result.worst = -std::numeric_limits<double>::infinity();
  }

  void record(double violation) {
    result.worst = std::max(result.worst, violation);
  }

  PropertyResult finish() {
    result.pass = result.worst <= result.threshold;
    return result;
  }
};

}  // namespace

SuiteReport run_suites(std::uint64_t seed, int trials, double tol_scale) {
  SuiteReport report;
  report.seed = seed;
  report.tol_scale = tol_scale;
  Rng rng(seed);

  std::uniform_int_distribution<int> dim_pick(2, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {  // ΔS ≤ H(ρ, F) for pure instruments.
    Suite suite("theorem1_pure_instruments", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const int dim = dim_pick(rng);
      std::uniform_int_distribution<int> outcome_pick(2, dim);
      const Instrument ins = random_pure_instrument(dim, outcome_pick(rng), rng);
      const DensityOperator rho = random_density(dim, rng);
      const double s0 = von_neumann_entropy(rho);
      const ComplexMatrix out = apply_kraus(total_operation(ins), rho.matrix());
      const double s1 =
          von_neumann_entropy(DensityOperator((out + out.adjoint()) / 2.0));
      const double h = shannon_entropy(outcome_probabilities(ins, rho));
      suite.record((s0 - s1) - h);
    }
    report.properties.push_back(suite.finish());
  }

  {  // Same bound for convex combinations of pure instruments.
    Suite suite("corollary1_convex_combinations", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const int dim = dim_pick(rng);
      std::uniform_int_distribution<int> outcome_pick(2, dim);
      const int outcomes = outcome_pick(rng);
      std::uniform_int_distribution<int> part_pick(2, 3);
      const int part_count = part_pick(rng);
      std::vector<Instrument> parts;
      std::vector<double> weights(part_count);
      double sum = 0.0;
      for (int i = 0; i < part_count; ++i) {
        parts.push_back(random_pure_instrument(dim, outcomes, rng));
        weights[i] = unit(rng) + 1e-3;
        sum += weights[i];
      }
      for (double& w : weights) w /= sum;
      const Instrument mix = convex_combination(weights, parts);
      const DensityOperator rho = random_density(dim, rng);
      const double s0 = von_neumann_entropy(rho);
      const ComplexMatrix out = apply_kraus(total_operation(mix), rho.matrix());
      const double s1 =
          von_neumann_entropy(DensityOperator((out + out.adjoint()) / 2.0));
      const double h = shannon_entropy(outcome_probabilities(mix, rho));
      suite.record((s0 - s1) - h);
    }
    report.properties.push_back(suite.finish());
  }

  {  // ΔS ≤ S(ρ₂) − S(σ) for arbitrary dilations.
    Suite suite("prop0_entropy_balance", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const Eigen::Index sys = 2 + (t % 2);
      const Eigen::Index aux = dim_pick(rng);
      std::uniform_int_distribution<int> part_pick(1, static_cast<int>(aux));
      const MeasurementDilation d =
          random_dilation(sys, aux, part_pick(rng), rng);
      const EntropyReport r =
          conditional_action_report(d, random_density(sys, rng));
      suite.record(r.delta_s - (r.s2 - r.s_sigma));
    }
    report.properties.push_back(suite.finish());
  }

  {  // Total operation does not depend on the auxiliary observable.
    Suite suite("prop1_q_independence", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const Eigen::Index sys = 2 + (t % 2);
      const Eigen::Index aux = dim_pick(rng);
      std::uniform_int_distribution<int> part_pick(1, static_cast<int>(aux));
      const MeasurementDilation d =
          random_dilation(sys, aux, part_pick(rng), rng);
      const SharpObservable q_alt =
          random_sharp_observable(aux, part_pick(rng), rng);
      const MeasurementDilation alt(d.sys_dim(), d.aux_dim(), d.sigma(), d.v(),
                                    q_alt);
      const double distance =
          choi_distance(total_operation(instrument_from_dilation(d)),
                        total_operation(instrument_from_dilation(alt)));
      suite.record(distance);
    }
    report.properties.push_back(suite.finish());
  }

  {  // ΔS ≤ Δ𝓘 for conditional actions with sharp observables.
    Suite suite("prop2_olr_bound", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const int dim = dim_pick(rng);
      std::uniform_int_distribution<int> part_pick(2, dim);
      const SharpObservable p = random_sharp_observable(dim, part_pick(rng), rng);
      std::vector<UnitaryOperator> u;
      for (std::size_t n = 0; n < p.size(); ++n)
        u.push_back(random_unitary(dim, rng));
      const OlrReport r = olr_report(p, u, random_density(dim, rng));
      suite.record(r.delta_s - r.delta_info);
    }
    report.properties.push_back(suite.finish());
  }

  {  // S(ρ₁₂) ≤ S(ρ₁) + S(ρ₂).
    Suite suite("subadditivity", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho12 = random_density(4, rng);
      const ComplexMatrix left =
          partial_trace(rho12.matrix(), 2, 2, TraceSide::Right);
      const ComplexMatrix right =
          partial_trace(rho12.matrix(), 2, 2, TraceSide::Left);
      const double s1 =
          von_neumann_entropy(DensityOperator((left + left.adjoint()) / 2.0));
      const double s2 =
          von_neumann_entropy(DensityOperator((right + right.adjoint()) / 2.0));
      suite.record(von_neumann_entropy(rho12) - s1 - s2);
    }
    report.properties.push_back(suite.finish());
  }

  {  // standard_dilation followed by extraction reproduces the instrument.
    Suite suite("dilation_round_trip", trials, 1e-9 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const Eigen::Index dim = 2 + (t % 2);
      std::uniform_int_distribution<int> outcome_pick(2, 3);
      const Instrument ins =
          random_instrument(dim, outcome_pick(rng), 3, rng);
      const Instrument round = instrument_from_dilation(standard_dilation(ins));
      for (std::size_t n = 0; n < ins.size(); ++n)
        suite.record(choi_distance(ins.op(n), round.op(n)));
    }
    report.properties.push_back(suite.finish());
  }

  {  // Tr(X·Φ(ρ)) = Tr(Φ*(X)·ρ).
    Suite suite("duality_identity", trials, 1e-10 * tol_scale);
    for (int t = 0; t < trials; ++t) {
      const int dim = 3;
      const Instrument ins = random_instrument(dim, 2, 2, rng);
      const Operation& op = ins.op(0);
      const DensityOperator rho = random_density(dim, rng);
      const HermitianOperator x = random_hermitian(dim, rng);
      const double lhs =
          (x.matrix() * apply_kraus(op, rho.matrix())).trace().real();
      const double rhs =
          (dual_apply(op, x).matrix() * rho.matrix()).trace().real();
      suite.record(std::abs(lhs - rhs));
    }
    report.properties.push_back(suite.finish());
  }

  {  // The two-qubit erasure with the coarse observable must violate the
     // Szilard bound while the entropy balance still holds.
    const TwoQubitCounterexample ce = two_qubit_counterexample();
    CounterexampleResult& r = report.counterexample;
    r.delta_s = ce.coarse_report.delta_s;
    r.shannon_h = ce.coarse_report.shannon_h;
    r.violation_observed = !ce.coarse_report.szilard_bound_holds;
    r.balance_holds = ce.coarse_report.balance_holds;
    r.prop1_total_ops_equal =
        verify_total_op_independence(ce.fine_dilation, ce.coarse_dilation.q(),
                                     std::max(1e-9 * tol_scale, 0.0));
    r.pass = r.violation_observed && r.balance_holds &&
             r.prop1_total_ops_equal && ce.fine_report.szilard_bound_holds;
  }

  report.all_pass = report.counterexample.pass;
  for (const PropertyResult& p : report.properties)
    report.all_pass = report.all_pass && p.pass;
  return report;
}

}  // namespace qi::verify
