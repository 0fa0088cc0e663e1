#include "qi/entropy.hpp"

#include <array>
#include <cmath>

namespace qi {

namespace {

double spectrum_entropy(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("von_neumann_entropy: eigensolver failed");
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < -tol::positivity)
      throw ValidationError("von_neumann_entropy: negative eigenvalue");
    lambda = std::min(lambda, 1.0);  // spectrum of a state lies in [0, 1]
    if (lambda <= 0.0) continue;
    s -= lambda * std::log(lambda);
  }
  return s;
}

}  // namespace

double von_neumann_entropy(const DensityOperator& rho) {
  return spectrum_entropy(rho.matrix());
}

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  double h = 0.0;
  for (double pn : p) {
    if (pn < -1e-12)
      throw ValidationError("shannon_entropy: negative probability");
    sum += pn;
    if (pn > 0.0) h -= pn * std::log(pn);
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw ValidationError("shannon_entropy: probabilities must sum to 1");
  return h;
}

EntropyReport conditional_action_report(const MeasurementDilation& d,
                                        const DensityOperator& rho) {
  EntropyReport report;
  report.s0 = von_neumann_entropy(rho);
  report.s_sigma = von_neumann_entropy(d.sigma());
  auto [rho1, rho2] = reduced_states(d, rho);
  report.s1 = von_neumann_entropy(rho1);
  report.s2 = von_neumann_entropy(rho2);
  report.delta_s = report.s0 - report.s1;

  std::vector<double> p = branch_probabilities(d, rho);
  report.shannon_h = shannon_entropy(p);

  report.szilard_bound_holds =
      report.delta_s <= report.shannon_h + tol::entropy_bound;
  report.balance_holds =
      report.delta_s <= report.s2 - report.s_sigma + tol::entropy_bound;
  return report;
}

bool szilard_bound_check(const Instrument& ins, const DensityOperator& rho) {
  const double s0 = von_neumann_entropy(rho);
  const ComplexMatrix out = apply_kraus(total_operation(ins), rho.matrix());
  const double s1 =
      von_neumann_entropy(DensityOperator((out + out.adjoint()) / 2.0));
  const double h = shannon_entropy(outcome_probabilities(ins, rho));
  return s0 - s1 <= h + tol::entropy_bound;
}

OlrReport olr_report(const SharpObservable& p,
                     const std::vector<UnitaryOperator>& u,
                     const DensityOperator& rho) {
  if (rho.dim() != p.dim())
    throw ShapeError("olr_report: state dimension mismatch");
  const MeasurementDilation maxwell_dil =
      standard_dilation(maxwell_instrument(p, u));
  const MeasurementDilation luders_dil = standard_dilation(luders_instrument(p));

  const auto joint_entropies = [&](const MeasurementDilation& d) {
    const ComplexMatrix rho12 = post_measurement_state(d, rho);
    const DensityOperator joint((rho12 + rho12.adjoint()) / 2.0);
    auto [rho1, rho2] = reduced_states(d, rho);
    return std::array<double, 3>{von_neumann_entropy(rho1),
                                 von_neumann_entropy(rho2),
                                 von_neumann_entropy(joint)};
  };

  const auto [s1, s2, s12] = joint_entropies(maxwell_dil);
  const auto [s1p, s2p, s12p] = joint_entropies(luders_dil);

  OlrReport report;
  report.s1 = s1;
  report.s2 = s2;
  report.s12 = s12;
  report.s1_prime = s1p;
  report.s2_prime = s2p;
  report.s12_prime = s12p;
  report.info = s1 + s2 - s12;
  report.info_prime = s1p + s2p - s12p;
  report.delta_info = report.info_prime - report.info;
  report.delta_s = von_neumann_entropy(rho) - s1;
  report.bound_holds = report.delta_s <= report.delta_info + tol::entropy_bound;
  return report;
}

bool subadditivity_check(const DensityOperator& rho12, Eigen::Index dim_left,
                         Eigen::Index dim_right) {
  if (rho12.dim() != dim_left * dim_right)
    throw ShapeError("subadditivity_check: dimensions do not factor the state");
  const ComplexMatrix left =
      partial_trace(rho12.matrix(), dim_left, dim_right, TraceSide::Right);
  const ComplexMatrix right =
      partial_trace(rho12.matrix(), dim_left, dim_right, TraceSide::Left);
  const double s1 =
      von_neumann_entropy(DensityOperator((left + left.adjoint()) / 2.0));
  const double s2 =
      von_neumann_entropy(DensityOperator((right + right.adjoint()) / 2.0));
  return s1 + s2 >= von_neumann_entropy(rho12) - tol::entropy_bound;
}

}  // namespace qi
