#include "qi/spinmodel.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace qi {

void SpinBathConfig::validate() const {
  if (n_bath < 1) throw ValidationError("SpinBathConfig: n_bath must be ≥ 1");
  if (coupling <= 0.0) throw ValidationError("SpinBathConfig: coupling must be > 0");
  if (field <= 0.0) throw ValidationError("SpinBathConfig: field must be > 0");
}

namespace {

constexpr Eigen::Index dim_cap = 512;

ComplexMatrix eye(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix spin_half(char component) {
  ComplexMatrix s(2, 2);
  switch (component) {
    case 'x':
      s << 0.0, 0.5, 0.5, 0.0;
      break;
    case 'y':
      s << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0;
      break;
    default:
      s << 0.5, 0.0, 0.0, -0.5;
      break;
  }
  return s;
}

ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors) {
  ComplexMatrix out = eye(1);
  for (const ComplexMatrix& f : factors) out = tensor_product(out, f);
  return out;
}

const std::array<ComplexMatrix, 4>& pauli_basis() {
  static const std::array<ComplexMatrix, 4> sigma = [] {
    std::array<ComplexMatrix, 4> s;
    for (auto& m : s) m = ComplexMatrix(2, 2);
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

}  // namespace

HermitianOperator heisenberg_hamiltonian(const SpinBathConfig& cfg,
                                         int total_spins) {
  cfg.validate();
  if (total_spins < 1)
    throw ValidationError("heisenberg_hamiltonian: need at least one spin");
  const Eigen::Index dim = Eigen::Index(1) << total_spins;
  if (dim > dim_cap)
    throw ShapeError("heisenberg_hamiltonian: dimension exceeds 512");

  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int mu = 0; mu < total_spins; ++mu) {
    for (int nu = mu + 1; nu < total_spins; ++nu) {
      for (char c : {'x', 'y', 'z'}) {
        const ComplexMatrix s = spin_half(c);
        h += cfg.coupling *
             kron_all({eye(Eigen::Index(1) << mu), s,
                       eye(Eigen::Index(1) << (nu - mu - 1)), s,
                       eye(Eigen::Index(1) << (total_spins - nu - 1))});
      }
    }
    h += cfg.field * kron_all({eye(Eigen::Index(1) << mu), spin_half('z'),
                               eye(Eigen::Index(1) << (total_spins - mu - 1))});
  }
  return HermitianOperator(std::move(h));
}

std::vector<EnergyLevel> energy_levels(int n, double j, double b) {
  if (n < 1) throw ValidationError("energy_levels: need at least one spin");
  std::vector<EnergyLevel> levels;
  for (int twice_s = n % 2; twice_s <= n; twice_s += 2) {
    const double s = twice_s / 2.0;
    for (int twice_m = -twice_s; twice_m <= twice_s; twice_m += 2) {
      const double m = twice_m / 2.0;
      levels.push_back(
          {twice_s, twice_m, j / 2.0 * (s * (s + 1.0) - 3.0 * n / 4.0) + b * m});
    }
  }
  return levels;
}

DegeneracyTable::DegeneracyTable(int max_n) : max_n_(max_n) {
  if (max_n < 1) throw ValidationError("DegeneracyTable: max_n must be ≥ 1");
  table_[{1, 1}] = 1;
  for (int n = 1; n < max_n; ++n) {
    for (int twice_s = (n + 1) % 2; twice_s <= n + 1; twice_s += 2) {
      long long count = 0;
      if (twice_s - 1 >= 0) count += degeneracy(n, twice_s - 1);
      count += degeneracy(n, twice_s + 1);
      if (count > 0) table_[{n + 1, twice_s}] = count;
    }
  }
}

long long DegeneracyTable::degeneracy(int n, int twice_s) const {
  auto it = table_.find({n, twice_s});
  return it == table_.end() ? 0 : it->second;
}

std::vector<DegeneracyTable::Entry> DegeneracyTable::entries() const {
  std::vector<Entry> out;
  out.reserve(table_.size());
  for (const auto& [key, count] : table_)
    out.push_back({key.first, key.second, count});
  return out;
}

DegeneracyTable degeneracy_table(int max_n) { return DegeneracyTable(max_n); }

MeasurementDilation erasure_dilation(const SpinBathConfig& cfg) {
  cfg.validate();
  const HermitianOperator bath = heisenberg_hamiltonian(cfg, cfg.n_bath);
  const EigenDecomposition bath_eig = hermitian_eig(bath);
  const double ground_energy = bath_eig.eigenvalues.minCoeff();
  const HermitianOperator q0 =
      eigenspace_projector(bath, ground_energy, tol::degeneracy);
  const double rank = std::round(q0.matrix().trace().real());

  const Eigen::Index aux = bath.dim();
  DensityOperator sigma(q0.matrix() / rank);

  const HermitianOperator total = heisenberg_hamiltonian(cfg, cfg.n_bath + 1);
  UnitaryOperator v = unitary_exp(total, cfg.time);

  std::vector<HermitianOperator> q;
  q.push_back(q0);
  q.emplace_back(ComplexMatrix::Identity(aux, aux) - q0.matrix());
  return MeasurementDilation(2, aux, std::move(sigma), std::move(v),
                             SharpObservable(std::move(q)));
}

BlochAffineMap bloch_affine_map(const Operation& op) {
  if (op.dim() != 2)
    throw ShapeError("bloch_affine_map: qubit operations only");
  ComplexMatrix gram = ComplexMatrix::Zero(2, 2);
  for (const ComplexMatrix& a : op.kraus()) gram += a.adjoint() * a;
  if (max_abs(gram - eye(2)) > 1e-8)
    throw ValidationError("bloch_affine_map: operation is not trace-preserving");

  const auto& sigma = pauli_basis();
  BlochAffineMap map;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      map.matrix(a, b) =
          0.5 * (sigma[a] * apply_kraus(op, sigma[b])).trace().real();
  return map;
}

namespace {

DensityOperator bloch_state(const Eigen::Vector4d& coords) {
  const auto& sigma = pauli_basis();
  ComplexMatrix rho = 0.5 * (coords(0) * sigma[0] + coords(1) * sigma[1] +
                             coords(2) * sigma[2] + coords(3) * sigma[3]);
  return DensityOperator((rho + rho.adjoint()) / 2.0);
}

}  // namespace

EllipsoidLandmarks ellipsoid_landmarks(const BlochAffineMap& map) {
  const Eigen::Vector4d center = map.matrix * Eigen::Vector4d(1, 0, 0, 0);
  const Eigen::Vector4d north = map.matrix * Eigen::Vector4d(1, 0, 0, 1);
  const Eigen::Vector4d south = map.matrix * Eigen::Vector4d(1, 0, 0, -1);

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(map.matrix.block<3, 3>(1, 1));
  std::array<double, 3> axes{};
  Eigen::Vector3d::Map(axes.data()) = svd.singularValues();
  std::sort(axes.begin(), axes.end());

  return EllipsoidLandmarks{bloch_state(center), bloch_state(north),
                            bloch_state(south), axes};
}

Instrument minimal_kraus(const Instrument& ins) {
  std::vector<Operation> ops;
  ops.reserve(ins.size());
  for (const Operation& op : ins.ops())
    ops.push_back(minimal_kraus_operation(op));
  return Instrument(ins.outcomes(), std::move(ops));
}

DensityOperator qubit_diag(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw DomainError("qubit_diag: p must lie in [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = p;
  rho(1, 1) = 1.0 - p;
  return DensityOperator(std::move(rho));
}

std::vector<CurvePoint> entropy_curve(const SpinBathConfig& cfg,
                                      std::span<const double> p_grid) {
  const MeasurementDilation dil = erasure_dilation(cfg);
  std::vector<CurvePoint> curve;
  curve.reserve(p_grid.size());
  for (double p : p_grid) {
    const EntropyReport r = conditional_action_report(dil, qubit_diag(p));
    curve.push_back({p, r.s0, r.s1, r.s2, r.shannon_h, r.delta_s});
  }
  return curve;
}

double find_p1(const SpinBathConfig& cfg) {
  const MeasurementDilation dil = erasure_dilation(cfg);
  const Operation total =
      minimal_kraus_operation(total_operation(instrument_from_dilation(dil)));

  const auto entropy_gap = [&](double p) {
    const DensityOperator rho = qubit_diag(p);
    const ComplexMatrix out = apply_kraus(total, rho.matrix());
    const double s1 =
        von_neumann_entropy(DensityOperator((out + out.adjoint()) / 2.0));
    return von_neumann_entropy(rho) - s1;
  };

  double lo = 1e-6;
  double hi = 1.0;
  double f_lo = entropy_gap(lo);
  double f_hi = entropy_gap(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw DomainError("find_p1: no sign change on (0, 1)");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = entropy_gap(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TwoQubitCounterexample two_qubit_counterexample() {
  const Eigen::Index d = 4;
  // Swap on ℂ⁴⊗ℂ⁴: |Φ⊗Ψ⟩ ↦ |Ψ⊗Φ⟩.
  ComplexMatrix swap = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) swap(b * d + a, a * d + b) = 1.0;

  ComplexVector phi = ComplexVector::Zero(d);
  phi(3) = 1.0;  // ↓↓, the default state

  std::vector<HermitianOperator> fine;
  for (Eigen::Index nu = 0; nu < d; ++nu) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    p(nu, nu) = 1.0;
    fine.emplace_back(std::move(p));
  }
  ComplexMatrix first_up = ComplexMatrix::Zero(d, d);
  first_up(0, 0) = 1.0;
  first_up(1, 1) = 1.0;
  std::vector<HermitianOperator> coarse;
  coarse.emplace_back(first_up);
  coarse.emplace_back(ComplexMatrix::Identity(d, d) - first_up);

  MeasurementDilation fine_dil(d, d, DensityOperator::pure(phi),
                               UnitaryOperator(swap),
                               SharpObservable(std::move(fine)));
  MeasurementDilation coarse_dil(d, d, DensityOperator::pure(phi),
                                 UnitaryOperator(std::move(swap)),
                                 SharpObservable(std::move(coarse)));

  const DensityOperator rho = DensityOperator::maximally_mixed(d);
  EntropyReport fine_report = conditional_action_report(fine_dil, rho);
  EntropyReport coarse_report = conditional_action_report(coarse_dil, rho);
  return TwoQubitCounterexample{std::move(fine_dil), std::move(coarse_dil),
                                fine_report, coarse_report};
}

}  // namespace qi
