#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qi/cli.hpp"
#include "qi/verify.hpp"

namespace py = pybind11;
using namespace qi;

namespace {

SharpObservable make_sharp(const std::vector<ComplexMatrix>& projections) {
  std::vector<HermitianOperator> ops;
  ops.reserve(projections.size());
  for (const ComplexMatrix& p : projections) ops.emplace_back(p);
  return SharpObservable(std::move(ops));
}

std::vector<UnitaryOperator> make_unitaries(
    const std::vector<ComplexMatrix>& matrices) {
  std::vector<UnitaryOperator> out;
  out.reserve(matrices.size());
  for (const ComplexMatrix& u : matrices) out.emplace_back(u);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum instruments, measurement dilations and the spin-bath "
            "erasure model";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  // Dense operator algebra ---------------------------------------------
  m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const ComplexMatrix& mat, Eigen::Index dim_left, Eigen::Index dim_right,
         const std::string& traced_out) {
        if (traced_out != "left" && traced_out != "right")
          throw DomainError("traced_out must be 'left' or 'right'");
        return partial_trace(mat, dim_left, dim_right,
                             traced_out == "left" ? TraceSide::Left
                                                  : TraceSide::Right);
      },
      py::arg("matrix"), py::arg("dim_left"), py::arg("dim_right"),
      py::arg("traced_out"));
  m.def(
      "hermitian_eig",
      [](const ComplexMatrix& h) {
        EigenDecomposition eig = hermitian_eig(HermitianOperator(h));
        return py::make_tuple(eig.eigenvalues, eig.eigenvectors.matrix());
      },
      py::arg("matrix"), "eigenvalues (ascending) and eigenvector columns");
  m.def(
      "unitary_exp",
      [](const ComplexMatrix& h, double t) {
        return unitary_exp(HermitianOperator(h), t).matrix();
      },
      py::arg("matrix"), py::arg("t"));
  m.def(
      "eigenspace_projector",
      [](const ComplexMatrix& h, double level, double tol) {
        return eigenspace_projector(HermitianOperator(h), level, tol).matrix();
      },
      py::arg("matrix"), py::arg("level"), py::arg("tol") = tol::degeneracy);

  // Operations and instruments -----------------------------------------
  py::class_<Operation>(m, "Operation")
      .def(py::init<std::vector<ComplexMatrix>>(), py::arg("kraus"))
      .def_property_readonly("dim", &Operation::dim)
      .def_property_readonly("kraus",
                             [](const Operation& op) { return op.kraus(); })
      .def("apply",
           [](const Operation& op, const ComplexMatrix& rho) {
             return apply_operation(op, DensityOperator(rho)).matrix();
           })
      .def("dual_apply",
           [](const Operation& op, const ComplexMatrix& x) {
             return dual_apply(op, HermitianOperator(x)).matrix();
           })
      .def("choi",
           [](const Operation& op) { return choi_matrix(op).matrix(); })
      .def("minimal_kraus",
           [](const Operation& op) { return minimal_kraus_operation(op); });
  m.def("operations_equal", &operations_equal, py::arg("a"), py::arg("b"),
        py::arg("tol") = tol::channel_equality);
  m.def("choi_distance", &choi_distance, py::arg("a"), py::arg("b"));

  py::class_<Instrument>(m, "Instrument")
      .def(py::init<std::vector<std::string>, std::vector<Operation>>(),
           py::arg("outcomes"), py::arg("ops"))
      .def_property_readonly("dim", &Instrument::dim)
      .def_property_readonly("outcomes",
                             [](const Instrument& ins) { return ins.outcomes(); })
      .def("op", &Instrument::op, py::arg("index"))
      .def("total_operation",
           [](const Instrument& ins) { return total_operation(ins); })
      .def("effects",
           [](const Instrument& ins) {
             const Povm povm = effects_of(ins);
             std::vector<ComplexMatrix> out;
             for (const Effect& e : povm.effects())
               out.push_back(e.op().matrix());
             return out;
           })
      .def("probabilities",
           [](const Instrument& ins, const ComplexMatrix& rho) {
             return outcome_probabilities(ins, DensityOperator(rho));
           })
      .def("is_pure", [](const Instrument& ins) { return is_pure(ins); })
      .def("minimal_kraus",
           [](const Instrument& ins) { return minimal_kraus(ins); });

  m.def(
      "luders_instrument",
      [](const std::vector<ComplexMatrix>& projections) {
        return luders_instrument(make_sharp(projections));
      },
      py::arg("projections"));
  m.def(
      "maxwell_instrument",
      [](const std::vector<ComplexMatrix>& projections,
         const std::vector<ComplexMatrix>& unitaries) {
        return maxwell_instrument(make_sharp(projections),
                                  make_unitaries(unitaries));
      },
      py::arg("projections"), py::arg("unitaries"));
  m.def(
      "convex_combination",
      [](const std::vector<double>& weights,
         const std::vector<Instrument>& parts) {
        return convex_combination(weights, parts);
      },
      py::arg("weights"), py::arg("parts"));

  // Measurement dilations ------------------------------------------------
  py::class_<MeasurementDilation>(m, "MeasurementDilation")
      .def(py::init([](Eigen::Index sys_dim, Eigen::Index aux_dim,
                       const ComplexMatrix& sigma, const ComplexMatrix& v,
                       const std::vector<ComplexMatrix>& q) {
             return MeasurementDilation(sys_dim, aux_dim,
                                        DensityOperator(sigma),
                                        UnitaryOperator(v), make_sharp(q));
           }),
           py::arg("sys_dim"), py::arg("aux_dim"), py::arg("sigma"),
           py::arg("v"), py::arg("q"))
      .def_property_readonly("sys_dim", &MeasurementDilation::sys_dim)
      .def_property_readonly("aux_dim", &MeasurementDilation::aux_dim)
      .def_property_readonly(
          "sigma",
          [](const MeasurementDilation& d) { return d.sigma().matrix(); })
      .def_property_readonly(
          "v", [](const MeasurementDilation& d) { return d.v().matrix(); })
      .def_property_readonly("q",
                             [](const MeasurementDilation& d) {
                               std::vector<ComplexMatrix> out;
                               for (const auto& p : d.q().projections())
                                 out.push_back(p.matrix());
                               return out;
                             })
      .def("instrument",
           [](const MeasurementDilation& d) {
             return instrument_from_dilation(d);
           })
      .def("reduced_states",
           [](const MeasurementDilation& d, const ComplexMatrix& rho) {
             auto [rho1, rho2] = reduced_states(d, DensityOperator(rho));
             return py::make_tuple(rho1.matrix(), rho2.matrix());
           });
  m.def("standard_dilation", &standard_dilation, py::arg("instrument"));
  m.def(
      "verify_total_op_independence",
      [](const MeasurementDilation& d, const std::vector<ComplexMatrix>& q_alt,
         double tol) {
        return verify_total_op_independence(d, make_sharp(q_alt), tol);
      },
      py::arg("dilation"), py::arg("q_alt"),
      py::arg("tol") = tol::channel_equality);

  // Entropy --------------------------------------------------------------
  py::class_<EntropyReport>(m, "EntropyReport")
      .def_readonly("s0", &EntropyReport::s0)
      .def_readonly("s1", &EntropyReport::s1)
      .def_readonly("s2", &EntropyReport::s2)
      .def_readonly("s_sigma", &EntropyReport::s_sigma)
      .def_readonly("delta_s", &EntropyReport::delta_s)
      .def_readonly("shannon_h", &EntropyReport::shannon_h)
      .def_readonly("szilard_bound_holds", &EntropyReport::szilard_bound_holds)
      .def_readonly("balance_holds", &EntropyReport::balance_holds);
  py::class_<OlrReport>(m, "OlrReport")
      .def_readonly("s1", &OlrReport::s1)
      .def_readonly("s2", &OlrReport::s2)
      .def_readonly("s12", &OlrReport::s12)
      .def_readonly("s1_prime", &OlrReport::s1_prime)
      .def_readonly("s2_prime", &OlrReport::s2_prime)
      .def_readonly("s12_prime", &OlrReport::s12_prime)
      .def_readonly("info", &OlrReport::info)
      .def_readonly("info_prime", &OlrReport::info_prime)
      .def_readonly("delta_info", &OlrReport::delta_info)
      .def_readonly("delta_s", &OlrReport::delta_s)
      .def_readonly("bound_holds", &OlrReport::bound_holds);

  m.def(
      "von_neumann_entropy",
      [](const ComplexMatrix& rho) {
        return von_neumann_entropy(DensityOperator(rho));
      },
      py::arg("rho"));
  m.def(
      "shannon_entropy",
      [](const std::vector<double>& p) { return shannon_entropy(p); },
      py::arg("p"));
  m.def(
      "conditional_action_report",
      [](const MeasurementDilation& d, const ComplexMatrix& rho) {
        return conditional_action_report(d, DensityOperator(rho));
      },
      py::arg("dilation"), py::arg("rho"));
  m.def(
      "szilard_bound_check",
      [](const Instrument& ins, const ComplexMatrix& rho) {
        return szilard_bound_check(ins, DensityOperator(rho));
      },
      py::arg("instrument"), py::arg("rho"));
  m.def(
      "olr_report",
      [](const std::vector<ComplexMatrix>& projections,
         const std::vector<ComplexMatrix>& unitaries, const ComplexMatrix& rho) {
        return olr_report(make_sharp(projections), make_unitaries(unitaries),
                          DensityOperator(rho));
      },
      py::arg("projections"), py::arg("unitaries"), py::arg("rho"));
  m.def(
      "subadditivity_check",
      [](const ComplexMatrix& rho12, Eigen::Index dim_left,
         Eigen::Index dim_right) {
        return subadditivity_check(DensityOperator(rho12), dim_left, dim_right);
      },
      py::arg("rho12"), py::arg("dim_left"), py::arg("dim_right"));

  // Spin-bath erasure model ----------------------------------------------
  py::class_<SpinBathConfig>(m, "SpinBathConfig")
      .def(py::init([](int n_bath, double coupling, double field, double time) {
             SpinBathConfig cfg{n_bath, coupling, field, time};
             cfg.validate();
             return cfg;
           }),
           py::arg("n_bath") = 6, py::arg("coupling") = 1.0,
           py::arg("field") = 1.0, py::arg("time") = 2.0 * std::numbers::pi)
      .def_readwrite("n_bath", &SpinBathConfig::n_bath)
      .def_readwrite("coupling", &SpinBathConfig::coupling)
      .def_readwrite("field", &SpinBathConfig::field)
      .def_readwrite("time", &SpinBathConfig::time);

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("p", &CurvePoint::p)
      .def_readonly("s0", &CurvePoint::s0)
      .def_readonly("s1", &CurvePoint::s1)
      .def_readonly("s2", &CurvePoint::s2)
      .def_readonly("shannon_h", &CurvePoint::shannon_h)
      .def_readonly("delta_s", &CurvePoint::delta_s);

  py::class_<TwoQubitCounterexample>(m, "TwoQubitCounterexample")
      .def_readonly("fine_dilation", &TwoQubitCounterexample::fine_dilation)
      .def_readonly("coarse_dilation", &TwoQubitCounterexample::coarse_dilation)
      .def_readonly("fine_report", &TwoQubitCounterexample::fine_report)
      .def_readonly("coarse_report", &TwoQubitCounterexample::coarse_report);

  m.def(
      "heisenberg_hamiltonian",
      [](const SpinBathConfig& cfg, int total_spins) {
        return heisenberg_hamiltonian(cfg, total_spins).matrix();
      },
      py::arg("config"), py::arg("total_spins"));
  m.def(
      "energy_levels",
      [](int n, double j, double b) {
        std::vector<py::tuple> out;
        for (const EnergyLevel& level : energy_levels(n, j, b))
          out.push_back(py::make_tuple(level.twice_s / 2.0,
                                       level.twice_m / 2.0, level.energy));
        return out;
      },
      py::arg("n"), py::arg("j") = 1.0, py::arg("b") = 1.0,
      "list of (S, M, E) tuples");
  m.def(
      "degeneracy_table",
      [](int max_n) {
        py::dict out;
        for (const auto& entry : degeneracy_table(max_n).entries())
          out[py::make_tuple(entry.n, entry.twice_s / 2.0)] = entry.count;
        return out;
      },
      py::arg("max_n"), "dict mapping (N, S) to D_N(S)");
  m.def("erasure_dilation", &erasure_dilation, py::arg("config"));
  m.def(
      "bloch_affine_map",
      [](const Operation& op) { return bloch_affine_map(op).matrix; },
      py::arg("op"));
  m.def(
      "ellipsoid_landmarks",
      [](const Eigen::Matrix4d& matrix) {
        const EllipsoidLandmarks marks = ellipsoid_landmarks({matrix});
        py::dict out;
        out["center_state"] = marks.center.matrix();
        out["north_pole_image"] = marks.north_pole_image.matrix();
        out["south_pole_image"] = marks.south_pole_image.matrix();
        out["semi_axes"] = marks.semi_axes;
        return out;
      },
      py::arg("bloch_matrix"));
  m.def(
      "qubit_diag", [](double p) { return qubit_diag(p).matrix(); },
      py::arg("p"));
  m.def(
      "entropy_curve",
      [](const SpinBathConfig& cfg, const std::vector<double>& grid) {
        return entropy_curve(cfg, grid);
      },
      py::arg("config"), py::arg("p_grid"));
  m.def("find_p1", &find_p1, py::arg("config"));
  m.def("two_qubit_counterexample", &two_qubit_counterexample);

  m.def(
      "run_verification",
      [](std::uint64_t seed, int trials) {
        const verify::SuiteReport report = verify::run_suites(seed, trials);
        py::dict out;
        out["all_pass"] = report.all_pass;
        py::list properties;
        for (const verify::PropertyResult& p : report.properties) {
          py::dict item;
          item["name"] = p.name;
          item["trials"] = p.trials;
          item["worst_margin"] = p.worst;
          item["threshold"] = p.threshold;
          item["pass"] = p.pass;
          properties.append(item);
        }
        out["properties"] = properties;
        return out;
      },
      py::arg("seed") = 12345, py::arg("trials") = 200);
}
