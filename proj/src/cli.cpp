#include "qi/cli.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "qi/serialize.hpp"
#include "qi/verify.hpp"

namespace qi::cli {

namespace fs = std::filesystem;
using io::json;

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "svg") return OutputFormat::Svg;
  throw DomainError("unknown format '" + name + "' (expected json|csv|svg)");
}

namespace {

json config_json(const RunConfig& cfg) {
  return {{"n_bath", cfg.spin.n_bath},
          {"coupling", cfg.spin.coupling},
          {"field", cfg.spin.field},
          {"time", cfg.spin.time}};
}

void prepare_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw io::IoError("cannot create output directory " + cfg.out_dir);
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

void write_json(const RunConfig& cfg, const std::string& name, const json& j) {
  io::write_text_file(out_path(cfg, name), j.dump(2) + "\n");
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_verify_failure;
  }
}

// Group a numerical spectrum into (energy, multiplicity) rows; eigenvalues
// closer than tol fall into one level reported at the group mean.
std::vector<std::pair<double, int>> grouped_spectrum(const RealVector& values,
                                                     double tol) {
  std::vector<std::pair<double, int>> groups;
  Eigen::Index i = 0;
  while (i < values.size()) {
    Eigen::Index j = i + 1;
    double sum = values(i);
    while (j < values.size() && values(j) - values(j - 1) <= tol) {
      sum += values(j);
      ++j;
    }
    groups.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }
  return groups;
}

struct GroundData {
  HermitianOperator projector;
  double energy;
  int rank;
};

GroundData bath_ground(const SpinBathConfig& spin) {
  const HermitianOperator bath = heisenberg_hamiltonian(spin, spin.n_bath);
  const double e0 = hermitian_eig(bath).eigenvalues.minCoeff();
  HermitianOperator q0 = eigenspace_projector(bath, e0, tol::degeneracy);
  const int rank = static_cast<int>(std::round(q0.matrix().trace().real()));
  return {std::move(q0), e0, rank};
}

std::string svg_curves(const std::vector<CurvePoint>& curve);

}  // namespace

int cmd_spectrum(const RunConfig& cfg) {
  return run_guarded([&] {
    cfg.spin.validate();
    prepare_out_dir(cfg);

    const int max_n = cfg.spin.n_bath + 1;
    std::ostringstream deg;
    deg << "N,S,D,states\n";
    for (const auto& entry : degeneracy_table(max_n).entries())
      deg << entry.n << "," << io::csv_double(entry.twice_s / 2.0) << ","
          << entry.count << "," << entry.count * (entry.twice_s + 1) << "\n";
    io::write_text_file(out_path(cfg, "degeneracies.csv"), deg.str());

    std::ostringstream spec;
    spec << "N,energy,multiplicity\n";
    for (int n : {cfg.spin.n_bath, cfg.spin.n_bath + 1}) {
      const RealVector values =
          hermitian_eig(heisenberg_hamiltonian(cfg.spin, n)).eigenvalues;
      for (const auto& [energy, count] : grouped_spectrum(values, tol::degeneracy))
        spec << n << "," << io::csv_double(energy) << "," << count << "\n";
    }
    io::write_text_file(out_path(cfg, "spectrum.csv"), spec.str());
    return exit_ok;
  });
}

int cmd_erase(const RunConfig& cfg) {
  return run_guarded([&] {
    cfg.spin.validate();
    prepare_out_dir(cfg);

    const MeasurementDilation dil = erasure_dilation(cfg.spin);
    const Instrument ins = instrument_from_dilation(dil);
    const Instrument minimal = minimal_kraus(ins);
    const BlochAffineMap bloch = bloch_affine_map(total_operation(minimal));
    const EllipsoidLandmarks marks = ellipsoid_landmarks(bloch);
    const Povm povm = effects_of(ins);

    json outcomes = json::array();
    for (std::size_t n = 0; n < minimal.size(); ++n) {
      json kraus = json::array();
      for (const ComplexMatrix& a : minimal.op(n).kraus())
        kraus.push_back(io::matrix_to_json(a));
      outcomes.push_back({{"label", minimal.outcomes()[n]},
                          {"effect", io::matrix_to_json(povm.effect(n).op().matrix())},
                          {"kraus", kraus},
                          {"kraus_count", minimal.op(n).kraus().size()}});
    }

    const json out = {
        {"config", config_json(cfg)},
        {"bloch_matrix", io::real_matrix_to_json(bloch.matrix)},
        {"ellipsoid",
         {{"center_state", io::matrix_to_json(marks.center.matrix())},
          {"north_pole_image", io::matrix_to_json(marks.north_pole_image.matrix())},
          {"south_pole_image", io::matrix_to_json(marks.south_pole_image.matrix())},
          {"semi_axes", marks.semi_axes}}},
        {"outcomes", outcomes}};
    write_json(cfg, "erasure.json", out);
    return exit_ok;
  });
}

int cmd_curves(const RunConfig& cfg) {
  return run_guarded([&] {
    cfg.spin.validate();
    if (cfg.grid < 2) throw ValidationError("curves: grid must be ≥ 2");
    prepare_out_dir(cfg);

    std::vector<double> grid(cfg.grid);
    for (int i = 0; i < cfg.grid; ++i)
      grid[i] = static_cast<double>(i) / (cfg.grid - 1);

    const GroundData ground = bath_ground(cfg.spin);
    const double bath_entropy = std::log(static_cast<double>(ground.rank));
    // Entropies are computed in nats; --bits rescales the report only.
    const double unit = cfg.bits ? 1.0 / std::log(2.0) : 1.0;

    const std::vector<CurvePoint> curve = entropy_curve(cfg.spin, grid);
    std::ostringstream csv;
    csv << "p,S0,S1,S2,H,delta_S,total_initial,total_final\n";
    for (const CurvePoint& pt : curve)
      csv << io::csv_double(pt.p) << "," << io::csv_double(unit * pt.s0) << ","
          << io::csv_double(unit * pt.s1) << "," << io::csv_double(unit * pt.s2)
          << "," << io::csv_double(unit * pt.shannon_h) << ","
          << io::csv_double(unit * pt.delta_s) << ","
          << io::csv_double(unit * (pt.s0 + bath_entropy)) << ","
          << io::csv_double(unit * (pt.s1 + pt.s2)) << "\n";
    io::write_text_file(out_path(cfg, "curves.csv"), csv.str());

    const MeasurementDilation dil = erasure_dilation(cfg.spin);
    const EntropyReport at_half = conditional_action_report(dil, qubit_diag(0.5));
    const EntropyReport at_one = conditional_action_report(dil, qubit_diag(1.0));

    const json summary = {{"config", config_json(cfg)},
                          {"grid", cfg.grid},
                          {"entropy_unit", cfg.bits ? "bits" : "nats"},
                          {"p1", find_p1(cfg.spin)},
                          {"S_half", unit * at_half.s1},
                          {"S_f", unit * (at_one.s1 + at_one.s2)},
                          {"bath_entropy", unit * bath_entropy},
                          {"ground_energy", ground.energy},
                          {"ground_degeneracy", ground.rank}};
    write_json(cfg, "summary.json", summary);

    if (cfg.format == OutputFormat::Svg)
      io::write_text_file(out_path(cfg, "curves.svg"), svg_curves(curve));
    return exit_ok;
  });
}

int cmd_verify(const RunConfig& cfg) {
  return run_guarded([&] {
    prepare_out_dir(cfg);
    const verify::SuiteReport report =
        verify::run_suites(cfg.seed, 200, cfg.tol_scale);

    json properties = json::array();
    for (const verify::PropertyResult& p : report.properties)
      properties.push_back({{"name", p.name},
                            {"trials", p.trials},
                            {"worst_margin", p.worst},
                            {"threshold", p.threshold},
                            {"pass", p.pass}});
    const verify::CounterexampleResult& ce = report.counterexample;
    const json out = {{"seed", report.seed},
                      {"tol_scale", report.tol_scale},
                      {"properties", properties},
                      {"counterexample",
                       {{"delta_S", ce.delta_s},
                        {"shannon_H", ce.shannon_h},
                        {"bound", ce.shannon_h},
                        {"expected_violation", ce.expected_violation},
                        {"violation_observed", ce.violation_observed},
                        {"balance_holds", ce.balance_holds},
                        {"prop1_total_ops_equal", ce.prop1_total_ops_equal},
                        {"pass", ce.pass}}},
                      {"all_pass", report.all_pass}};
    write_json(cfg, "verify.json", out);

    if (!report.all_pass) {
      std::cerr << "verification failed:";
      for (const verify::PropertyResult& p : report.properties)
        if (!p.pass) std::cerr << " " << p.name;
      if (!ce.pass) std::cerr << " counterexample";
      std::cerr << "\n";
      return exit_verify_failure;
    }
    return exit_ok;
  });
}

int cmd_dilate(const RunConfig& cfg, const std::string& input_path) {
  return run_guarded([&] {
    prepare_out_dir(cfg);
    const Instrument ins = io::instrument_from_json(io::load_json_file(input_path));
    const MeasurementDilation dil = standard_dilation(ins);
    const Instrument round = instrument_from_dilation(dil);

    json distances = json::array();
    double worst = 0.0;
    for (std::size_t n = 0; n < ins.size(); ++n) {
      const double dist = choi_distance(ins.op(n), round.op(n));
      worst = std::max(worst, dist);
      distances.push_back({{"label", ins.outcomes()[n]}, {"choi_distance", dist}});
    }

    json projections = json::array();
    for (const HermitianOperator& qn : dil.q().projections())
      projections.push_back(io::matrix_to_json(qn.matrix()));

    const json out = {{"sys_dim", dil.sys_dim()},
                      {"aux_dim", dil.aux_dim()},
                      {"sigma", io::matrix_to_json(dil.sigma().matrix())},
                      {"V", io::matrix_to_json(dil.v().matrix())},
                      {"Q", projections},
                      {"round_trip", distances},
                      {"max_round_trip_distance", worst}};
    write_json(cfg, "dilation.json", out);
    return exit_ok;
  });
}

namespace {

// Minimal standalone line plot; presentation only, nothing reads it back.
std::string svg_curves(const std::vector<CurvePoint>& curve) {
  const int width = 640, height = 440, margin = 50;
  double y_max = 0.0;
  for (const CurvePoint& pt : curve)
    y_max = std::max({y_max, pt.s0, pt.s1, pt.s2, pt.shannon_h});
  if (y_max <= 0.0) y_max = 1.0;

  const auto x_of = [&](double p) {
    return margin + p * (width - 2 * margin);
  };
  const auto y_of = [&](double v) {
    return height - margin - v / y_max * (height - 2 * margin);
  };
  const auto polyline = [&](const char* color, auto select) {
    std::ostringstream line;
    line << "  <polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
    for (const CurvePoint& pt : curve)
      line << x_of(pt.p) << "," << y_of(select(pt)) << " ";
    line << "\"/>\n";
    return line.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <line x1=\"" << margin << "\" y1=\"" << height - margin
      << "\" x2=\"" << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\""
      << margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  svg << polyline("#d62728", [](const CurvePoint& pt) { return pt.s0; });
  svg << polyline("#1f77b4", [](const CurvePoint& pt) { return pt.s1; });
  svg << polyline("#2ca02c", [](const CurvePoint& pt) { return pt.s2; });
  svg << polyline("#9467bd", [](const CurvePoint& pt) { return pt.shannon_h; });
  svg << "  <text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">p</text>\n"
      << "  <text x=\"" << width - margin << "\" y=\"20\" text-anchor=\"end\" "
         "font-size=\"12\">S0 (red), S1 (blue), S2 (green), H (purple)</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace

}  // namespace qi::cli
