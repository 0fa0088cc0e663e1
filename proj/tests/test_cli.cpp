#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qi/cli.hpp"
#include "qi/serialize.hpp"
#include "qi/verify.hpp"

using namespace qi;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("qi_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

cli::RunConfig config_for(const fs::path& dir) {
  cli::RunConfig cfg;
  cfg.out_dir = dir.string();
  return cfg;
}

}  // namespace

TEST_CASE("matrix JSON round trip is lossless") {
  verify::Rng rng(61);
  const ComplexMatrix m = verify::random_gaussian(3, 4, rng);
  const io::json j = io::matrix_to_json(m);
  const ComplexMatrix back = io::matrix_from_json(io::json::parse(j.dump()));
  REQUIRE(back.rows() == 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(back(i, k) == m(i, k));
}

TEST_CASE("instrument JSON round trip") {
  verify::Rng rng(62);
  const Instrument ins = verify::random_instrument(2, 3, 2, rng);
  const Instrument back =
      io::instrument_from_json(io::json::parse(io::instrument_to_json(ins).dump()));
  REQUIRE(back.size() == ins.size());
  CHECK(back.outcomes() == ins.outcomes());
  for (std::size_t n = 0; n < ins.size(); ++n)
    CHECK(choi_distance(back.op(n), ins.op(n)) == 0.0);
}

TEST_CASE("malformed instrument JSON reports a location") {
  const fs::path dir = fresh_dir("parse");
  const fs::path bad = dir / "bad.json";
  io::write_text_file(bad.string(), "{\n  \"outcomes\": [\n");
  CHECK_THROWS_WITH_AS(io::load_json_file(bad.string()),
                       doctest::Contains("bad.json:3"), io::ParseError);
  const Instrument dummy = [] {
    verify::Rng rng(63);
    return verify::random_instrument(2, 2, 1, rng);
  }();
  io::json j = io::instrument_to_json(dummy);
  j["outcomes"][0]["kraus"][0][0] = io::json::array({1.0});
  CHECK_THROWS_AS(io::instrument_from_json(j), io::ParseError);
}

TEST_CASE("spectrum command emits the degeneracy table and spectra") {
  const fs::path dir = fresh_dir("spectrum");
  REQUIRE(cli::cmd_spectrum(config_for(dir)) == cli::exit_ok);

  const std::string degeneracies = slurp(dir / "degeneracies.csv");
  CHECK(degeneracies.find("6,0,5,5") != std::string::npos);
  CHECK(degeneracies.find("6,1,9,27") != std::string::npos);

  // Per-N state counts in the table must saturate 2^N.
  std::istringstream lines(degeneracies);
  std::string line;
  std::getline(lines, line);  // header
  std::map<int, long long> totals;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string n_str, s_str, d_str, states_str;
    std::getline(cells, n_str, ',');
    std::getline(cells, s_str, ',');
    std::getline(cells, d_str, ',');
    std::getline(cells, states_str, ',');
    totals[std::stoi(n_str)] += std::stoll(states_str);
  }
  for (const auto& [n, total] : totals) CHECK(total == (1LL << n));

  const std::string spectrum = slurp(dir / "spectrum.csv");
  CHECK(spectrum.find("6,-2.25") != std::string::npos);
  CHECK(spectrum.find(",14\n") != std::string::npos);
}

TEST_CASE("erase command output matches the affine-map contract") {
  const fs::path dir = fresh_dir("erase");
  cli::RunConfig cfg = config_for(dir);
  REQUIRE(cli::cmd_erase(cfg) == cli::exit_ok);
  const io::json out = io::json::parse(slurp(dir / "erasure.json"));

  CHECK(out["outcomes"][0]["kraus_count"] == 2);
  CHECK(out["outcomes"][1]["kraus_count"] == 1);
  const auto& bloch = out["bloch_matrix"];
  CHECK(std::abs(bloch[3][0].get<double>() + 4.0 / 7.0) < 1e-9);
  CHECK(std::abs(bloch[3][3].get<double>() - 3.0 / 7.0) < 1e-9);

  // Away from the half-period the map changes, but trace preservation
  // keeps the first row pinned at (1, 0, 0, 0).
  cfg.spin.time = 1.0;
  REQUIRE(cli::cmd_erase(cfg) == cli::exit_ok);
  const io::json tilted = io::json::parse(slurp(dir / "erasure.json"));
  const auto& row0 = tilted["bloch_matrix"][0];
  CHECK(std::abs(row0[0].get<double>() - 1.0) < 1e-9);
  for (int j = 1; j < 4; ++j) CHECK(std::abs(row0[j].get<double>()) < 1e-9);
  CHECK(std::abs(tilted["bloch_matrix"][3][3].get<double>() -
                 bloch[3][3].get<double>()) > 1e-3);
}

TEST_CASE("curves command writes the grid and summary") {
  const fs::path dir = fresh_dir("curves");
  cli::RunConfig cfg = config_for(dir);
  cfg.grid = 21;
  cfg.format = cli::OutputFormat::Svg;
  REQUIRE(cli::cmd_curves(cfg) == cli::exit_ok);

  const std::string csv = slurp(dir / "curves.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "p,S0,S1,S2,H,delta_S,total_initial,total_final");
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    std::istringstream cells(line);
    std::vector<double> v;
    std::string cell;
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 8);
    CHECK(v[6] <= v[7] + 1e-9);  // total entropy never drops
  }
  CHECK(rows == 21);

  const io::json summary = io::json::parse(slurp(dir / "summary.json"));
  CHECK(std::abs(summary["bath_entropy"].get<double>() - std::log(14.0)) <
        1e-12);
  CHECK(summary["ground_degeneracy"] == 14);
  CHECK(fs::exists(dir / "curves.svg"));

  cfg.grid = 1;
  CHECK(cli::cmd_curves(cfg) == cli::exit_usage);
}

TEST_CASE("curves --bits rescales the reported entropies") {
  const fs::path dir = fresh_dir("curves_bits");
  cli::RunConfig cfg = config_for(dir);
  cfg.grid = 3;
  cfg.bits = true;
  REQUIRE(cli::cmd_curves(cfg) == cli::exit_ok);
  const io::json summary = io::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["entropy_unit"] == "bits");
  CHECK(std::abs(summary["bath_entropy"].get<double>() -
                 std::log(14.0) / std::log(2.0)) < 1e-12);
  CHECK(std::abs(summary["S_half"].get<double>() -
                 0.5195798391305154 / std::log(2.0)) < 1e-9);
}

TEST_CASE("verify command is deterministic and seed-sensitive") {
  const fs::path dir_a = fresh_dir("verify_a");
  const fs::path dir_b = fresh_dir("verify_b");
  cli::RunConfig cfg = config_for(dir_a);
  REQUIRE(cli::cmd_verify(cfg) == cli::exit_ok);
  cfg.out_dir = dir_b.string();
  REQUIRE(cli::cmd_verify(cfg) == cli::exit_ok);
  CHECK(slurp(dir_a / "verify.json") == slurp(dir_b / "verify.json"));

  cfg.seed = 999;
  REQUIRE(cli::cmd_verify(cfg) == cli::exit_ok);
  CHECK(slurp(dir_a / "verify.json") != slurp(dir_b / "verify.json"));

  const io::json report = io::json::parse(slurp(dir_b / "verify.json"));
  CHECK(report["all_pass"] == true);
  CHECK(report["counterexample"]["violation_observed"] == true);
}

TEST_CASE("verify with zeroed tolerances is a working negative control") {
  const fs::path dir = fresh_dir("verify_neg");
  cli::RunConfig cfg = config_for(dir);
  cfg.tol_scale = 0.0;
  CHECK(cli::cmd_verify(cfg) == cli::exit_verify_failure);
  const io::json report = io::json::parse(slurp(dir / "verify.json"));
  CHECK(report["all_pass"] == false);
}

TEST_CASE("erase output is byte-identical across runs") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  REQUIRE(cli::cmd_erase(config_for(dir_a)) == cli::exit_ok);
  REQUIRE(cli::cmd_erase(config_for(dir_b)) == cli::exit_ok);
  CHECK(slurp(dir_a / "erasure.json") == slurp(dir_b / "erasure.json"));
}

TEST_CASE("dilate command round-trips instrument files") {
  const fs::path dir = fresh_dir("dilate");
  cli::RunConfig cfg = config_for(dir);

  // Identity instrument: the slice embedding is exact.
  const Instrument identity(
      {"0"}, {Operation({ComplexMatrix::Identity(2, 2)})});
  io::write_text_file((dir / "identity.json").string(),
                      io::instrument_to_json(identity).dump());
  REQUIRE(cli::cmd_dilate(cfg, (dir / "identity.json").string()) ==
          cli::exit_ok);
  io::json out = io::json::parse(slurp(dir / "dilation.json"));
  CHECK(out["aux_dim"] == 1);
  CHECK(out["max_round_trip_distance"].get<double>() <= 1e-9);

  // Qubit conditional-action erasure: two outcomes, pure.
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const Instrument erase(
      {"keep", "flip"},
      {Operation({p0}), Operation({swap * (ComplexMatrix::Identity(2, 2) - p0)})});
  io::write_text_file((dir / "erase.json").string(),
                      io::instrument_to_json(erase).dump());
  REQUIRE(cli::cmd_dilate(cfg, (dir / "erase.json").string()) == cli::exit_ok);
  out = io::json::parse(slurp(dir / "dilation.json"));
  CHECK(out["aux_dim"] == 2);
  CHECK(out["max_round_trip_distance"].get<double>() <= 1e-9);
  CHECK(out["round_trip"][0]["label"] == "keep");

  // Random three-outcome instrument.
  verify::Rng rng(64);
  const Instrument random = verify::random_instrument(2, 3, 2, rng);
  io::write_text_file((dir / "random.json").string(),
                      io::instrument_to_json(random).dump());
  REQUIRE(cli::cmd_dilate(cfg, (dir / "random.json").string()) == cli::exit_ok);
  out = io::json::parse(slurp(dir / "dilation.json"));
  CHECK(out["max_round_trip_distance"].get<double>() <= 1e-9);

  // Parse failures surface as the usage exit code.
  io::write_text_file((dir / "broken.json").string(), "{not json");
  CHECK(cli::cmd_dilate(cfg, (dir / "broken.json").string()) ==
        cli::exit_usage);
  CHECK(cli::cmd_dilate(cfg, (dir / "missing.json").string()) == cli::exit_io);
}

TEST_CASE("unwritable output directory maps to the I/O exit code") {
  cli::RunConfig cfg;
  cfg.out_dir = "/proc/qi_forbidden/out";
  CHECK(cli::cmd_spectrum(cfg) == cli::exit_io);
}
