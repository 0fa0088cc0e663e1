#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "qi/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qinstr — quantum instruments, measurement dilations and the "
               "spin-bath qubit-erasure model"};
  app.require_subcommand(1);

  qi::cli::RunConfig cfg;
  std::string format = "json";

  app.add_option("--n-bath", cfg.spin.n_bath, "number of bath spins")
      ->capture_default_str();
  app.add_option("--coupling", cfg.spin.coupling, "Heisenberg coupling J")
      ->capture_default_str();
  app.add_option("--field", cfg.spin.field, "Zeeman field B")
      ->capture_default_str();
  app.add_option("--time", cfg.spin.time, "evolution time t")
      ->capture_default_str();
  app.add_option("--grid", cfg.grid, "grid resolution for curve sweeps")
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--format", format, "output format: json|csv|svg")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for the randomized suites")
      ->capture_default_str();
  app.add_option("--tol-scale", cfg.tol_scale,
                 "scale factor on verification tolerances (0 = negative control)")
      ->capture_default_str();
  app.add_flag("--bits", cfg.bits,
               "report entropies in bits instead of nats (presentation only)");

  auto* spectrum = app.add_subcommand(
      "spectrum", "emit degeneracy table and Hamiltonian spectra");
  auto* erase = app.add_subcommand(
      "erase", "emit Bloch matrix, ellipsoid landmarks, Kraus operators");
  auto* curves = app.add_subcommand(
      "curves", "emit entropy curves over the rho(p) family");
  auto* verify = app.add_subcommand(
      "verify", "run the seeded property suites and the counterexample");
  auto* dilate = app.add_subcommand(
      "dilate", "construct the standard dilation of an instrument file");
  std::string instrument_path;
  dilate->add_option("instrument", instrument_path, "instrument JSON file")
      ->required();
  for (auto* sub : {spectrum, erase, curves, verify, dilate})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qi::cli::exit_ok : qi::cli::exit_usage;
  }

  try {
    cfg.format = qi::cli::parse_format(format);
  } catch (const qi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qi::cli::exit_usage;
  }

  if (*spectrum) return qi::cli::cmd_spectrum(cfg);
  if (*erase) return qi::cli::cmd_erase(cfg);
  if (*curves) return qi::cli::cmd_curves(cfg);
  if (*verify) return qi::cli::cmd_verify(cfg);
  if (*dilate) return qi::cli::cmd_dilate(cfg, instrument_path);
  return qi::cli::exit_usage;
}
