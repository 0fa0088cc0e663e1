#pragma once

#include <cstdint>
#include <string>

#include "qi/spinmodel.hpp"

namespace qi::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;

enum class OutputFormat { Json, Csv, Svg };

OutputFormat parse_format(const std::string& name);  // throws DomainError

/// One resolved invocation: model overrides plus output controls.  The same
/// (config, seed) always produces byte-identical artifacts.
struct RunConfig {
  SpinBathConfig spin;
  int grid = 101;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::Json;
  std::uint64_t seed = 12345;
  double tol_scale = 1.0;  // negative-control knob for the verify suites
  bool bits = false;       // display entropies in bits instead of nats
};

/// degeneracies.csv (N,S,D,states up to n_bath+1) and spectrum.csv
/// (N,energy,multiplicity for the bath and total Hamiltonians).
int cmd_spectrum(const RunConfig& cfg);

/// erasure.json: Bloch matrix of the total operation, ellipsoid landmarks,
/// minimal Kraus operators and effects per outcome.
int cmd_erase(const RunConfig& cfg);

/// curves.csv over the ρ(p) grid plus summary.json (p₁, S_half, S_f, bath
/// data); optional curves.svg when the format is svg.
int cmd_curves(const RunConfig& cfg);

/// Runs the seeded property suites and writes verify.json; exit 0 iff all
/// pass (the counterexample passes exactly when its violation occurs).
int cmd_verify(const RunConfig& cfg);

/// Reads an instrument JSON, writes dilation.json with the standard dilation
/// and the per-outcome round-trip Choi distances.
int cmd_dilate(const RunConfig& cfg, const std::string& input_path);

}  // namespace qi::cli
