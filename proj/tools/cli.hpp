#pragma once

// Command-line surface over the bitrial library: deterministic CSV/JSON
// emitters for bifurcation scans, Lyapunov sweeps, orbits, Gram matrices,
// m-Fourier tables, residual reports and axiom fuzzing.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace bitrial::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// Resolved run description.  parameters holds every subcommand flag (with
// defaults applied) keyed by its long option name, so a run can be rebuilt
// from the header of any output file.  Worker count and output path are
// execution details and stay out of the embedded config.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 1;
  std::string output_path = "-";
  std::string format;  // "csv" or "json"
};

// Serialized config line embedded in every output.
std::string config_json(const RunConfig& config);

// Runs one command line (without argv[0]); diagnostics go to the stream.
int run(const std::vector<std::string>& args, std::ostream& diagnostics);

int run_cli(int argc, char** argv);

}  // namespace bitrial::cli
