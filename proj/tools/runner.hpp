#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wignerlab/ensembles.hpp"

namespace wignerlab::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_unknown_command = 2,
  exit_bad_config = 3,
  exit_unwritable = 4,
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

const std::vector<std::string>& known_commands();

struct ExperimentConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> entries;  // as read, for the manifest echo

  // ensemble.*
  std::string family = "wigner";  // wigner | heavy_tail
  std::string law = "gaussian_real";
  double alpha = 2.0;
  double scale = 1.0;
  std::string profile = "unit";  // unit | uniform | banded
  double variance = 1.0;         // uniform: absolute value
  std::size_t band_width = 0;    // banded: inside/outside in units of 1/n
  double inside = 1.0;
  double outside = 0.0;
  std::uint64_t seed = 0;

  // run.*
  std::vector<std::size_t> sizes;
  std::size_t trials = 1;
  std::filesystem::path outputs = "out";
  unsigned threads = 1;

  std::vector<unsigned> moments_k{2, 4};
  bool moments_oracle = false;

  std::size_t walks_k_max = 6;

  std::vector<std::pair<double, double>> stieltjes_z{{0.0, 1.0}};
  double stieltjes_b = 1e-2;
  double grid_lo = -3.0, grid_hi = 3.0, grid_step = 1e-2;

  std::vector<double> concentration_t{0.25, 0.5, 1.0};
  double ramp_p = -0.5, ramp_q = 0.5;

  std::optional<double> reduce_eta;  // nullopt: automatic rule
  double reduce_c = 1.0;

  double conditions_c = 1.0;
  std::vector<double> conditions_eps{0.1, 0.5, 1.0};

  // Diagnostics found while reading values (bad numbers, unknown keys).
  std::vector<std::string> parse_diagnostics;
};

// Flat "key = value" text with '#' comments. Lines without '=' raise
// CliError(exit_bad_config); value problems become parse_diagnostics.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Every violation, in a stable order; empty means runnable.
std::vector<std::string> validate(const ExperimentConfig& config);

EnsembleSpec make_spec(const ExperimentConfig& config, std::size_t n);

struct OutputFile {
  std::string name;
  std::string fnv1a64;  // hex digest
  std::size_t bytes = 0;
};

struct RunManifest {
  std::string version;
  std::string command;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<OutputFile> outputs;
  double wall_seconds = 0.0;
};

// Runs the configured command, writing CSVs and manifest.json into
// config.outputs. Throws CliError with the matching exit code.
RunManifest run(const ExperimentConfig& config);

std::string fnv1a64_hex(std::string_view bytes);
std::string format_double(double v);

// Full command line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace wignerlab::cli
