#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qumode/errors.hpp"

namespace qm {

// Line-oriented `key = value` experiment configuration. `#` starts a
// comment; blank lines are ignored; unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;
  int n_q = 7;
  double mu = 1.0;
  int fock_n = 0;  // key "n"
  int N_b = -1;    // key "N_b"; -1 = command default
  double eps = 1e-4;
  double sigma = 0.0;  // 0 = sigma default (0.5 L / sqrt(mu))
  int oversample = 16;
  std::uint64_t seed = 42;
  std::string output;  // key "output": base name override
  double r_min = 1e-3;  // squeeze-decomp sweep range
  double r_max = 1.0;
  int r_points = 25;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Number formatting used in every CSV cell: 10 significant digits.
std::string format_sig(double v);

// One CSV line (LF) from preformatted cells.
std::string csv_line(const std::vector<std::string>& cells);

// Writes via a temp file in the same directory and renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qm
