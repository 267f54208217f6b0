#pragma once

#include "gaugelab/common.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaugelab {

// One interaction coupling as entered: ascending offsets starting at 0
// and a row-major matrix of [re, im] pairs.
struct RawTerm {
  std::vector<int> offsets;
  Matrix op;
};

// Everything a run needs, read from one TOML-style file. Matrices are
// entered as row-major lists of [re, im] pairs. Either a preset name
// or a [symmetry] table plus [[term]] blocks selects the model; mixing
// the two is rejected.
struct ExperimentConfig {
  std::string preset;  // empty in raw-term mode
  double J = 1.0;
  double mu = 1.0;
  double delta = 0.5;  // xxz anisotropy

  std::string symmetry_kind;  // "trivial" | "abelian" | "finite_group" | "lie"
  int d = 2;
  std::vector<int> charges;
  std::vector<Matrix> group_elements;
  std::vector<Matrix> lie_generators;
  std::vector<RawTerm> raw_terms;

  Matrix h;  // generator entries as given; normalization is the runner's job

  int n_lo = 2;
  int n_hi = 6;
  std::vector<double> eps{0.1};
  std::vector<int> buffers{1};
  std::vector<std::string> suites{"norms", "decomposition", "chain", "variational",
                                  "testing"};

  std::uint64_t seed = 0;
  bool seed_set = false;  // seed is mandatory; the CLI flag may supply it
  std::string out_dir = "results";
  int max_dim = 4096;
  int jobs = 1;

  std::map<std::string, double> tolerance_overrides;  // keyed by column tag

  std::string source_text;  // verbatim file content, hashed into the manifest
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the verbatim config text.
std::uint64_t config_hash(const std::string& source_text);

}  // namespace gaugelab
