#pragma once

#include "gaugelab/config.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gaugelab {

// One output table: a header of column tags and preformatted rows.
// Cells are written with 17 significant digits so that reruns with the
// same seed reproduce the file byte for byte.
struct CsvTable {
  std::string filename;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// One checked quantity. Gated entries decide the exit code;
// convergence data is recorded with gated = false.
struct LedgerEntry {
  std::string check;
  int n = 0;
  double magnitude = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool gated = true;
};

struct ResultBundle {
  std::vector<CsvTable> tables;
  std::vector<LedgerEntry> ledger;
  std::string manifest_json;
  bool pass = true;  // all gated ledger entries passed
};

// Executes the selected suites. Deterministic for fixed (config, seed):
// worker seeds are derived per task, and assembly order is fixed.
// Throws ConfigError for invalid selections, CapacityError when the
// largest requested window exceeds the cap.
ResultBundle run(const ExperimentConfig& cfg);

// Human-readable findings about the configured model: gauge invariance
// of raw terms, normalization shift of h, centrality of h, capacity
// estimates. Never throws on findings; they are diagnostics.
std::vector<std::string> validate(const ExperimentConfig& cfg);

// Writes tables plus manifest.json under out_dir, creating it.
void write_bundle(const ResultBundle& bundle, const std::string& out_dir);

// 0 all gated checks pass, 1 otherwise.
int bundle_exit_code(const ResultBundle& bundle);

}  // namespace gaugelab
