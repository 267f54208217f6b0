#include "gaugelab/config.hpp"
#include "gaugelab/presets.hpp"
#include "gaugelab/runner.hpp"

#include <cstdio>
#include <string>

using namespace gaugelab;

static const char* kIsing = R"(
preset = "gauge_ising"
J = 1.0
mu = 1.0
h = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]
n_range = [2, 4]
eps = [0.1]
buffers = [1]
seed = 7
)";

static const char* kRaw = R"(
n_range = [2, 3]
suites = ["norms", "decomposition", "variational"]
seed = 3

[symmetry]
kind = "abelian"
charges = [1, -1]

[[term]]
offsets = [0, 1]
matrix = [
  [1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0],
  [0.0, 0.0], [-1.0, 0.0], [0.0, 0.0], [0.0, 0.0],
  [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0], [0.0, 0.0],
  [0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0],
]
)";

static std::string bundle_csv(const ResultBundle& b) {
  std::string all;
  for (const auto& t : b.tables) {
    all += t.filename + "\n";
    for (const auto& c : t.header) all += c + ",";
    all += "\n";
    for (const auto& r : t.rows) {
      for (const auto& c : r) all += c + ",";
      all += "\n";
    }
  }
  return all;
}

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  ExperimentConfig cfg = parse_config_text(kIsing);
  std::printf("[validate gauge_ising]\n");
  for (const auto& s : validate(cfg)) std::printf("  %s\n", s.c_str());

  ResultBundle b1 = run(cfg);
  std::printf("[run] pass=%d tables=%zu ledger=%zu\n", b1.pass ? 1 : 0, b1.tables.size(),
              b1.ledger.size());
  for (const auto& t : b1.tables) std::printf("  %s: %zu rows\n", t.filename.c_str(), t.rows.size());
  int failed = 0;
  for (const auto& e : b1.ledger)
    if (e.gated && !e.pass) {
      ++failed;
      std::printf("  FAIL %s n=%d mag=%.3e tol=%.3e\n", e.check.c_str(), e.n, e.magnitude,
                  e.tolerance);
    }
  std::printf("  gated failures: %d\n", failed);

  ResultBundle b2 = run(cfg);
  std::printf("[determinism] csv identical: %d\n", bundle_csv(b1) == bundle_csv(b2) ? 1 : 0);

  write_bundle(b1, "/root/proj/.scratch/results_smoke");
  std::printf("[write] done, exit=%d\n", bundle_exit_code(b1));

  ExperimentConfig raw = parse_config_text(kRaw);
  std::printf("[validate raw]\n");
  for (const auto& s : validate(raw)) std::printf("  %s\n", s.c_str());
  ResultBundle br = run(raw);
  std::printf("[run raw] pass=%d tables=%zu\n", br.pass ? 1 : 0, br.tables.size());
  for (const auto& e : br.ledger)
    if (e.gated && !e.pass)
      std::printf("  FAIL %s n=%d mag=%.3e tol=%.3e\n", e.check.c_str(), e.n, e.magnitude,
                  e.tolerance);

  ExperimentConfig empty = cfg;
  empty.suites.clear();
  ResultBundle be = run(empty);
  std::printf("[empty suites] tables=%zu manifest bytes=%zu pass=%d\n", be.tables.size(),
              be.manifest_json.size(), be.pass ? 1 : 0);

  ExperimentConfig big = cfg;
  big.n_hi = 20;
  try {
    run(big);
    std::printf("[capacity] NOT THROWN (bad)\n");
  } catch (const CapacityError& e) {
    std::printf("[capacity] CapacityError: %s\n", e.what());
  }

  ExperimentConfig noseed = cfg;
  noseed.seed_set = false;
  try {
    run(noseed);
    std::printf("[seed] NOT THROWN (bad)\n");
  } catch (const ConfigError& e) {
    std::printf("[seed] ConfigError: %s\n", e.what());
  }

  ExperimentConfig badsuite = cfg;
  badsuite.suites = {"norms", "nonsense"};
  try {
    run(badsuite);
    std::printf("[suite] NOT THROWN (bad)\n");
  } catch (const ConfigError& e) {
    std::printf("[suite] ConfigError: %s\n", e.what());
  }

  try {
    parse_config_text("preset = \"gauge_ising\"\nn_range = [4, 2]\n");
    std::printf("[range] NOT THROWN (bad)\n");
  } catch (const ConfigError& e) {
    std::printf("[range] ConfigError: %s\n", e.what());
  }
  try {
    parse_config_text("preset = \"gauge_ising\"\nbogus = 1\n");
    std::printf("[field] NOT THROWN (bad)\n");
  } catch (const ConfigError& e) {
    std::printf("[field] ConfigError: %s\n", e.what());
  }
  std::printf("smoke9 ok\n");
  return 0;
}
