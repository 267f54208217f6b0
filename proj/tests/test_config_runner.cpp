#include <doctest.h>

#include <gaugelab/config.hpp>
#include <gaugelab/presets.hpp>
#include <gaugelab/runner.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace gaugelab;

namespace {

const char* kSmall = R"(
preset = "gauge_ising"
J = 1.0
mu = 1.0
h = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]
n_range = [2, 3]
suites = ["norms", "decomposition", "variational"]
seed = 11
)";

std::string contains_note(const std::vector<std::string>& notes, const std::string& needle) {
  for (const std::string& n : notes)
    if (n.find(needle) != std::string::npos) return n;
  return {};
}

}  // namespace

TEST_CASE("hash follows the 64-bit FNV-1a reference vectors") {
  CHECK(config_hash("") == 0xcbf29ce484222325ULL);
  CHECK(config_hash("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(config_hash("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("a minimal file fills in the documented defaults") {
  ExperimentConfig cfg = parse_config_text("preset = \"gauge_ising\"\nseed = 1\n");
  CHECK(cfg.preset == "gauge_ising");
  CHECK(cfg.n_lo == 2);
  CHECK(cfg.n_hi == 6);
  CHECK(cfg.eps == std::vector<double>{0.1});
  CHECK(cfg.buffers == std::vector<int>{1});
  CHECK(cfg.suites.size() == 5);
  CHECK(cfg.seed_set);
  CHECK(cfg.max_dim == 4096);
  CHECK(config_hash(cfg.source_text) == config_hash("preset = \"gauge_ising\"\nseed = 1\n"));
}

TEST_CASE("parse failures carry the offending line") {
  // n_range must be a two-element array
  CHECK_THROWS_WITH_AS(parse_config_text("preset = \"gauge_ising\"\nn_range = [2]\n"),
                       doctest::Contains("line 2"), ConfigError);
  // unknown root key
  CHECK_THROWS_WITH_AS(parse_config_text("presett = \"gauge_ising\"\n"),
                       doctest::Contains("unknown"), ConfigError);
  // duplicate key
  CHECK_THROWS_WITH_AS(parse_config_text("seed = 1\nseed = 2\n"),
                       doctest::Contains("duplicate"), ConfigError);
  // unknown field inside a [[term]] block
  CHECK_THROWS_WITH_AS(parse_config_text("[[term]]\noffsets = [0]\nseed = 1\n"),
                       doctest::Contains("[[term]]"), ConfigError);
  // unknown symmetry field
  CHECK_THROWS_WITH_AS(parse_config_text("[symmetry]\nkindd = \"abelian\"\n"),
                       doctest::Contains("symmetry"), ConfigError);
}

TEST_CASE("raw terms parse into a validated interaction") {
  const char* raw = R"(
n_range = [2, 3]
suites = ["norms"]
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
  ExperimentConfig cfg = parse_config_text(raw);
  CHECK(cfg.preset.empty());
  CHECK(cfg.symmetry_kind == "abelian");
  REQUIRE(cfg.raw_terms.size() == 1);
  Interaction phi = configured_interaction(cfg);
  CHECK(phi.gauge_invariant());
  CHECK(phi.range() == 1);
}

TEST_CASE("validate reports the model shape without running anything") {
  ExperimentConfig cfg = parse_config_text(kSmall);
  std::vector<std::string> notes = validate(cfg);
  CHECK_FALSE(contains_note(notes, "abelian charges").empty());
  CHECK_FALSE(contains_note(notes, "normalization shift").empty());
  CHECK_FALSE(contains_note(notes, "central").empty());
  CHECK_FALSE(contains_note(notes, "capacity").empty());

  ExperimentConfig no_seed = parse_config_text("preset = \"gauge_ising\"\n");
  CHECK_FALSE(contains_note(validate(no_seed), "seed").empty());
}

TEST_CASE("runs are deterministic and the gates hold on the stock model") {
  ExperimentConfig cfg = parse_config_text(kSmall);
  ResultBundle a = run(cfg);
  ResultBundle b = run(cfg);
  CHECK(a.pass);
  CHECK(bundle_exit_code(a) == 0);
  REQUIRE(a.tables.size() == 3);
  REQUIRE(b.tables.size() == 3);
  for (size_t i = 0; i < a.tables.size(); ++i) {
    CHECK(a.tables[i].filename == b.tables[i].filename);
    CHECK(a.tables[i].header == b.tables[i].header);
    CHECK(a.tables[i].rows == b.tables[i].rows);
  }
  for (const LedgerEntry& e : a.ledger)
    if (e.gated) CHECK(e.pass);

  nlohmann::json m = nlohmann::json::parse(a.manifest_json);
  CHECK(m["seed"] == 11);
  CHECK(m["model"] == "gauge_ising");
  CHECK(m["pass"] == true);
  CHECK(m["tables"].size() == 3);
}

TEST_CASE("a tolerance override can fail an otherwise passing run") {
  ExperimentConfig cfg = parse_config_text(kSmall);
  // the central-difference error is small but never zero, so an
  // absurdly tight override must trip the gate
  cfg.tolerance_overrides["eq_3_3_derivative_gap"] = 1e-30;
  ResultBundle r = run(cfg);
  CHECK_FALSE(r.pass);
  CHECK(bundle_exit_code(r) == 1);
  bool found = false;
  for (const LedgerEntry& e : r.ledger)
    if (e.check == "eq_3_3_derivative_gap" && !e.pass) found = true;
  CHECK(found);
}

TEST_CASE("missing seed and unknown suites are configuration errors") {
  ExperimentConfig cfg = parse_config_text("preset = \"gauge_ising\"\n");
  CHECK_THROWS_AS(run(cfg), ConfigError);

  ExperimentConfig bad = parse_config_text(kSmall);
  bad.suites = {"norms", "no_such_suite"};
  CHECK_THROWS_WITH_AS(run(bad), doctest::Contains("no_such_suite"), ConfigError);
}

TEST_CASE("volume ranges that overflow the cap are rejected with the feasible bound") {
  ExperimentConfig cfg = parse_config_text(kSmall);
  cfg.n_hi = 20;
  CHECK_THROWS_WITH_AS(run(cfg), doctest::Contains("feasible"), CapacityError);
}

TEST_CASE("bundles land on disk as one CSV per suite plus the manifest") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = parse_config_text(kSmall);
  cfg.suites = {"norms"};
  ResultBundle r = run(cfg);
  fs::path dir = fs::path("ctest_bundle_out");
  fs::remove_all(dir);
  write_bundle(r, dir.string());
  CHECK(fs::exists(dir / "norms.csv"));
  CHECK(fs::exists(dir / "manifest.json"));

  std::ifstream csv(dir / "norms.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.find("prop_1_1") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("the preset catalog names the three stock models") {
  const auto& cat = preset_catalog();
  CHECK(cat.size() == 3);
  CHECK(is_preset("gauge_ising"));
  CHECK(is_preset("single_site"));
  CHECK(is_preset("xxz_charge"));
}
