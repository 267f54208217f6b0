#include "gaugelab/config.hpp"
#include "gaugelab/presets.hpp"
#include "gaugelab/runner.hpp"

#include <CLI11.hpp>

#include <clocale>
#include <cstdint>
#include <cstdio>
#include <string>

using namespace gaugelab;

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");  // CSV cells must not pick up locale decimal points

  CLI::App app{"spin chain laboratory for gauge-invariant equilibrium states"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int max_dim = 0;
  int jobs = 0;

  CLI::App* cmd_run = app.add_subcommand("run", "execute the configured suites, write CSV + manifest");
  cmd_run->add_option("config", config_path, "TOML config file")->required();
  CLI::Option* seed_opt = cmd_run->add_option("--seed", seed, "RNG seed (overrides the config)");
  cmd_run->add_option("--out", out_dir, "output directory (overrides the config)");
  cmd_run->add_option("--max-dim", max_dim, "dense window dimension cap");
  cmd_run->add_option("--jobs", jobs, "number of suites to run in parallel");

  CLI::App* cmd_val = app.add_subcommand("validate", "report model diagnostics without running");
  cmd_val->add_option("config", config_path, "TOML config file")->required();
  CLI::Option* vseed_opt = cmd_val->add_option("--seed", seed, "RNG seed (overrides the config)");

  CLI::App* cmd_pre = app.add_subcommand("presets", "list the named models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_pre->parsed()) {
      for (const PresetInfo& p : preset_catalog())
        std::printf("%-12s %s\n", p.name.c_str(), p.summary.c_str());
      return 0;
    }

    ExperimentConfig cfg = load_config(config_path);
    if ((cmd_run->parsed() && seed_opt->count() > 0) ||
        (cmd_val->parsed() && vseed_opt->count() > 0)) {
      cfg.seed = seed;
      cfg.seed_set = true;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (max_dim > 0) cfg.max_dim = max_dim;
    if (jobs > 0) cfg.jobs = jobs;

    if (cmd_val->parsed()) {
      for (const std::string& note : validate(cfg)) std::printf("%s\n", note.c_str());
      return 0;
    }

    const ResultBundle bundle = run(cfg);
    write_bundle(bundle, cfg.out_dir);
    int gated = 0;
    int failed = 0;
    for (const LedgerEntry& e : bundle.ledger) {
      if (!e.gated) continue;
      ++gated;
      if (!e.pass) {
        ++failed;
        std::fprintf(stderr, "FAIL %s n=%d magnitude=%.6g tolerance=%.6g\n", e.check.c_str(), e.n,
                     e.magnitude, e.tolerance);
      }
    }
    std::printf("%s: %zu tables, %d gated checks, %d failed\n", cfg.out_dir.c_str(),
                bundle.tables.size(), gated, failed);
    return bundle_exit_code(bundle);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
