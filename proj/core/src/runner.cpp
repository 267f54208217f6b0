#include "gaugelab/runner.hpp"

#include "gaugelab/hypotest.hpp"
#include "gaugelab/operator_kernel.hpp"
#include "gaugelab/presets.hpp"
#include "gaugelab/states.hpp"
#include "gaugelab/thermo.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

namespace gaugelab {
namespace {

using nlohmann::json;

struct RunContext {
  const ExperimentConfig* cfg = nullptr;
  SymmetrySpec spec = SymmetrySpec::trivial(2);
  Interaction phi{2, {}};
  Matrix h;  // normalized generator, h_raw + shift
  double shift = 0.0;
  bool central = false;
};

RunContext make_context(const ExperimentConfig& cfg) {
  RunContext ctx;
  ctx.cfg = &cfg;
  ctx.spec = configured_symmetry(cfg);
  ctx.phi = configured_interaction(cfg);
  const int d = ctx.spec.d();
  Matrix h = cfg.h;
  if (h.size() == 0) h = Matrix::Zero(d, d);
  if (h.rows() != d || h.cols() != d)
    throw ConfigError("config: h must be a " + std::to_string(d) + "x" + std::to_string(d) +
                      " matrix");
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm()))
    throw ConfigError("config: h must be hermitian");
  ctx.shift = generator_shift(h);
  ctx.h = h + ctx.shift * Matrix::Identity(d, d);
  ctx.central = is_central_generator(ctx.h, ctx.spec);
  return ctx;
}

double gate_tol(const ExperimentConfig& cfg, const std::string& tag, double fallback) {
  const auto it = cfg.tolerance_overrides.find(tag);
  return it == cfg.tolerance_overrides.end() ? fallback : it->second;
}

void gated(std::vector<LedgerEntry>& lg, const std::string& check, int n, double magnitude,
           double tolerance) {
  lg.push_back({check, n, magnitude, tolerance, magnitude <= tolerance, true});
}

void reported(std::vector<LedgerEntry>& lg, const std::string& check, int n, double magnitude) {
  lg.push_back({check, n, magnitude, 0.0, true, false});
}

std::string fd(double v) { return format_double(v); }

void record_limit(json& limits, const ThermoSeries& s) {
  if (!s.extrapolation) return;
  limits[s.label] = {{"method", s.extrapolation->method},
                     {"estimate", s.extrapolation->estimate},
                     {"uncertainty", s.extrapolation->uncertainty}};
}

long long pow_capped(int d, int sites, long long cap) {
  long long v = 1;
  for (int k = 0; k < sites; ++k) {
    v *= d;
    if (v > cap) return cap + 1;
  }
  return v;
}

bool needs_window(const std::vector<std::string>& suites) {
  for (const auto& s : suites)
    if (s == "chain" || s == "variational" || s == "testing") return true;
  return false;
}

struct SuiteOutput {
  CsvTable table;
  std::vector<LedgerEntry> ledger;
  json limits = json::object();
};

SuiteOutput run_norms(const RunContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  SuiteOutput out;
  out.table.filename = "norms.csv";
  out.table.header = {"n",
                      "prop_1_1_delta_norm",
                      "prop_1_1_bound",
                      "prop_1_1_margin",
                      "phi_site_norm",
                      "phi_locality_norm",
                      "phi_boundary_norm"};
  const double site = ctx.phi.per_site_norm();
  const double loc = ctx.phi.locality_norm();
  const double bnd = ctx.phi.max_boundary_norm();
  const double t_margin = gate_tol(cfg, "prop_1_1_margin", 1e-9);
  for (int r = 1; r <= 3; ++r) {
    if (pow_capped(ctx.spec.d(), 2 * r + 1, cfg.max_dim) > cfg.max_dim) break;
    const DerivationBound db = cyclic_derivation_bound(ctx.phi, r);
    out.table.rows.push_back({std::to_string(r), fd(db.value), fd(db.bound),
                              fd(db.value - db.bound), fd(site), fd(loc), fd(bnd)});
    gated(out.ledger, "prop_1_1_margin", r, db.value - db.bound, t_margin);
  }
  return out;
}

// A field-level unitary of the product action; its n-fold power must
// carry the transposed block pattern.
Matrix action_unitary(const SymmetrySpec& spec) {
  const int d = spec.d();
  return std::visit(
      [&](const auto& b) -> Matrix {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteGroupBackend>) {
          if (b.elements.empty()) return Matrix::Identity(d, d);
          return b.elements.size() > 1 ? b.elements[1] : b.elements[0];
        } else if constexpr (std::is_same_v<T, AbelianChargesBackend>) {
          Matrix u = Matrix::Zero(d, d);
          for (int k = 0; k < d; ++k)
            u(k, k) = std::exp(std::complex<double>(0.0, 0.7 * b.charges[static_cast<size_t>(k)]));
          return u;
        } else {
          if (b.generators.empty()) return Matrix::Identity(d, d);
          const EigSys es = eig_hermitian(b.generators.front());
          Matrix phases = Matrix::Zero(d, d);
          for (int k = 0; k < d; ++k)
            phases(k, k) = std::exp(std::complex<double>(0.0, 0.7 * es.values[k]));
          return es.vectors * phases * es.vectors.adjoint();
        }
      },
      spec.backend());
}

SuiteOutput run_decomposition(const RunContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  SuiteOutput out;
  out.table.filename = "decomposition.csv";
  out.table.header = {"n",
                      "eq_2_1_dim_defect",
                      "eq_2_1_fixed_residual",
                      "eq_2_1_projection_gap",
                      "eq_2_2_commutant_residual",
                      "eq_2_3_entropy_gap",
                      "eq_2_3_allowance",
                      "eq_2_3_nu_defect",
                      "block_count",
                      "fixed_algebra_dim"};
  const int d = ctx.spec.d();
  const double t_dim = gate_tol(cfg, "eq_2_1_dim_defect", 1e-9);
  // The pattern residuals are Pythagorean differences of Frobenius
  // masses; their floor is sqrt(eps) of the operator mass, not eps.
  const double t_fix = gate_tol(cfg, "eq_2_1_fixed_residual", 1e-7);
  const double t_prj = gate_tol(cfg, "eq_2_1_projection_gap", 1e-9);
  const double t_com = gate_tol(cfg, "eq_2_2_commutant_residual", 1e-7);
  const double t_cor = gate_tol(cfg, "eq_2_3_corridor", 1e-9);
  const double t_nu = gate_tol(cfg, "eq_2_3_nu_defect", 1e-9);
  const Matrix u1 = action_unitary(ctx.spec);
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    const BlockDecompositionPtr dec = decompose(ctx.spec, n);
    long long msum = 0;
    for (const Block& b : dec->blocks())
      msum += static_cast<long long>(b.mult) * b.irrep_dim;
    const double dim_defect = std::abs(static_cast<double>(msum - dec->dim()));

    std::mt19937_64 rng(mix_seed(cfg.seed, 0xDEC0ULL + static_cast<std::uint64_t>(n)));
    const Matrix probe = random_hermitian(static_cast<int>(dec->dim()), rng).mat();
    const Matrix avg = gauge_average(probe, ctx.spec, n);
    const double fixed_res = dec->algebra_pattern_residual(avg);
    const double proj_gap =
        op_norm(avg - dec->conditional_expectation(probe)) / std::max(1.0, op_norm(avg));

    Matrix un = u1;
    for (int k = 1; k < n; ++k) un = tensor(un, u1);
    const double comm_res = dec->commutant_pattern_residual(un);

    const Matrix rho_raw = random_density(static_cast<int>(dec->dim()), rng);
    const FieldDensity rho_f{gauge_average(rho_raw, ctx.spec, n)};
    const AlgebraDensity rho_a = AlgebraDensity::restricted(rho_f, dec);
    const double gap = entropy(rho_f) - entropy(rho_a);
    const double allowance = std::log(static_cast<double>(dec->max_irrep_dim()));
    const double nu_defect = std::abs(n * std::log(static_cast<double>(d)) - entropy(rho_f) -
                                      relative_entropy(rho_a, nu_state(dec)));

    out.table.rows.push_back({std::to_string(n), fd(dim_defect), fd(fixed_res), fd(proj_gap),
                              fd(comm_res), fd(gap), fd(allowance), fd(nu_defect),
                              std::to_string(dec->block_count()),
                              std::to_string(dec->fixed_algebra_dim())});
    gated(out.ledger, "eq_2_1_dim_defect", n, dim_defect, t_dim);
    gated(out.ledger, "eq_2_1_fixed_residual", n, fixed_res, t_fix);
    gated(out.ledger, "eq_2_1_projection_gap", n, proj_gap, t_prj);
    gated(out.ledger, "eq_2_2_commutant_residual", n, comm_res, t_com);
    gated(out.ledger, "eq_2_3_corridor", n, std::max(gap - allowance, -gap), t_cor);
    gated(out.ledger, "eq_2_3_nu_defect", n, nu_defect, t_nu);
  }
  return out;
}

SuiteOutput run_chain(const RunContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  SuiteOutput out;
  out.table.filename = "chain.csv";
  out.table.header = {"n",
                      "thm_3_1_algebra_relative",
                      "thm_3_1_field_relative",
                      "thm_3_1_proxy_form",
                      "thm_3_1_field_gibbs_entropy",
                      "thm_3_1_algebra_gibbs_entropy",
                      "thm_3_1_max_gap",
                      "thm_3_1_entropy_gap",
                      "thm_3_1_gap_allowance"};
  const EntropyChain ch =
      entropy_density_chain(ctx.phi, ctx.h, cfg.n_lo, cfg.n_hi, cfg.buffers.front());
  const auto irr = max_irrep_dim_series(ctx.spec, cfg.n_lo, cfg.n_hi, cfg.seed);
  const double t_gap = gate_tol(cfg, "thm_3_1_entropy_gap", 1e-9);
  for (size_t i = 0; i < ch.algebra_relative.points.size(); ++i) {
    const int n = ch.algebra_relative.points[i].n;
    const double gap = ch.entropy_gap.points[i].value;
    const double allowance = irr[i].second;
    out.table.rows.push_back(
        {std::to_string(n), fd(ch.algebra_relative.points[i].value),
         fd(ch.field_relative.points[i].value), fd(ch.proxy_form.points[i].value),
         fd(ch.field_gibbs_entropy.points[i].value), fd(ch.algebra_gibbs_entropy.points[i].value),
         fd(ch.max_gap.points[i].value), fd(gap), fd(allowance)});
    gated(out.ledger, "thm_3_1_entropy_gap", n, std::max(gap - allowance, -gap), t_gap);
    reported(out.ledger, "thm_3_1_max_gap", n, ch.max_gap.points[i].value);
  }
  record_limit(out.limits, ch.algebra_relative);
  record_limit(out.limits, ch.field_relative);
  record_limit(out.limits, ch.proxy_form);
  record_limit(out.limits, ch.field_gibbs_entropy);
  record_limit(out.limits, ch.algebra_gibbs_entropy);
  record_limit(out.limits, ch.max_gap);
  record_limit(out.limits, ch.entropy_gap);
  return out;
}

SuiteOutput run_variational(const RunContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  SuiteOutput out;
  out.table.filename = "variational.csv";
  out.table.header = {"n",
                      "eq_1_8_defect",
                      "eq_3_3_derivative_gap",
                      "eq_1_5_defect_ring",
                      "eq_1_5_defect_open",
                      "eq_1_5_defect_uniform",
                      "eq_1_5_defect_scaled2"};
  const int L = cfg.buffers.front();
  const ThermoSeries p_prod =
      pressure_series(ctx.phi, PressureWeight::product_state(ctx.h), cfg.n_lo, cfg.n_hi);
  const ThermoSeries p_full =
      pressure_series(ctx.phi.perturb(ctx.h), PressureWeight::full_trace(), cfg.n_lo, cfg.n_hi);
  const ThermoSeries d_ring =
      variational_defect(ctx.phi, ctx.h, ring_gibbs_candidate(ctx.phi, ctx.h, L), cfg.n_lo,
                         cfg.n_hi);
  const ThermoSeries d_open =
      variational_defect(ctx.phi, ctx.h, gibbs_proxy_candidate(ctx.phi, ctx.h, L), cfg.n_lo,
                         cfg.n_hi);
  const ThermoSeries d_unif =
      variational_defect(ctx.phi, ctx.h, uniform_candidate(), cfg.n_lo, cfg.n_hi);
  const ThermoSeries d_sc2 =
      variational_defect(ctx.phi, ctx.h, scaled_gibbs_candidate(ctx.phi, ctx.h, 2.0), cfg.n_lo,
                         cfg.n_hi);
  const double logd = std::log(static_cast<double>(ctx.spec.d()));
  const double t_part = gate_tol(cfg, "eq_1_8_defect", 1e-9);
  const double t_der = gate_tol(cfg, "eq_3_3_derivative_gap", 1e-6);
  const double t_sup = gate_tol(cfg, "eq_1_5_sup", 1e-9);
  for (size_t i = 0; i < p_prod.points.size(); ++i) {
    const int n = p_prod.points[i].n;
    const double defect18 =
        n * (p_prod.points[i].value + logd - p_full.points[i].value);
    const double dgap = std::abs(pressure_derivative(ctx.phi, ctx.h, ctx.phi, n, 1e-4) -
                                 gibbs_energy_form(ctx.phi, ctx.h, ctx.phi, n));
    out.table.rows.push_back({std::to_string(n), fd(defect18), fd(dgap),
                              fd(d_ring.points[i].value), fd(d_open.points[i].value),
                              fd(d_unif.points[i].value), fd(d_sc2.points[i].value)});
    gated(out.ledger, "eq_1_8_defect", n, std::abs(defect18), t_part);
    gated(out.ledger, "eq_3_3_derivative_gap", n, dgap, t_der);
    gated(out.ledger, "eq_1_5_sup_ring", n, d_ring.points[i].value, t_sup);
    gated(out.ledger, "eq_1_5_sup_open", n, d_open.points[i].value, t_sup);
    gated(out.ledger, "eq_1_5_sup_uniform", n, d_unif.points[i].value, t_sup);
    gated(out.ledger, "eq_1_5_sup_scaled2", n, d_sc2.points[i].value, t_sup);
  }
  record_limit(out.limits, p_prod);
  record_limit(out.limits, p_full);
  record_limit(out.limits, d_ring);
  record_limit(out.limits, d_open);
  return out;
}

const char* exponent_tag(ExponentVariant v) {
  switch (v) {
    case ExponentVariant::AlgebraPair: return "eq_4_1";
    case ExponentVariant::FieldPair: return "eq_4_2";
    case ExponentVariant::AlgebraUnweighted: return "eq_4_3";
    case ExponentVariant::FieldUnweighted: return "eq_4_4";
  }
  return "eq_4_x";
}

SuiteOutput run_testing(const RunContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  SuiteOutput out;
  out.table.filename = "testing.csv";
  out.table.header = {"n", "eps", "eq_4_1_value", "eq_4_1_exponent", "eq_4_2_exponent"};
  if (ctx.central) {
    out.table.header.push_back("eq_4_3_exponent");
    out.table.header.push_back("eq_4_4_exponent");
  }
  for (const char* c : {"eq_4_8_psi_mass", "eq_4_8_ref_mass", "eq_4_8_ref_floor",
                        "eq_4_8_ref_ceiling", "lemma_4_2_max", "lemma_4_2_bound",
                        "lemma_4_2_margin"})
    out.table.header.push_back(c);

  const int L = cfg.buffers.front();
  const double t_aep = gate_tol(cfg, "eq_4_8_sandwich", 1e-9);
  const double t_lem = gate_tol(cfg, "lemma_4_2_margin", 1e-9);

  struct FixedRow {
    AepWindow w;
    LogRatioBound b;
  };
  std::vector<FixedRow> fixed;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    FixedRow f{aep_projection(ctx.phi, ctx.h, n, 0.1, L),
               gibbs_log_ratio_bound(ctx.phi, ctx.h, n, L)};
    gated(out.ledger, "eq_4_8_sandwich", n,
          std::max(f.w.ref_floor - f.w.ref_mass, f.w.ref_mass - f.w.ref_ceiling), t_aep);
    gated(out.ledger, "lemma_4_2_margin", n, f.b.margin, t_lem);
    fixed.push_back(std::move(f));
  }

  std::vector<ExponentVariant> variants{ExponentVariant::AlgebraPair, ExponentVariant::FieldPair};
  if (ctx.central) {
    variants.push_back(ExponentVariant::AlgebraUnweighted);
    variants.push_back(ExponentVariant::FieldUnweighted);
  }
  for (double eps : cfg.eps) {
    std::vector<ExponentReport> reps;
    for (ExponentVariant v : variants)
      reps.push_back(exponent_series(ctx.phi, ctx.h, eps, cfg.n_lo, cfg.n_hi, v, L));
    for (size_t i = 0; i < reps[0].values.points.size(); ++i) {
      const int n = reps[0].values.points[i].n;
      std::vector<std::string> row{std::to_string(n), fd(eps),
                                   fd(reps[0].values.points[i].value)};
      for (const ExponentReport& r : reps) row.push_back(fd(r.exponents.points[i].value));
      const FixedRow& f = fixed[i];
      for (double v : {f.w.psi_mass, f.w.ref_mass, f.w.ref_floor, f.w.ref_ceiling,
                       f.b.max_eigenvalue, f.b.bound, f.b.margin})
        row.push_back(fd(v));
      out.table.rows.push_back(std::move(row));
      for (const ExponentReport& r : reps) {
        char label[64];
        std::snprintf(label, sizeof label, "%s_corridor[eps=%g]", exponent_tag(r.variant), eps);
        reported(out.ledger, label, n, r.margins[i]);
      }
    }
    for (const ExponentReport& r : reps) {
      char key[64];
      std::snprintf(key, sizeof key, "%s[eps=%g]", exponent_tag(r.variant), eps);
      out.limits[key] = {{"target", r.target},
                         {"corridor_lo", r.corridor_lo},
                         {"corridor_hi", r.corridor_hi},
                         {"exact", r.exact}};
    }
  }
  return out;
}

using SuiteFn = SuiteOutput (*)(const RunContext&);

SuiteFn suite_fn(const std::string& name) {
  if (name == "norms") return run_norms;
  if (name == "decomposition") return run_decomposition;
  if (name == "chain") return run_chain;
  if (name == "variational") return run_variational;
  if (name == "testing") return run_testing;
  throw ConfigError("config: unknown suite '" + name + "'");
}

void check_run_capacity(const RunContext& ctx) {
  const ExperimentConfig& cfg = *ctx.cfg;
  const int d = ctx.spec.d();
  const int extra = needs_window(cfg.suites) ? 2 * cfg.buffers.front() : 0;
  const int sites = cfg.n_hi + extra;
  if (pow_capped(d, sites, cfg.max_dim) <= cfg.max_dim) return;
  int feasible = 0;
  for (int n = 1; n <= cfg.n_hi; ++n) {
    if (pow_capped(d, n + extra, cfg.max_dim) > cfg.max_dim) break;
    feasible = n;
  }
  char msg[192];
  std::snprintf(msg, sizeof msg,
                "run: the largest window spans %d sites, over the dimension cap %d; "
                "the largest feasible n_hi with buffer %d is %d",
                sites, cfg.max_dim, extra / 2, feasible);
  throw CapacityError(msg);
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

ResultBundle run(const ExperimentConfig& cfg) {
  if (!cfg.seed_set)
    throw ConfigError("config: seed is required; set 'seed' in the file or pass --seed");
  if (cfg.buffers.empty() || cfg.eps.empty())
    throw ConfigError("config: eps and buffers must be non-empty");
  std::vector<SuiteFn> plan;
  for (const std::string& name : cfg.suites) plan.push_back(suite_fn(name));

  set_max_dimension(cfg.max_dim);
  const RunContext ctx = make_context(cfg);
  check_run_capacity(ctx);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SuiteOutput> results(plan.size());
  if (cfg.jobs > 1 && plan.size() > 1) {
    std::vector<std::future<SuiteOutput>> futs;
    futs.reserve(plan.size());
    for (SuiteFn fn : plan) futs.push_back(std::async(std::launch::async, fn, std::cref(ctx)));
    for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < plan.size(); ++i) results[i] = plan[i](ctx);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ResultBundle bundle;
  json limits = json::object();
  for (SuiteOutput& r : results) {
    bundle.tables.push_back(std::move(r.table));
    bundle.ledger.insert(bundle.ledger.end(), r.ledger.begin(), r.ledger.end());
    limits.update(r.limits);
  }
  bundle.pass = true;
  for (const LedgerEntry& e : bundle.ledger)
    if (e.gated && !e.pass) bundle.pass = false;

  json m;
  m["generator"] = "gaugelab";
  m["version"] = "0.1.0";
  m["config_hash"] = hex64(config_hash(cfg.source_text));
  m["seed"] = cfg.seed;
  m["model"] = cfg.preset.empty() ? std::string("custom") : cfg.preset;
  m["d"] = ctx.spec.d();
  m["n_range"] = json::array({cfg.n_lo, cfg.n_hi});
  m["buffer"] = cfg.buffers.front();
  m["eps"] = cfg.eps;
  m["normalization_shift"] = ctx.shift;
  m["central_generator"] = ctx.central;
  m["suites"] = cfg.suites;
  json tables = json::array();
  for (const CsvTable& t : bundle.tables) tables.push_back(t.filename);
  m["tables"] = tables;
  m["series_limits"] = limits;
  json checks = json::array();
  for (const LedgerEntry& e : bundle.ledger)
    checks.push_back({{"check", e.check},
                      {"n", e.n},
                      {"magnitude", e.magnitude},
                      {"tolerance", e.tolerance},
                      {"pass", e.pass},
                      {"gated", e.gated}});
  m["checks"] = checks;
  m["pass"] = bundle.pass;
  m["wall_seconds"] = wall;
  bundle.manifest_json = m.dump(2) + "\n";
  return bundle;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> notes;
  char buf[256];

  SymmetrySpec spec = SymmetrySpec::trivial(2);
  try {
    spec = configured_symmetry(cfg);
  } catch (const std::exception& e) {
    notes.push_back(std::string("symmetry: rejected: ") + e.what());
    return notes;
  }
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteGroupBackend>) {
          std::snprintf(buf, sizeof buf, "symmetry: finite group action, d = %d, %zu elements",
                        spec.d(), b.elements.size());
        } else if constexpr (std::is_same_v<T, AbelianChargesBackend>) {
          std::string cs;
          for (size_t k = 0; k < b.charges.size(); ++k)
            cs += (k ? ", " : "") + std::to_string(b.charges[k]);
          std::snprintf(buf, sizeof buf, "symmetry: abelian charges (%s), d = %d", cs.c_str(),
                        spec.d());
        } else {
          std::snprintf(buf, sizeof buf, "symmetry: lie action, d = %d, %zu generators", spec.d(),
                        b.generators.size());
        }
        notes.push_back(buf);
      },
      spec.backend());

  Interaction phi{spec.d(), {}};
  try {
    phi = configured_interaction(cfg);
    std::snprintf(buf, sizeof buf,
                  "interaction: %zu terms, range %d, site norm %.6g, locality norm %.6g",
                  phi.terms().size(), phi.range(), phi.per_site_norm(), phi.locality_norm());
    notes.push_back(buf);
  } catch (const std::exception& e) {
    notes.push_back(std::string("interaction: rejected: ") + e.what());
    // point at the offending term for raw-term configs
    if (cfg.preset.empty()) {
      for (size_t k = 0; k < cfg.raw_terms.size(); ++k) {
        const RawTerm& t = cfg.raw_terms[k];
        const int sites = static_cast<int>(t.offsets.size());
        try {
          const Matrix avg = gauge_average(t.op, spec, sites);
          const double res = (t.op - avg).norm() / std::max(1.0, t.op.norm());
          if (res > 1e-10) {
            std::snprintf(buf, sizeof buf,
                          "term %zu: violates the declared action (residual %.3g)", k + 1, res);
            notes.push_back(buf);
          }
        } catch (const std::exception&) {
        }
      }
    }
    return notes;
  }

  const int d = spec.d();
  Matrix h = cfg.h;
  if (h.size() == 0) h = Matrix::Zero(d, d);
  if (h.rows() != d || h.cols() != d) {
    std::snprintf(buf, sizeof buf, "h: rejected: must be a %dx%d matrix", d, d);
    notes.push_back(buf);
    return notes;
  }
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm())) {
    notes.push_back("h: rejected: must be hermitian");
    return notes;
  }
  const double shift = generator_shift(h);
  const Matrix h_norm = h + shift * Matrix::Identity(d, d);
  const bool central = is_central_generator(h_norm, spec);
  if (std::abs(shift) <= 1e-12) {
    notes.push_back(std::string("h: already normalized, ") +
                    (central ? "central" : "not central"));
  } else {
    std::snprintf(buf, sizeof buf, "h: normalization shift %.17g applied, %s", shift,
                  central ? "central" : "not central");
    notes.push_back(buf);
  }
  notes.push_back(central
                      ? "h: unweighted exponent sequences available"
                      : "h: not central, unweighted exponent sequences are gated off");

  if (!phi.is_zero()) {
    try {
      const Matrix w = product_state(h_norm, 2).mat();
      const Matrix h2 = phi.hamiltonian(chain(2));
      const double res = commutator_norm(w, h2) / std::max(1.0, op_norm(w) * op_norm(h2));
      if (res > 1e-8)
        notes.push_back("warning: the product weight does not commute with the Hamiltonian; "
                        "weighted pressure suites will reject this model");
    } catch (const std::exception&) {
    }
  }

  const int buffer = cfg.buffers.empty() ? 1 : cfg.buffers.front();
  const int extra = needs_window(cfg.suites) ? 2 * buffer : 0;
  const int sites = cfg.n_hi + extra;
  if (pow_capped(d, sites, cfg.max_dim) <= cfg.max_dim) {
    std::snprintf(buf, sizeof buf, "capacity: largest window %d sites fits under the cap %d",
                  sites, cfg.max_dim);
  } else {
    int feasible = 0;
    for (int n = 1; n <= cfg.n_hi; ++n) {
      if (pow_capped(d, n + extra, cfg.max_dim) > cfg.max_dim) break;
      feasible = n;
    }
    std::snprintf(buf, sizeof buf,
                  "warning: largest window %d sites is over the cap %d; "
                  "the largest feasible n_hi with buffer %d is %d",
                  sites, cfg.max_dim, buffer, feasible);
  }
  notes.push_back(buf);

  if (!cfg.seed_set)
    notes.push_back("seed: missing; runs require 'seed' in the config or --seed");
  return notes;
}

void write_bundle(const ResultBundle& bundle, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto join = [](const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    return line;
  };
  for (const CsvTable& t : bundle.tables) {
    std::ofstream f(fs::path(out_dir) / t.filename, std::ios::binary);
    if (!f) throw DomainError("write_bundle: cannot open " + t.filename);
    f << join(t.header) << '\n';
    for (const auto& row : t.rows) f << join(row) << '\n';
  }
  std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
  if (!mf) throw DomainError("write_bundle: cannot open manifest.json");
  mf << bundle.manifest_json;
}

int bundle_exit_code(const ResultBundle& bundle) { return bundle.pass ? 0 : 1; }

}  // namespace gaugelab
