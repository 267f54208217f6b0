// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances are fixed here on purpose; loosening them is not a fix.

#include <gaugelab/config.hpp>
#include <gaugelab/hypotest.hpp>
#include <gaugelab/presets.hpp>
#include <gaugelab/runner.hpp>
#include <gaugelab/thermo.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace gaugelab;

namespace {

struct Tally {
  int failed = 0;

  void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %2d  %-44s %s%s%s\n", id, name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failed;
  }

  void run(int id, const char* name, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
      auto [ok, detail] = fn();
      report(id, name, ok, detail);
    } catch (const std::exception& e) {
      report(id, name, false, std::string("threw: ") + e.what());
    }
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SymmetrySpec su2() {
  return SymmetrySpec::lie(2, {0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()});
}

Matrix diag_h() { return normalize_generator(pauli_z()); }
Interaction ising() { return preset_interaction("gauge_ising", 1.0, 1.0, 0.5); }

// ---- criterion 1: exact component counting for all three backends ----

std::pair<bool, std::string> check_decomposition() {
  // trivial group: the full matrix algebra, one component
  for (int n = 1; n <= 8; ++n) {
    auto dec = decompose(SymmetrySpec::trivial(2), n);
    if (dec->block_count() != 1 || dec->blocks()[0].mult != (1 << n) ||
        dec->blocks()[0].irrep_dim != 1)
      return {false, "trivial backend at n = " + std::to_string(n)};
  }

  // charge sectors: one block per total charge, binomial multiplicity
  SymmetrySpec ab = SymmetrySpec::abelian({1, -1});
  for (int n = 1; n <= 8; ++n) {
    auto dec = decompose(ab, n);
    std::vector<long long> got;
    long long total = 0;
    for (const Block& b : dec->blocks()) {
      if (b.irrep_dim != 1) return {false, "abelian irrep dim at n = " + std::to_string(n)};
      got.push_back(b.mult);
      total += b.mult;
    }
    std::sort(got.begin(), got.end());
    std::vector<long long> want = oracles::charge_sector_dims(n);
    std::sort(want.begin(), want.end());
    if (got != want || total != (1LL << n))
      return {false, "abelian sectors at n = " + std::to_string(n)};
  }

  // spin coupling: multiplicities from the Clebsch-Gordan recursion
  for (int n = 2; n <= 8; ++n) {
    auto dec = decompose(su2(), n);
    std::vector<std::pair<long long, long long>> got;
    long long total = 0;
    for (const Block& b : dec->blocks()) {
      got.push_back({b.mult, b.irrep_dim});
      total += static_cast<long long>(b.mult) * b.irrep_dim;
    }
    std::sort(got.begin(), got.end());
    std::vector<std::pair<long long, long long>> want;
    for (auto [m, d] : oracles::su2_blocks(n)) want.push_back({m, d});
    std::sort(want.begin(), want.end());
    if (got != want || total != (1LL << n))
      return {false, "spin blocks at n = " + std::to_string(n)};
  }

  auto three = decompose(su2(), 3);
  std::vector<std::pair<int, int>> blocks3;
  for (const Block& b : three->blocks()) blocks3.push_back({b.mult, b.irrep_dim});
  std::sort(blocks3.begin(), blocks3.end());
  if (blocks3 != std::vector<std::pair<int, int>>{{1, 4}, {2, 2}})
    return {false, "three-site spin blocks"};
  return {true, "3 backends, n up to 8, integer equality"};
}

// ---- criterion 2: weighted partition sum vs the shifted trace ----

std::pair<bool, std::string> check_weighted_partition() {
  Interaction phi = ising();
  double worst = 0.0;
  for (const Matrix& h : {Matrix(Matrix::Zero(2, 2)), Matrix(diag_h())}) {
    for (int n = 1; n <= 10; ++n) {
      GibbsState weighted = gibbs_weighted(product_state(h, n), phi.hamiltonian(chain(n)));
      Interaction shifted = phi.perturb(h);
      GibbsState full = gibbs_field(shifted.hamiltonian(chain(n)));
      double defect = std::abs(weighted.log_partition + n * std::log(2.0) - full.log_partition);
      worst = std::max(worst, defect);
    }
  }
  return {worst < 1e-9, "worst defect " + fmt(worst) + " over n up to 10, both weights"};
}

// ---- criterion 3: entropy + distance-to-trace corridor ----

std::pair<bool, std::string> check_entropy_corridor() {
  struct Case {
    SymmetrySpec spec;
    const char* tag;
    bool tight;
  };
  std::vector<Case> cases{{SymmetrySpec::abelian({1, -1}), "abelian", true},
                          {su2(), "spin", false}};
  double worst = 0.0;
  for (const Case& c : cases) {
    for (int n = 2; n <= 6; ++n) {
      auto dec = decompose(c.spec, n);
      double allowance = c.tight ? 0.0 : std::log(double(dec->max_irrep_dim()));
      for (int k = 0; k < 20; ++k) {
        std::mt19937_64 rng(1000u * static_cast<unsigned>(n) + static_cast<unsigned>(k));
        FieldDensity omega(gauge_average(random_density(1 << n, rng), c.spec, n));
        AlgebraDensity oa = AlgebraDensity::restricted(omega, dec);
        double v = entropy(oa) + relative_entropy(oa, nu_state(dec));
        double excess = std::max(v - n * std::log(2.0), (n * std::log(2.0) - allowance) - v);
        worst = std::max(worst, excess);
        if (excess > 1e-9)
          return {false, std::string(c.tag) + " state " + std::to_string(k) + " at n = " +
                             std::to_string(n) + ", excess " + fmt(excess)};
      }
    }
  }
  return {true, "2 actions, 20 states per volume, slack " + fmt(worst)};
}

// ---- criterion 4: restriction vs conditional expectation chain ----

std::pair<bool, std::string> check_restriction_chain() {
  SymmetrySpec spec = su2();
  for (int n = 2; n <= 6; ++n) {
    auto dec = decompose(spec, n);
    const double logmax = std::log(double(dec->max_irrep_dim()));
    for (int k = 0; k < 20; ++k) {
      std::mt19937_64 rng(5000u * static_cast<unsigned>(n) + static_cast<unsigned>(k));

      // product-form density: (outer PSD) x (inner PSD) on each component
      Matrix block = Matrix::Zero(dec->dim(), dec->dim());
      std::vector<double> w(static_cast<size_t>(dec->block_count()));
      double z = 0.0;
      std::vector<Matrix> outer, inner;
      for (int i = 0; i < dec->block_count(); ++i) {
        const Block& b = dec->blocks()[static_cast<size_t>(i)];
        Matrix a = random_hermitian(b.mult, rng).mat();
        Matrix d0 = a * a + 0.05 * Matrix::Identity(b.mult, b.mult);
        Matrix c = random_hermitian(b.irrep_dim, rng).mat();
        Matrix d1 = c * c + 0.05 * Matrix::Identity(b.irrep_dim, b.irrep_dim);
        outer.push_back(d0);
        inner.push_back(d1);
        z += d0.trace().real() * d1.trace().real();
      }
      for (int i = 0; i < dec->block_count(); ++i) {
        outer[static_cast<size_t>(i)] /= z;
        const Block& b = dec->blocks()[static_cast<size_t>(i)];
        Matrix prod = tensor(outer[static_cast<size_t>(i)], inner[static_cast<size_t>(i)]);
        block.block(dec->offset(i), dec->offset(i), dec->block_span(i), dec->block_span(i)) = prod;
        w[static_cast<size_t>(i)] =
            outer[static_cast<size_t>(i)].trace().real() * inner[static_cast<size_t>(i)].trace().real();
      }
      FieldDensity d(dec->from_block_basis(block));
      FieldDensity e(dec->conditional_expectation(d.mat()));
      AlgebraDensity da = AlgebraDensity::restricted(d, dec);

      const double s_d = entropy(d);
      const double s_e = entropy(e);
      const double s_a = entropy(da);

      // pinching step: entropy gain equals the relative entropy and
      // stays under log max_i d_i
      const double gain = s_e - s_d;
      if (gain < -1e-9 || gain > logmax + 1e-9)
        return {false, "pinching corridor at n = " + std::to_string(n)};
      if (std::abs(gain - relative_entropy(d, e)) > 1e-9)
        return {false, "pinching identity at n = " + std::to_string(n)};

      // restriction step: the gap is the mean log inner dimension
      double mean_logdim = 0.0;
      for (int i = 0; i < dec->block_count(); ++i)
        mean_logdim += w[static_cast<size_t>(i)] *
                       std::log(double(dec->blocks()[static_cast<size_t>(i)].irrep_dim));
      const double gap = s_e - s_a;
      if (std::abs(gap - mean_logdim) > 1e-9)
        return {false, "restriction identity at n = " + std::to_string(n)};
      if (gap < -1e-9 || gap > logmax + 1e-9)
        return {false, "restriction corridor at n = " + std::to_string(n)};

      if (std::abs(s_a - s_d) > std::log(double(n + 1)) + 1e-9)
        return {false, "entropy loss bound at n = " + std::to_string(n)};
    }
  }
  return {true, "20 product-form densities per volume, n up to 6"};
}

// ---- criterion 5: derivation norm bound ----

std::pair<bool, std::string> check_derivation_bound() {
  Interaction phi = ising();
  if (std::abs(phi.locality_norm() - 5.0) > 1e-12) return {false, "locality norm is not 5"};
  double worst = -1e300;
  for (int r = 1; r <= 3; ++r) {
    DerivationBound b = cyclic_derivation_bound(phi, r);
    if (std::abs(b.bound - 20.0) > 1e-12) return {false, "bound is not 4 * 5"};
    worst = std::max(worst, b.value - b.bound);
    if (b.value > b.bound + 1e-9)
      return {false, "violated at radius " + std::to_string(r)};
  }
  return {true, "radii 1..3, worst margin " + fmt(worst)};
}

// ---- criterion 6: pressure derivative equals the energy form ----

std::pair<bool, std::string> check_pressure_derivative() {
  Interaction phi = ising();
  double gap = std::abs(pressure_derivative(phi, diag_h(), phi, 4, 1e-4) -
                        gibbs_energy_form(phi, diag_h(), phi, 4));
  return {gap <= 1e-6, "gap " + fmt(gap)};
}

// ---- criterion 7: free-field closed forms and gap decay ----

std::pair<bool, std::string> check_entropy_chain() {
  Matrix h = diag_h();
  Interaction none(SymmetrySpec::abelian({1, -1}), {});
  EntropyChain free_chain = entropy_density_chain(none, h, 2, 5, 1);
  const double p_plus = std::exp(-1.0) / (2.0 * std::cosh(1.0));
  const double s1 = oracles::shannon({p_plus, 1.0 - p_plus});
  for (int n = 2; n <= 5; ++n) {
    bool ok = std::abs(value_at(free_chain.algebra_relative, n)) < 1e-9 &&
              std::abs(value_at(free_chain.field_relative, n)) < 1e-9 &&
              std::abs(value_at(free_chain.proxy_form, n)) < 1e-9 &&
              std::abs(value_at(free_chain.field_gibbs_entropy, n) - s1) < 1e-9 &&
              std::abs(value_at(free_chain.algebra_gibbs_entropy, n) - s1) < 1e-9;
    if (!ok) return {false, "free-field closed form at n = " + std::to_string(n)};
  }

  EntropyChain c = entropy_density_chain(ising(), h, 2, 10, 1);
  const double g5 = value_at(c.max_gap, 5);
  const double g10 = value_at(c.max_gap, 10);
  if (!(g10 < g5)) return {false, "gap did not shrink: " + fmt(g5) + " -> " + fmt(g10)};
  if (!c.field_relative.extrapolation || !c.algebra_relative.extrapolation)
    return {false, "missing limit estimate"};
  return {true, "closed forms exact, gap " + fmt(g5) + " -> " + fmt(g10)};
}

// ---- criterion 8: ring candidate dominates and its defect dies off ----

std::pair<bool, std::string> check_variational_ordering() {
  Interaction phi = ising();
  Matrix h = diag_h();
  ThermoSeries ring = variational_defect(phi, h, ring_gibbs_candidate(phi, h, 1), 2, 10);
  ThermoSeries open = variational_defect(phi, h, gibbs_proxy_candidate(phi, h, 1), 2, 10);
  ThermoSeries unif = variational_defect(phi, h, uniform_candidate(), 2, 10);

  for (int n = 2; n <= 10; ++n) {
    double r = value_at(ring, n);
    if (r > 1e-12) return {false, "positive defect at n = " + std::to_string(n)};
    if (n > 2 && !(r > value_at(ring, n - 1)))
      return {false, "defect not improving at n = " + std::to_string(n)};
    if (!(r > value_at(open, n) + 1e-9) || !(r > value_at(unif, n) + 1e-9))
      return {false, "ring does not dominate at n = " + std::to_string(n)};
  }
  double final_defect = std::abs(value_at(ring, 10));
  if (final_defect >= 0.05) return {false, "final defect " + fmt(final_defect)};

  // the deliberately mis-scaled candidate stays strictly suboptimal
  ThermoSeries sc2 = variational_defect(phi, h, scaled_gibbs_candidate(phi, h, 2.0), 2, 5);
  for (int n = 2; n <= 5; ++n)
    if (!(value_at(sc2, n) < -1e-6))
      return {false, "mis-scaled candidate looks optimal at n = " + std::to_string(n)};

  return {true, "defect at n = 10 is " + fmt(-final_defect) + ", ordering strict"};
}

// ---- criterion 9: hypothesis-testing optimum vs the classical replica ----

std::pair<bool, std::string> check_testing_exponent() {
  Interaction none(SymmetrySpec::abelian({1, -1}), {});
  Matrix h = diag_h();
  ExponentReport rep = exponent_series(none, h, 0.1, 2, 12, ExponentVariant::AlgebraPair);
  if (std::abs(rep.target) > 1e-9) return {false, "target " + fmt(rep.target)};

  const double p_plus = std::exp(-1.0) / (2.0 * std::cosh(1.0));
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    oracles::BetaReplica classical =
        oracles::beta_replica(oracles::iid_pair_cells(p_plus, 1.0 - p_plus, n), 0.1);
    double gap = std::abs(value_at(rep.values, n) - classical.value);
    worst = std::max(worst, gap);
    if (gap > 1e-9)
      return {false, "replica gap " + fmt(gap) + " at n = " + std::to_string(n)};
  }
  double e12 = value_at(rep.exponents, 12);
  if (!(e12 > -0.05 && e12 < 0.05)) return {false, "exponent(12) = " + fmt(e12)};
  return {true, "replica gap " + fmt(worst) + ", exponent(12) = " + fmt(e12)};
}

// ---- criterion 10: log-ratio bound tightens with the buffer ----

std::pair<bool, std::string> check_log_ratio_buffers() {
  Interaction phi = preset_interaction("gauge_ising", 1.0, 0.0, 0.5);
  Matrix h = diag_h();
  double prev = 1e300;
  std::string path;
  for (int buffer = 1; buffer <= 3; ++buffer) {
    LogRatioBound b = gibbs_log_ratio_bound(phi, h, 4, buffer);
    if (b.margin > 1e-9) return {false, "bound violated at buffer " + std::to_string(buffer)};
    if (!(b.margin < prev)) return {false, "margin not decreasing at buffer " + std::to_string(buffer)};
    prev = b.margin;
    path += (buffer > 1 ? " -> " : "") + fmt(b.margin);
  }
  return {true, "margins " + path};
}

// ---- criterion 11: bitwise reproducibility of the default bundle ----

std::pair<bool, std::string> check_determinism() {
  ExperimentConfig cfg = parse_config_text(
      "preset = \"gauge_ising\"\n"
      "h = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]\n"
      "seed = 20260819\n");
  ResultBundle a = run(cfg);
  ResultBundle b = run(cfg);
  if (!a.pass || !b.pass) return {false, "gated checks failed inside the default run"};
  if (a.tables.size() != b.tables.size()) return {false, "table count differs"};
  for (size_t i = 0; i < a.tables.size(); ++i) {
    if (a.tables[i].filename != b.tables[i].filename || a.tables[i].header != b.tables[i].header ||
        a.tables[i].rows != b.tables[i].rows)
      return {false, "table " + a.tables[i].filename + " differs between runs"};
  }
  return {true, std::to_string(a.tables.size()) + " tables byte-identical across two runs"};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  Tally tally;
  tally.run(1, "component counting, three actions", check_decomposition);
  tally.run(2, "weighted partition identity", check_weighted_partition);
  tally.run(3, "entropy corridor against the trace state", check_entropy_corridor);
  tally.run(4, "restriction vs conditional expectation", check_restriction_chain);
  tally.run(5, "derivation norm bound", check_derivation_bound);
  tally.run(6, "pressure derivative closed form", check_pressure_derivative);
  tally.run(7, "entropy chain closed forms and gap decay", check_entropy_chain);
  tally.run(8, "variational candidate ordering", check_variational_ordering);
  tally.run(9, "testing exponent vs classical replica", check_testing_exponent);
  tally.run(10, "log-ratio surface bound", check_log_ratio_buffers);
  tally.run(11, "bitwise deterministic bundles", check_determinism);

  if (tally.failed == 0) {
    std::printf("acceptance: 11 of 11 criteria hold\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", tally.failed);
  return 1;
}
