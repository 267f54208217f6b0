#include <doctest.h>

#include <gaugelab/presets.hpp>
#include <gaugelab/thermo.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace gaugelab;

namespace {

const double kShift = std::log(std::cosh(1.0));

Interaction ising() { return preset_interaction("gauge_ising", 1.0, 1.0, 0.5); }
Matrix diag_h() { return normalize_generator(pauli_z()); }

}  // namespace

TEST_CASE("full-trace pressure equals the transfer-matrix sum per site") {
  ThermoSeries s = pressure_series(ising(), PressureWeight::full_trace(), 2, 8);
  for (int n = 2; n <= 8; ++n)
    CHECK(value_at(s, n) ==
          doctest::Approx(oracles::log_partition_open(n, 1.0, 1.0) / n).epsilon(1e-11));
}

TEST_CASE("algebra-trace pressure coincides with the full trace for abelian charges") {
  // every irrep is one-dimensional, so the canonical trace is the
  // matrix trace on the invariant Hamiltonian
  ThermoSeries a = pressure_series(ising(), PressureWeight::algebra_trace(), 2, 6);
  ThermoSeries f = pressure_series(ising(), PressureWeight::full_trace(), 2, 6);
  for (int n = 2; n <= 6; ++n)
    CHECK(value_at(a, n) == doctest::Approx(value_at(f, n)).epsilon(1e-11));
}

TEST_CASE("product-weighted pressure folds the weight into the field") {
  ThermoSeries s = pressure_series(ising(), PressureWeight::product_state(diag_h()), 2, 6);
  for (int n = 2; n <= 6; ++n) {
    double expect = (oracles::log_partition_open(n, 1.0, 2.0) - n * (kShift + std::log(2.0))) / n;
    CHECK(value_at(s, n) == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("buffered proxy degenerates to the plain Gibbs state when nothing couples") {
  Interaction phi = preset_interaction("single_site", 1.0, 1.0, 0.5);
  for (int n : {2, 3}) {
    FieldDensity proxy = buffered_gibbs_proxy(phi, n, 2);
    GibbsState g = gibbs_field(phi.hamiltonian(chain(n)));
    CHECK(trace_distance(proxy, g.state) < 1e-11);
  }
  // buffer zero is the local Gibbs state by construction
  FieldDensity p0 = buffered_gibbs_proxy(ising(), 3, 0);
  CHECK(trace_distance(p0, gibbs_field(ising().hamiltonian(chain(3))).state) < 1e-11);
}

TEST_CASE("variational defect is nonpositive and vanishes on the optimizer") {
  Interaction phi = ising();
  Matrix h = diag_h();
  auto families = {ring_gibbs_candidate(phi, h, 1), gibbs_proxy_candidate(phi, h, 1),
                   uniform_candidate(), scaled_gibbs_candidate(phi, h, 2.0)};
  for (const CandidateFamily& fam : families) {
    ThermoSeries s = variational_defect(phi, h, fam, 2, 5);
    for (int n = 2; n <= 5; ++n) CHECK(value_at(s, n) <= 1e-9);
  }

  // a model with no couplings: the buffered proxy IS the weighted
  // Gibbs state, so its defect is exactly zero
  Interaction free_phi = preset_interaction("single_site", 1.0, 1.0, 0.5);
  ThermoSeries zero = variational_defect(free_phi, h, gibbs_proxy_candidate(free_phi, h, 1), 2, 4);
  for (int n = 2; n <= 4; ++n) CHECK(std::abs(value_at(zero, n)) < 1e-10);
}

TEST_CASE("variational defect pins: ring beats open beats blunt") {
  Interaction phi = ising();
  Matrix h = diag_h();

  ThermoSeries ring = variational_defect(phi, h, ring_gibbs_candidate(phi, h, 1), 2, 4);
  CHECK(value_at(ring, 2) == doctest::Approx(-0.15382422952222136).epsilon(1e-9));
  CHECK(value_at(ring, 3) == doctest::Approx(-0.1264877242039176).epsilon(1e-9));
  CHECK(value_at(ring, 4) == doctest::Approx(-0.08857503202182071).epsilon(1e-9));

  ThermoSeries open = variational_defect(phi, h, gibbs_proxy_candidate(phi, h, 1), 2, 4);
  CHECK(value_at(open, 2) == doctest::Approx(-0.21392653701633885).epsilon(1e-9));

  ThermoSeries unif = variational_defect(phi, h, uniform_candidate(), 2, 4);
  CHECK(value_at(unif, 2) == doctest::Approx(-0.92675718733239432).epsilon(1e-9));

  ThermoSeries sc2 = variational_defect(phi, h, scaled_gibbs_candidate(phi, h, 2.0), 2, 2);
  CHECK(value_at(sc2, 2) == doctest::Approx(-0.066578889312897294).epsilon(1e-9));

  for (int n = 2; n <= 4; ++n) {
    CHECK(value_at(ring, n) > value_at(unif, n));
    CHECK(value_at(ring, n) > value_at(open, n));
  }
}

TEST_CASE("entropy chain with no interaction collapses to single-site closed forms") {
  Interaction none(SymmetrySpec::abelian({1, -1}), {});
  EntropyChain chain_data = entropy_density_chain(none, diag_h(), 2, 5, 1);
  const double p_plus = std::exp(-1.0) / (2.0 * std::cosh(1.0));
  const double s1 = oracles::shannon({p_plus, 1.0 - p_plus});
  for (int n = 2; n <= 5; ++n) {
    CHECK(std::abs(value_at(chain_data.algebra_relative, n)) < 1e-9);
    CHECK(std::abs(value_at(chain_data.field_relative, n)) < 1e-9);
    CHECK(std::abs(value_at(chain_data.proxy_form, n)) < 1e-9);
    CHECK(value_at(chain_data.field_gibbs_entropy, n) == doctest::Approx(s1).epsilon(1e-9));
    CHECK(value_at(chain_data.algebra_gibbs_entropy, n) == doctest::Approx(s1).epsilon(1e-9));
    CHECK(std::abs(value_at(chain_data.max_gap, n)) < 1e-9);
    CHECK(std::abs(value_at(chain_data.entropy_gap, n)) < 1e-9);
  }
  CHECK(chain_data.field_gibbs_entropy.extrapolation.has_value());
  CHECK(chain_data.field_gibbs_entropy.extrapolation->estimate == doctest::Approx(s1).epsilon(1e-8));
}

TEST_CASE("entropy chain pins for the gauge Ising model") {
  EntropyChain c = entropy_density_chain(ising(), diag_h(), 2, 5, 1);
  CHECK(value_at(c.max_gap, 2) == doctest::Approx(0.204182).epsilon(1e-4));
  CHECK(value_at(c.max_gap, 3) == doctest::Approx(0.0798472).epsilon(1e-4));
  CHECK(value_at(c.max_gap, 4) == doctest::Approx(0.0822609).epsilon(1e-4));
  CHECK(value_at(c.max_gap, 5) == doctest::Approx(0.0564916).epsilon(1e-4));
  // abelian action: the two Gibbs entropies agree exactly
  for (int n = 2; n <= 5; ++n) CHECK(std::abs(value_at(c.entropy_gap, n)) < 1e-9);
}

TEST_CASE("splitting a ring state can only gain entropy") {
  Interaction phi = ising();
  const int N = 8;
  GibbsState g = gibbs_field(ring_hamiltonian(phi, N));
  SymmetrySpec spec = preset_symmetry("gauge_ising");

  auto window_entropy = [&](Interval w) {
    FieldDensity cut = restrict_field(g.state, w, chain(N), 2);
    auto dec = decompose(spec, w.length());
    return entropy(AlgebraDensity::restricted(cut, dec));
  };
  double s4 = window_entropy(Interval{1, 4});
  double s2a = window_entropy(Interval{1, 2});
  double s2b = window_entropy(Interval{3, 4});
  CHECK(s4 <= s2a + s2b + 1e-9);
  // translation invariance of the ring makes the halves equal
  CHECK(s2a == doctest::Approx(s2b).epsilon(1e-9));
}

TEST_CASE("pressure derivative matches the energy form along commuting directions") {
  Interaction phi = ising();
  Matrix h = diag_h();
  double d1 = pressure_derivative(phi, h, phi, 4, 1e-4);
  double f1 = gibbs_energy_form(phi, h, phi, 4);
  CHECK(std::abs(d1 - f1) < 1e-6);

  Interaction mu_only = preset_interaction("single_site", 0.0, 1.0, 0.5);
  double d2 = pressure_derivative(phi, h, mu_only, 4, 1e-4);
  double f2 = gibbs_energy_form(phi, h, mu_only, 4);
  CHECK(std::abs(d2 - f2) < 1e-6);

  CHECK_THROWS_AS(pressure_derivative(phi, h, phi, 3, 1.0), DomainError);
}

TEST_CASE("mean entropy series follows a supplied family") {
  auto family = [](int n) { return maximally_mixed(n, 2); };
  ThermoSeries s = mean_entropy_series(family, 2, 5, "flat");
  for (int n = 2; n <= 5; ++n)
    CHECK(value_at(s, n) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("the 1/n extrapolation is exact on 1/n data") {
  ThermoSeries s;
  s.label = "synthetic";
  for (int n = 2; n <= 6; ++n) append_point(s, n, 0.25 + 1.7 / n);
  attach_richardson(s);
  REQUIRE(s.extrapolation.has_value());
  CHECK(s.extrapolation->estimate == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s.extrapolation->uncertainty < 1e-12);

  ThermoSeries short_series;
  append_point(short_series, 2, 1.0);
  append_point(short_series, 3, 1.0);
  attach_richardson(short_series);
  CHECK_FALSE(short_series.extrapolation.has_value());
}

TEST_CASE("series appends enforce order and finiteness") {
  ThermoSeries s;
  append_point(s, 2, 1.0);
  CHECK_THROWS_AS(append_point(s, 2, 1.0), DomainError);
  CHECK_THROWS_AS(append_point(s, 3, std::nan("")), DomainError);
  CHECK_THROWS_AS(value_at(s, 9), DomainError);
}
