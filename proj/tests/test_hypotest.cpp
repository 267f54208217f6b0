#include <doctest.h>

#include <gaugelab/hypotest.hpp>
#include <gaugelab/presets.hpp>
#include <gaugelab/thermo.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace gaugelab;

namespace {

FieldDensity diag_density(const std::vector<double>& p) {
  Matrix m = Matrix::Zero(static_cast<int>(p.size()), static_cast<int>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = p[i];
  return FieldDensity(m);
}

Interaction ising() { return preset_interaction("gauge_ising", 1.0, 1.0, 0.5); }
Matrix diag_h() { return normalize_generator(pauli_z()); }

}  // namespace

TEST_CASE("three-cell toy problem has the hand-computed optimum") {
  FieldDensity psi = diag_density({0.5, 0.3, 0.2});
  FieldDensity ref = diag_density({1.0 / 3, 1.0 / 3, 1.0 / 3});
  // need mass >= 0.75: {0.5, 0.3} is the cheapest feasible set
  BetaResult b = beta_epsilon_commuting(psi, ref, 0.25);
  CHECK(b.exact);
  CHECK(b.value == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(b.psi_mass == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(b.lower_bound == doctest::Approx(b.value).epsilon(1e-12));
}

TEST_CASE("optimum agrees with exhaustive search on random diagonal pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int cells = 4 + static_cast<int>(rng() % 9);  // 4..12
    std::vector<double> p(static_cast<size_t>(cells)), q(static_cast<size_t>(cells));
    double sp = 0, sq = 0;
    for (int i = 0; i < cells; ++i) {
      p[static_cast<size_t>(i)] = unif(rng);
      q[static_cast<size_t>(i)] = unif(rng);
      sp += p[static_cast<size_t>(i)];
      sq += q[static_cast<size_t>(i)];
    }
    for (int i = 0; i < cells; ++i) {
      p[static_cast<size_t>(i)] /= sp;
      q[static_cast<size_t>(i)] /= sq;
    }
    const double eps = 0.1 + 0.05 * (trial % 4);
    std::vector<std::pair<double, double>> oc;
    for (int i = 0; i < cells; ++i)
      oc.push_back({p[static_cast<size_t>(i)], q[static_cast<size_t>(i)]});
    double brute = oracles::min_ref_brute(oc, eps);
    BetaResult b = beta_epsilon_commuting(diag_density(p), diag_density(q), eps);
    REQUIRE(b.exact);
    CHECK(b.value == doctest::Approx(brute).epsilon(1e-10));
  }
}

TEST_CASE("relaxing the error floor can only cheapen the test") {
  FieldDensity psi = diag_density({0.4, 0.3, 0.2, 0.1});
  FieldDensity ref = diag_density({0.1, 0.2, 0.3, 0.4});
  double last = 2.0;
  for (double eps : {0.05, 0.15, 0.3, 0.5}) {
    BetaResult b = beta_epsilon_commuting(psi, ref, eps);
    CHECK(b.value <= last + 1e-12);
    last = b.value;
  }
}

TEST_CASE("coarsening to the fixed-point algebra cannot cheapen the test") {
  SymmetrySpec spec = SymmetrySpec::abelian({1, -1});
  auto dec = decompose(spec, 3);
  std::mt19937_64 rng(555);
  Matrix rho = gauge_average(random_density(8, rng), spec, 3);
  Matrix sig = gauge_average(random_density(8, rng), spec, 3);
  // make the pair commute: keep only the diagonal (both stay invariant)
  Matrix rho_d = rho.diagonal().asDiagonal();
  Matrix sig_d = sig.diagonal().asDiagonal();
  FieldDensity psi(rho_d), ref(sig_d);
  AlgebraDensity psi_a = AlgebraDensity::restricted(psi, dec);
  AlgebraDensity ref_a = AlgebraDensity::restricted(ref, dec);
  for (double eps : {0.1, 0.25}) {
    BetaResult field = beta_epsilon_commuting(psi, ref, eps);
    BetaResult algebra = beta_epsilon_commuting(psi_a, ref_a, eps);
    CHECK(algebra.value >= field.value - 1e-10);
  }
}

TEST_CASE("search brackets collapse onto the exact path for commuting pairs") {
  FieldDensity psi = diag_density({0.5, 0.3, 0.2});
  FieldDensity ref = diag_density({0.25, 0.35, 0.4});
  BetaResult exact = beta_epsilon_commuting(psi, ref, 0.2);
  BetaResult search = beta_epsilon_search(psi, ref, 0.2);
  CHECK(search.exact);
  CHECK(search.value == doctest::Approx(exact.value).epsilon(1e-10));

  // genuinely non-commuting pair: certified bracket, no exactness claim
  Matrix rot(2, 2);
  const double c = std::cos(0.4), s = std::sin(0.4);
  rot << Cplx(c, 0), Cplx(-s, 0), Cplx(s, 0), Cplx(c, 0);
  Matrix sig = rot * pauli_z() * rot.adjoint();
  sig = (Matrix::Identity(2, 2) + 0.6 * sig) / 2.0;
  FieldDensity ref_rot(sig);
  FieldDensity psi2 = diag_density({0.8, 0.2});
  CHECK_THROWS_AS(beta_epsilon_commuting(psi2, ref_rot, 0.2), HypothesisError);
  BetaResult bracket = beta_epsilon_search(psi2, ref_rot, 0.2);
  CHECK(bracket.lower_bound <= bracket.value + 1e-12);
  CHECK(bracket.value <= 1.0 + 1e-12);
  CHECK(bracket.value > 0.0);
}

TEST_CASE("grouped knapsack survives exponentially many cells") {
  // iid product cells at n = 12: 4096 eigenvalues in 13 mass classes
  const double p_plus = std::exp(-1.0) / (2.0 * std::cosh(1.0));
  Matrix h = diag_h();
  FieldDensity psi = product_state(h, 12);
  BetaResult b = beta_epsilon_commuting(psi, psi, 0.1);
  oracles::BetaReplica rep = oracles::beta_replica(oracles::iid_pair_cells(p_plus, 1 - p_plus, 12), 0.1);
  CHECK(b.value == doctest::Approx(rep.value).epsilon(1e-10));
  CHECK(b.value >= 0.9 - 1e-12);  // testing a state against itself costs 1 - eps
  CHECK(b.value <= 1.0 + 1e-12);
}

TEST_CASE("exponent sequences hit their closed-form targets without couplings") {
  Interaction none(SymmetrySpec::abelian({1, -1}), {});
  Matrix h = diag_h();

  ExponentReport pair = exponent_series(none, h, 0.1, 2, 8, ExponentVariant::AlgebraPair);
  CHECK(pair.target == doctest::Approx(0.0).epsilon(1e-12));
  // finite-n optima sit slightly under the zero target; the excursion
  // is (1/n) log of the packing overshoot, well inside 0.05
  for (double m : pair.margins) CHECK(m < 0.05);
  // proxy equals the weight: the optimum is the cheapest cell packing
  // above 1 - eps, which sits in [1 - eps, 1]
  for (const SeriesPoint& pt : pair.values.points) {
    CHECK(pt.value >= 0.9 - 1e-12);
    CHECK(pt.value <= 1.0 + 1e-12);
  }

  ExponentReport fp = exponent_series(none, h, 0.1, 2, 8, ExponentVariant::FieldPair);
  CHECK(fp.target == doctest::Approx(-std::log(std::cosh(1.0))).epsilon(1e-9));

  ExponentReport unw = exponent_series(none, Matrix::Zero(2, 2), 0.1, 2, 8,
                                       ExponentVariant::FieldUnweighted);
  CHECK(unw.target == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("unweighted exponents demand a central generator") {
  Interaction phi = ising();
  Matrix hx = normalize_generator(pauli_x());
  CHECK_THROWS_AS(exponent_series(phi, hx, 0.1, 2, 4, ExponentVariant::AlgebraUnweighted),
                  HypothesisError);
  CHECK_THROWS_AS(exponent_series(phi, hx, 0.1, 2, 4, ExponentVariant::FieldUnweighted),
                  HypothesisError);
}

TEST_CASE("likelihood window forces the two-sided mass sandwich") {
  Interaction phi = ising();
  Matrix h = diag_h();
  for (int n : {4, 6}) {
    AepWindow w = aep_projection(phi, h, n, 0.35);
    CHECK(w.psi_mass >= 0.0);
    CHECK(w.psi_mass <= 1.0 + 1e-12);
    CHECK(w.ref_floor <= w.ref_mass + 1e-12);
    CHECK(w.ref_mass <= w.ref_ceiling + 1e-12);
    // endpoints are exactly the advertised exponential dilations
    CHECK(w.ref_floor ==
          doctest::Approx(w.psi_mass * std::exp(-n * (w.s_center + 0.35))).epsilon(1e-10));
    CHECK(w.ref_ceiling ==
          doctest::Approx(w.psi_mass * std::exp(-n * (w.s_center - 0.35))).epsilon(1e-10));
  }
}

TEST_CASE("testing a state against itself fills the window") {
  SymmetrySpec spec = SymmetrySpec::abelian({1, -1});
  auto dec = decompose(spec, 3);
  std::mt19937_64 rng(99);
  FieldDensity omega(gauge_average(random_density(8, rng), spec, 3));
  AlgebraDensity oa = AlgebraDensity::restricted(omega, dec);
  AepWindow w = aep_projection(oa, oa, 0.0, 0.5);
  CHECK(w.psi_mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.ref_mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.ref_floor <= 1.0 + 1e-12);
  CHECK(w.ref_ceiling >= 1.0 - 1e-12);
}

TEST_CASE("log-ratio gap stays under the surface bound and tightens with the buffer") {
  Interaction phi = preset_interaction("gauge_ising", 1.0, 0.0, 0.5);
  Matrix h = diag_h();
  double prev = 0.0;
  for (int buffer = 1; buffer <= 3; ++buffer) {
    LogRatioBound b = gibbs_log_ratio_bound(phi, h, 4, buffer);
    CHECK(b.margin == doctest::Approx(b.max_eigenvalue - b.bound).epsilon(1e-12));
    CHECK(b.margin <= 1e-9);
    if (buffer > 1) CHECK(b.margin < prev);
    prev = b.margin;
  }

  // single-site model: proxy and Gibbs coincide, no surface term
  Interaction free_phi = preset_interaction("single_site", 1.0, 1.0, 0.5);
  LogRatioBound z = gibbs_log_ratio_bound(free_phi, h, 3, 1);
  CHECK(std::abs(z.max_eigenvalue) < 1e-9);
}
