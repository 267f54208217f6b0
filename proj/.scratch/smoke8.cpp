#include "gaugelab/hypotest.hpp"
#include "gaugelab/operator_kernel.hpp"
#include "gaugelab/states.hpp"
#include "gaugelab/thermo.hpp"

#include <cmath>
#include <cstdio>
#include <random>

using namespace gaugelab;

int main() {
  // 1. classical triple vs uniform, eps = 0.25 -> {0.5, 0.3}, ref mass 2/3
  {
    Matrix p = Matrix::Zero(3, 3), u = Matrix::Zero(3, 3);
    p(0, 0) = 0.5; p(1, 1) = 0.3; p(2, 2) = 0.2;
    u(0, 0) = u(1, 1) = u(2, 2) = 1.0 / 3.0;
    const BetaResult b = beta_epsilon_commuting(FieldDensity(p), FieldDensity(u), 0.25);
    std::printf("[triple] value=%.12f psi=%.12f exact=%d (%s)\n", b.value, b.psi_mass,
                b.exact ? 1 : 0, b.description.c_str());
    const BetaResult b2 = beta_epsilon_commuting(FieldDensity(p), FieldDensity(u), 0.1);
    std::printf("[triple eps=0.1] value=%.12f (monotone: %d)\n", b2.value,
                b2.value >= b.value ? 1 : 0);
  }

  // 2. unweighted: uniform dim 8, eps=0.1 -> 8 cells
  {
    const BetaResult b = beta_epsilon_commuting(maximally_mixed(3, 2), 0.1);
    std::printf("[count] value=%.12f psi=%.12f exact=%d\n", b.value, b.psi_mass, b.exact ? 1 : 0);
  }

  // 3. random noncommuting 4-dim pair, eps=0.3: upper >= lower
  {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 3; ++trial) {
      Matrix a = random_hermitian(4, rng).mat();
      Matrix b = random_hermitian(4, rng).mat();
      const Matrix pa = apply_spectral(eig_hermitian(a), [](double x) { return std::exp(-x); });
      const Matrix pb = apply_spectral(eig_hermitian(b), [](double x) { return std::exp(-x); });
      const FieldDensity psi(pa / pa.trace().real());
      const FieldDensity ref(pb / pb.trace().real());
      const BetaResult r = beta_epsilon_search(psi, ref, 0.3);
      std::printf("[search %d] upper=%.9f lower=%.9f gap=%.3e (%s)\n", trial, r.value,
                  r.lower_bound, r.value - r.lower_bound, r.description.c_str());
    }
  }

  const auto z2 = SymmetrySpec::abelian({1, -1});
  const double c = std::log(std::cosh(1.0));
  Matrix hdiag = Matrix::Zero(2, 2);
  hdiag(0, 0) = 1.0 + c;
  hdiag(1, 1) = -1.0 + c;
  const Interaction phi0(z2, {});

  // 4. criterion 9 route: Phi=0, diag h, AlgebraPair, eps=0.1
  {
    const ExponentReport rep =
        exponent_series(phi0, hdiag, 0.1, 2, 12, ExponentVariant::AlgebraPair);
    std::printf("[c9] target=%.9f corridor=[%.9f,%.9f] exact=%d\n", rep.target,
                rep.corridor_lo, rep.corridor_hi, rep.exact ? 1 : 0);
    for (size_t i = 0; i < rep.values.points.size(); ++i)
      std::printf("  n=%2d value=%.12f exponent=%.9f margin=%.3e\n",
                  rep.values.points[i].n, rep.values.points[i].value,
                  rep.exponents.points[i].value, rep.margins[i]);
  }

  // 5. FieldPair at Phi=0: exponent -> -log cosh 1 = -0.433780830
  {
    const ExponentReport rep =
        exponent_series(phi0, hdiag, 0.1, 2, 10, ExponentVariant::FieldPair);
    std::printf("[fieldpair] target=%.12f (want %.12f)\n", rep.target,
                -std::log(std::cosh(1.0)));
    std::printf("  last exponent=%.9f margin=%.3e\n", rep.exponents.points.back().value,
                rep.margins.back());
  }

  // 6. unweighted with h=0: exponent -> log 2
  {
    const Matrix h0 = Matrix::Zero(2, 2);
    const ExponentReport rep =
        exponent_series(phi0, h0, 0.1, 2, 8, ExponentVariant::AlgebraUnweighted);
    std::printf("[unweighted] target=%.12f (want %.12f) last exp=%.9f\n", rep.target,
                std::log(2.0), rep.exponents.points.back().value);
    // central gate: diag h with distinct entries is still central for abelian
    // charges; a non-commuting generator must be rejected
    Matrix hx = Matrix::Zero(2, 2);
    hx(0, 1) = hx(1, 0) = 0.3;
    try {
      exponent_series(phi0, hx, 0.1, 2, 3, ExponentVariant::FieldUnweighted);
      std::printf("[central gate] MISSED\n");
    } catch (const HypothesisError&) {
      std::printf("[central gate] rejected as expected\n");
    } catch (const DomainError& e) {
      std::printf("[central gate] DomainError: %s\n", e.what());
    }
  }

  // 7. aep: Phi=0 proxy == product -> masses (1,1); sandwich holds
  {
    const AepWindow w = aep_projection(phi0, hdiag, 6, 0.05);
    std::printf("[aep id] psi=%.12f ref=%.12f cells=%lld s=%.3e floor<=ref<=ceil: %d\n",
                w.psi_mass, w.ref_mass, w.cells, w.s_center,
                (w.ref_floor <= w.ref_mass && w.ref_mass <= w.ref_ceiling) ? 1 : 0);
    // nontrivial pair: uniform vs product at n=8
    const auto dec = decompose(z2, 8);
    const AlgebraDensity psi = AlgebraDensity::restricted(maximally_mixed(8, 2), dec);
    const AlgebraDensity ref = AlgebraDensity::restricted(product_state(hdiag, 8), dec);
    const double s = relative_entropy(psi, ref) / 8.0;
    const AepWindow w2 = aep_projection(psi, ref, s, 0.25);
    std::printf("[aep pair] psi=%.6f ref=%.6e floor=%.6e ceil=%.6e cells=%lld ok=%d\n",
                w2.psi_mass, w2.ref_mass, w2.ref_floor, w2.ref_ceiling, w2.cells,
                (w2.ref_floor <= w2.ref_mass && w2.ref_mass <= w2.ref_ceiling) ? 1 : 0);
  }

  // 8. log-ratio bound: gauge Ising J=1 mu=0, n=4, L=1..3, both couplings
  {
    const Matrix zz = tensor(pauli_z(), pauli_z());
    for (const double sign : {1.0, -1.0}) {
      const Interaction ising(z2, {InteractionTerm{{0, 1}, sign * zz}});
      for (const Matrix& h : {hdiag, Matrix(Matrix::Zero(2, 2))}) {
        std::printf("[bound sign=%+.0f h=%s]", sign, h.norm() > 0 ? "diag" : "zero");
        for (int L = 1; L <= 3; ++L) {
          const LogRatioBound lrb = gibbs_log_ratio_bound(ising, h, 4, L);
          std::printf("  L=%d max=%.6f bound=%.1f margin=%.6f", L, lrb.max_eigenvalue,
                      lrb.bound, lrb.margin);
        }
        std::printf("\n");
      }
    }
  }

  // 9. single-site interaction: boundary vanishes -> bound 0
  {
    const Interaction single(z2, {InteractionTerm{{0}, Matrix(pauli_z())}});
    const LogRatioBound lrb = gibbs_log_ratio_bound(single, hdiag, 4, 2);
    std::printf("[single-site] max=%.3e bound=%.3e\n", lrb.max_eigenvalue, lrb.bound);
  }
  return 0;
}
