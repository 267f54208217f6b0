#include "gaugelab/thermo.hpp"
#include <cstdio>
#include <cmath>

using namespace gaugelab;

int main() {
  auto z2 = SymmetrySpec::abelian({1, -1});
  Matrix zz = tensor(pauli_z(), pauli_z());
  Interaction ising(z2, {InteractionTerm{{0, 1}, zz}, InteractionTerm{{0}, pauli_z()}});
  Matrix h1(2, 2);
  h1 << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
  Matrix h = normalize_generator(h1);

  auto ring_candidate = [&](int L) {
    Interaction phih = ising.perturb(h);
    return CandidateFamily([phih, L](int n, const BlockDecompositionPtr& dec) {
      const int m = n + 2 * L;
      const GibbsState g = gibbs_field(ring_hamiltonian(phih, m));
      const FieldDensity inner = restrict_field(g.state, chain(n), chain(m), phih.d());
      return AlgebraDensity::restricted(inner, dec);
    });
  };

  for (int n = 2; n <= 10; ++n) {
    ThermoSeries dr = variational_defect(ising, h, ring_candidate(1), n, n);
    std::printf("ring L=1 n=%d  %.6g\n", n, dr.points[0].value);
    std::fflush(stdout);
  }
  // ordering partner: scaled 2H candidate at n=8..10
  for (int n = 8; n <= 10; ++n) {
    ThermoSeries ds = variational_defect(ising, h, scaled_gibbs_candidate(ising, h, 2.0), n, n);
    std::printf("scaled2 n=%d  %.6g\n", n, ds.points[0].value);
    std::fflush(stdout);
  }
  return 0;
}
