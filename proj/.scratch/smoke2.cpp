#include "gaugelab/interaction.hpp"
#include <cstdio>
using namespace gaugelab;

Interaction gauge_ising(double mu, double J) {
  Matrix z = pauli_z();
  Matrix zz = tensor(z, z);
  return Interaction(2, {InteractionTerm{{0}, mu * z}, InteractionTerm{{0, 1}, J * zz}});
}

int main() {
  Interaction phi = gauge_ising(1.0, 1.0);
  std::printf("range=%d site_sum=%.12f max_boundary=%.12f locality=%.12f per_site=%.12f\n",
              phi.range(), phi.site_sum_norm(), phi.max_boundary_norm(), phi.locality_norm(),
              phi.per_site_norm());

  // H on [1,3]: 3 single-site + 2 two-site translates, diagonal.
  Matrix h = phi.hamiltonian(chain(3));
  std::printf("H3 diag? %d  trace=%.12f  norm(H3)=%.12f\n", int(is_diagonal(h)),
              h.trace().real(), op_norm(h));

  // Boundary of [1,2] in window [0,3]: translates x=0 and x=2.
  Matrix w = phi.boundary(Interval{1, 2}, Interval{0, 3});
  std::printf("W norm=%.12f\n", op_norm(w));

  // Derivation bound for cyclic shifts.
  for (int r = 1; r <= 3; ++r) {
    Matrix u = cyclic_shift_unitary(r, 2);
    Matrix d0 = derivation(phi, u, Interval{-r, r});
    std::printf("r=%d  |delta(u)| = %.12f  bound = %.12f\n", r, op_norm(d0),
                4.0 * phi.locality_norm());
  }

  // Perturb adds to the single-site term.
  Interaction ph = phi.perturb(0.5 * pauli_x());
  std::printf("perturbed terms=%zu per_site=%.12f\n", ph.terms().size(), ph.per_site_norm());

  // mean_energy at site 2 of window [1,3]: Z2*(1) + (Z1Z2 + Z2Z3)/2.
  Matrix me = phi.mean_energy(2, chain(3));
  std::printf("mean_energy diag? %d norm=%.12f\n", int(is_diagonal(me)), op_norm(me));
  return 0;
}
