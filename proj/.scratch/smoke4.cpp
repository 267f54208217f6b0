#include "gaugelab/states.hpp"
#include "gaugelab/interaction.hpp"
#include <cstdio>
#include <cmath>

using namespace gaugelab;

// log ratio experiment: D_n^G vs restriction of buffered proxy
static void log_ratio(const Interaction& phi, const Matrix& h, int n, int L) {
  int d = phi.d();
  Matrix hn = phi.hamiltonian(chain(n));
  FieldDensity f = product_state(h, n);
  GibbsState gw = gibbs_weighted(f, hn);
  // D^G = e^{-Hn} / phi(e^{-Hn})
  EigSys es = eig_hermitian(hn);
  Matrix dg = apply_spectral(es, [&](double x) { return std::exp(-x - gw.log_partition); });
  Interaction phih = phi.perturb(h);
  Interval window{1 - L, n + L};
  GibbsState proxy = gibbs_field(phih.hamiltonian(window));
  FieldDensity rho = restrict_field(proxy.state, chain(n), window, d);
  // Dn = F^{-1/2} rho F^{-1/2}
  EigSys fes = eig_hermitian(f.mat());
  Matrix finvh = apply_spectral(fes, [](double x) { return 1.0 / std::sqrt(x); });
  Matrix dn = finvh * rho.mat() * finvh;
  dn = 0.5 * (dn + dn.adjoint().eval());
  Matrix diff = logm(HermitianOp::from(dg)).mat() - logm(HermitianOp::from(dn)).mat();
  EigSys des = eig_hermitian(diff);
  double maxeig = des.values.maxCoeff();
  double bound = 2.0 * op_norm(phi.boundary(chain(n), window));
  std::printf("  L=%d  max_eig=%.10g  bound=%.10g  margin=%.10g\n", L, maxeig, bound, maxeig - bound);
}

int main() {
  auto z2 = SymmetrySpec::abelian({1, -1});
  Matrix zz = tensor(pauli_z(), pauli_z());
  Matrix zloc = pauli_z();
  Interaction ising(z2, {InteractionTerm{{0, 1}, zz}, InteractionTerm{{0}, zloc}});

  // xxz_charge: Jxy/2 (XX + YY) + Jz ZZ + mu Z, charge-conserving, non-commuting
  Matrix xx = tensor(pauli_x(), pauli_x());
  Matrix yy = tensor(pauli_y(), pauli_y());
  Matrix hop = 0.5 * (xx + yy);
  Interaction xxz(z2, {InteractionTerm{{0, 1}, Matrix(hop + 0.8 * zz)}, InteractionTerm{{0}, Matrix(0.5 * zloc)}});

  Matrix h0 = Matrix::Zero(2, 2);
  std::printf("xxz weak gibbs residuals |Lam|=2:\n");
  for (int L = 1; L <= 3; ++L)
    std::printf("  L=%d  r=%.10g\n", L, weak_gibbs_residual(xxz, h0, {1, 2}, L));

  Matrix h1(2, 2);
  h1 << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
  Matrix h = normalize_generator(h1);

  std::printf("gauge ising log-ratio margins, n=4, h=0:\n");
  Matrix hz = normalize_generator(Matrix::Zero(2, 2));
  for (int L = 1; L <= 3; ++L) log_ratio(ising, hz, 4, L);
  std::printf("gauge ising log-ratio margins, n=4, h=diag:\n");
  for (int L = 1; L <= 3; ++L) log_ratio(ising, h, 4, L);
  std::printf("xxz log-ratio margins, n=4, h=0:\n");
  for (int L = 1; L <= 3; ++L) log_ratio(xxz, hz, 4, L);
  return 0;
}
