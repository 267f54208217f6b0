#include "gaugelab/states.hpp"
#include "gaugelab/interaction.hpp"
#include <cstdio>
#include <cmath>

using namespace gaugelab;

int main() {
  // product state: entropy density = phi1(h) + log d for normalized h
  Matrix h0(2, 2);
  h0 << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
  Matrix h = normalize_generator(h0);
  std::printf("shift = %.15g (log cosh 1 = %.15g)\n", generator_shift(h0), std::log(std::cosh(1.0)));
  FieldDensity prod = product_state(h, 3);
  double s1 = expect(product_state(h, 1), h) + std::log(2.0);
  std::printf("S(prod3)/3 = %.15g  phi1(h)+log2 = %.15g\n", entropy(prod) / 3.0, s1);

  // gibbs on diag(1,-1): weights e^{-1}, e^{+1} over 2cosh(1)
  Matrix hh(2, 2);
  hh << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
  GibbsState g = gibbs_field(hh);
  std::printf("log Z = %.15g  (log 2cosh1 = %.15g)\n", g.log_partition, std::log(2.0 * std::cosh(1.0)));
  std::printf("p_up = %.15g (expect %.15g)\n", g.state.mat()(0, 0).real(), std::exp(-1.0) / (2.0 * std::cosh(1.0)));

  // Lemma 2.1 on a gauge-invariant random state: S(omega) + S(omega,nu) + omega(log d nu/dTr) = 0
  auto z2 = SymmetrySpec::abelian({1, -1});
  auto dec = decompose(z2, 3);
  std::mt19937_64 rng(42); Matrix raw = random_hermitian(8, rng).mat();
  Matrix ginv = gauge_average(raw, z2, 3);
  Matrix dens = expm(HermitianOp::from(ginv)).mat();
  dens /= dens.trace().real();
  FieldDensity rho(dens);
  AlgebraDensity omega = AlgebraDensity::restricted(rho, dec);
  AlgebraDensity nu = nu_state(dec);
  // log d(nu)/dTr_A per block: log(d_i/d^n) * I
  std::vector<Matrix> logdnu;
  for (size_t i = 0; i < dec->blocks().size(); ++i) {
    int m = dec->blocks()[i].mult, di = dec->blocks()[i].irrep_dim;
    logdnu.push_back(std::log(double(di) / 8.0) * Matrix::Identity(m, m));
  }
  double lhs = entropy(omega) + relative_entropy(omega, nu) + omega.expect(logdnu);
  std::printf("Lemma 2.1 residual = %.3e\n", lhs);

  // relative entropy both overloads on simple diagonal pair
  Matrix a = Matrix::Zero(2, 2); a(0, 0) = 0.7; a(1, 1) = 0.3;
  Matrix b = Matrix::Zero(2, 2); b(0, 0) = 0.4; b(1, 1) = 0.6;
  double kl = 0.7 * std::log(0.7 / 0.4) + 0.3 * std::log(0.3 / 0.6);
  std::printf("KL diag = %.15g expect %.15g\n", relative_entropy(FieldDensity(a), FieldDensity(b)), kl);

  // perturb bound |log_scale| <= ||Q||
  std::mt19937_64 rng2(7); Matrix q = random_hermitian(8, rng2).mat();
  PerturbedState ps = perturb_state(rho, q);
  std::printf("log_scale %.6g  |Q| %.6g  ok=%d\n", ps.log_scale, op_norm(q),
              std::abs(ps.log_scale) <= op_norm(q) + 1e-12);
  // (1.3)-style exactness: S(psi, omega^Q) = S(psi, omega) + psi(Q) + log_scale
  FieldDensity psi = gibbs_field(gauge_average(random_hermitian(8, rng2).mat(), z2, 3)).state;
  double left = relative_entropy(psi, ps.state);
  double right = relative_entropy(psi, rho) + expect(psi, q) + ps.log_scale;
  std::printf("chain rule residual = %.3e\n", left - right);

  // weak gibbs: single site exactly 0; gauge Ising decreasing in buffer
  Matrix zz = tensor(pauli_z(), pauli_z());
  Matrix zloc = pauli_z();
  Interaction single(z2, {InteractionTerm{{0}, zloc}});
  std::printf("single-site residual = %.3e\n", weak_gibbs_residual(single, Matrix::Zero(2, 2), {1, 3}, 1));

  Interaction ising(z2, {InteractionTerm{{0, 1}, zz}, InteractionTerm{{0}, zloc}});
  double r1 = weak_gibbs_residual(ising, Matrix::Zero(2, 2), {1, 3}, 1);
  double r2 = weak_gibbs_residual(ising, Matrix::Zero(2, 2), {1, 3}, 2);
  double r3 = weak_gibbs_residual(ising, Matrix::Zero(2, 2), {1, 3}, 3);
  std::printf("weak gibbs residuals L=1,2,3: %.6g %.6g %.6g\n", r1, r2, r3);

  // gibbs_weighted consistency: F = product(e^{-h})/d^n, H = ising H3 -> log phi(e^{-H})
  FieldDensity fref = product_state(h, 3);
  Matrix H3 = ising.perturb(Matrix::Zero(2,2)).hamiltonian(chain(3));
  GibbsState gw = gibbs_weighted(fref, H3);
  // identity: log tr(F e^{-H}) = log tr(e^{-(H + sum h_j)}) - n log d  when [F, H] = 0
  Interaction isingh = ising.perturb(h);
  GibbsState gfull = gibbs_field(isingh.hamiltonian(chain(3)));
  std::printf("(1.8) residual = %.3e\n", gw.log_partition - (gfull.log_partition - 3 * std::log(2.0)));
  return 0;
}
