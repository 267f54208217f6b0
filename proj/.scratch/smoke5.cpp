#include "gaugelab/thermo.hpp"
#include <cstdio>
#include <cmath>

using namespace gaugelab;

int main() {
  auto z2 = SymmetrySpec::abelian({1, -1});
  Matrix zz = tensor(pauli_z(), pauli_z());
  Matrix zloc = pauli_z();
  Interaction ising(z2, {InteractionTerm{{0, 1}, zz}, InteractionTerm{{0}, zloc}});
  Interaction ising0(z2, {InteractionTerm{{0, 1}, zz}});  // mu = 0
  Interaction zero(z2, {});
  Matrix h1(2, 2);
  h1 << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
  Matrix h = normalize_generator(h1);
  Matrix h0 = Matrix::Zero(2, 2);

  // transfer matrix: (1/n) log Tr e^{-H} = (log2 + (n-1) log 2cosh1)/n
  ThermoSeries pf = pressure_series(ising0, PressureWeight::full_trace(), 2, 8);
  for (const auto& p : pf.points) {
    double exact = (std::log(2.0) + (p.n - 1) * std::log(2.0 * std::cosh(1.0))) / p.n;
    std::printf("n=%d pF=%.12g exact=%.12g diff=%.2e\n", p.n, p.value, exact, p.value - exact);
  }
  std::printf("extrapolation: %.10g (log 2cosh1 = %.10g) +- %.2e\n",
              pf.extrapolation->estimate, std::log(2.0 * std::cosh(1.0)),
              pf.extrapolation->uncertainty);

  // (1.8) identity: product pressure vs full trace of perturbed - log d
  ThermoSeries pp = pressure_series(ising, PressureWeight::product_state(h), 2, 8);
  ThermoSeries pfh = pressure_series(ising.perturb(h), PressureWeight::full_trace(), 2, 8);
  double worst = 0;
  for (size_t i = 0; i < pp.points.size(); ++i)
    worst = std::max(worst, std::abs(pp.points[i].value - (pfh.points[i].value - std::log(2.0))));
  std::printf("(1.8) worst defect n<=8: %.2e\n", worst);

  // criterion 6: derivative identity, n=4, step 1e-4
  double fd = pressure_derivative(ising, h, ising, 4, 1e-4);
  double exact = gibbs_energy_form(ising, h, ising, 4);
  std::printf("derivative fd=%.12g exact=%.12g diff=%.2e\n", fd, exact, fd - exact);

  // criterion 7 shape: Phi=0, h nontrivial -> closed forms
  EntropyChain c0 = entropy_density_chain(zero, h, 2, 5, 1);
  double s1site = expect(product_state(h, 1), h) + std::log(2.0);
  std::printf("Phi=0 chains at n=5: %.3e %.3e %.3e %.12g %.12g (S1=%.12g)\n",
              value_at(c0.algebra_relative, 5), value_at(c0.field_relative, 5),
              value_at(c0.proxy_form, 5), value_at(c0.field_gibbs_entropy, 5),
              value_at(c0.algebra_gibbs_entropy, 5), s1site);

  // gauge Ising chain: gap behavior (h = 0 and h diag), L = 1
  for (int hrun = 0; hrun < 2; ++hrun) {
    const Matrix& hh = hrun ? h : h0;
    EntropyChain ci = entropy_density_chain(ising, hh, 2, 8, 1);
    std::printf("gauge Ising h=%s max_gap: ", hrun ? "diag" : "0");
    for (const auto& p : ci.max_gap.points) std::printf("n=%d %.6g  ", p.n, p.value);
    std::printf("\n");
  }

  // criterion 8: defect series, Gibbs proxy candidate L=1 vs scaled 2H
  ThermoSeries dg = variational_defect(ising, h, gibbs_proxy_candidate(ising, h, 1), 2, 8);
  ThermoSeries db = variational_defect(ising, h, scaled_gibbs_candidate(ising, h, 2.0), 2, 8);
  std::printf("defect gibbs:  ");
  for (const auto& p : dg.points) std::printf("n=%d %.6g  ", p.n, p.value);
  std::printf("\ndefect scaled: ");
  for (const auto& p : db.points) std::printf("n=%d %.6g  ", p.n, p.value);
  std::printf("\n");
  return 0;
}
