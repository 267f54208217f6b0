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
  Matrix h0 = Matrix::Zero(2, 2);
  for (int hrun = 0; hrun < 2; ++hrun) {
    for (int L = 1; L <= 2; ++L) {
      const Matrix& hh = hrun ? h : h0;
      EntropyChain c = entropy_density_chain(ising, hh, 2, 9, L);
      std::printf("h=%s L=%d\n", hrun ? "diag" : "0", L);
      for (const auto& p : c.algebra_relative.points) {
        int n = p.n;
        double s1 = p.value, s2 = value_at(c.field_relative, n), s3 = value_at(c.proxy_form, n);
        double s4 = value_at(c.field_gibbs_entropy, n), s5 = value_at(c.algebra_gibbs_entropy, n);
        double g123 = std::max({std::abs(s1 - s2), std::abs(s1 - s3), std::abs(s2 - s3)});
        std::printf("  n=%d s1=%.6f s2=%.6f s3=%.6f s4=%.6f s5=%.6f gap123=%.6g\n",
                    n, s1, s2, s3, s4, s5, g123);
      }
    }
  }
  return 0;
}
