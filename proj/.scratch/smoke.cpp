#include "gaugelab/symmetry.hpp"
#include <cstdio>
using namespace gaugelab;

int main() {
  // SU(2) fundamental: n=3 must give {(2,2),(1,4)}.
  Matrix sx = pauli_x() * 0.5, sy = pauli_y() * 0.5, sz = pauli_z() * 0.5;
  SymmetrySpec su2 = SymmetrySpec::lie(2, {sx, sy, sz});
  auto dec3 = decompose(su2, 3);
  std::printf("su2 n=3 blocks:");
  for (auto& b : dec3->blocks()) std::printf(" (%d,%d)", b.mult, b.irrep_dim);
  std::printf("  maxd=%d\n", dec3->max_irrep_dim());

  // Abelian charges (1,-1), n=2: three sectors {(1,1),(2,1),(1,1)}.
  SymmetrySpec ab = SymmetrySpec::abelian({1, -1});
  auto deca = decompose(ab, 2);
  std::printf("abelian n=2 blocks:");
  for (auto& b : deca->blocks()) std::printf(" (%d,%d)", b.mult, b.irrep_dim);
  std::printf("\n");

  // Z2 group (1, diag(1,-1)): n=2 sectors split even/odd parity: dims 2+2, all d_i=1? No:
  // Z2 abelian so irrep_dim 1, multiplicities 2,2.
  Matrix z2 = pauli_z();
  SymmetrySpec g = SymmetrySpec::finite_group(2, {identity(2), z2});
  auto decg = decompose(g, 2);
  std::printf("z2 n=2 blocks:");
  for (auto& b : decg->blocks()) std::printf(" (%d,%d)", b.mult, b.irrep_dim);
  std::printf("\n");

  // Conditional expectation agrees with direct average on a random op.
  std::mt19937_64 rng(7);
  Matrix a = random_hermitian(8, rng).mat();
  Matrix e1 = gauge_average(a, su2, 3);
  Matrix e2 = dec3->conditional_expectation(a);
  std::printf("E agreement: %.3e\n", (e1 - e2).norm());

  // Canonical trace of identity = sum m_i = 2+1 = 3 for su2 n=3.
  std::printf("fixed_trace(1) = %.12f\n", dec3->fixed_trace(identity(8)));

  // nu eigenvalues times d^n lie in [1, maxd].
  auto nus = dec3->nu_blocks();
  for (size_t i = 0; i < nus.size(); ++i)
    std::printf("nu block %zu value*8 = %.12f\n", i, nus[i](0,0).real() * 8.0);

  // Trivial group: single block (d^n, 1).
  auto dect = decompose(SymmetrySpec::trivial(2), 2);
  std::printf("trivial n=2 blocks:");
  for (auto& b : dect->blocks()) std::printf(" (%d,%d)", b.mult, b.irrep_dim);
  std::printf("\n");
  return 0;
}
