#pragma once

#include "gaugelab/common.hpp"
#include "gaugelab/interaction.hpp"
#include "gaugelab/operator_kernel.hpp"
#include "gaugelab/symmetry.hpp"

#include <vector>

namespace gaugelab {

// Normalization of a single-site generator: the shift c with
// (1/d) tr e^{-(h+c)} = 1.
double generator_shift(const Matrix& h);
Matrix normalize_generator(const Matrix& h);
bool is_normalized_generator(const Matrix& h);

// Density with respect to the full matrix trace of the n-site field
// algebra. Construction symmetrizes, verifies unit trace (then divides
// the drift out) and the eigenvalue floor. Diagonal densities keep a
// diagonal-only spectral form so product states stay cheap at large n.
class FieldDensity {
 public:
  explicit FieldDensity(const Matrix& m);

  const Matrix& mat() const { return m_; }
  long long dim() const { return m_.rows(); }
  // Spectrum ascending. Eigenvectors are stored only for the dense
  // path; diagonal densities answer through their diagonal instead.
  const RealVector& spectrum() const { return values_; }
  bool diagonal() const { return diagonal_; }
  const Matrix& dense_vectors() const;  // throws on the diagonal path

  // Trusted factory for callers that already hold the spectrum.
  static FieldDensity with_spectrum(Matrix m, RealVector values_ascending, Matrix vectors);

 private:
  FieldDensity() = default;
  void validate();

  Matrix m_;
  RealVector values_;
  Matrix vectors_;  // empty on the diagonal path
  bool diagonal_ = false;
};

// Density of a state on the fixed-point algebra with respect to the
// canonical trace: one hermitian PSD block per component, total
// canonical trace 1.
class AlgebraDensity {
 public:
  AlgebraDensity(BlockDecompositionPtr dec, std::vector<Matrix> blocks);
  static AlgebraDensity restricted(const FieldDensity& rho, const BlockDecompositionPtr& dec);

  const BlockDecompositionPtr& decomposition() const { return dec_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const EigSys& block_spectrum(size_t i) const { return spectra_[i]; }

  // Expectation of a fixed-point observable given in compressed form.
  double expect(const std::vector<Matrix>& observable_parts) const;

 private:
  BlockDecompositionPtr dec_;
  std::vector<Matrix> blocks_;
  std::vector<EigSys> spectra_;
};

// The restriction of the normalized product trace, as a state density.
AlgebraDensity nu_state(const BlockDecompositionPtr& dec);

double entropy(const FieldDensity& rho);
double entropy(const AlgebraDensity& rho);

// +infinity when the support condition fails.
double relative_entropy(const FieldDensity& psi, const FieldDensity& omega);
double relative_entropy(const AlgebraDensity& psi, const AlgebraDensity& omega);

double expect(const FieldDensity& rho, const Matrix& observable);

// Norm distance of the induced functionals: trace norm of the
// difference (blockwise canonical for the fixed-point algebra).
double trace_distance(const FieldDensity& a, const FieldDensity& b);
double functional_distance(const AlgebraDensity& a, const AlgebraDensity& b);

FieldDensity maximally_mixed(int n, int d);

// Product state with single-site weight e^{-h}; h must be normalized.
FieldDensity product_state(const Matrix& h, int n);

// Restriction of a field density to a subinterval of its window.
FieldDensity restrict_field(const FieldDensity& rho, Interval sub, Interval window, int d);

struct GibbsState {
  FieldDensity state;
  double log_partition;
};
// e^{-H} normalized by the matrix trace.
GibbsState gibbs_field(const Matrix& hamiltonian);
// (reference density)·e^{-H}, normalized; the two factors must commute
// within 1e-8 or the model is rejected. log_partition is the log of
// the reference-weighted partition sum.
GibbsState gibbs_weighted(const FieldDensity& reference, const Matrix& hamiltonian);

struct PerturbedState {
  FieldDensity state;
  double log_scale;  // log trace of exp(log D - Q)
};
// exp(log D - Q), normalized; the unique minimizer of
// S(.,omega) + (.)(Q). Requires a faithful omega.
PerturbedState perturb_state(const FieldDensity& omega, const Matrix& q);

// Weak Gibbs defect: take the Gibbs proxy of the h-shifted interaction
// on lam widened by `buffer`, perturb by minus the surface energy,
// restrict to the fixed-point algebra of lam, and measure the distance
// to the local Gibbs state. Needs a symmetry-checked interaction and
// buffer >= range.
double weak_gibbs_residual(const Interaction& phi, const Matrix& h, Interval lam, int buffer);

}  // namespace gaugelab
