#pragma once

#include "gaugelab/common.hpp"
#include "gaugelab/interaction.hpp"
#include "gaugelab/series.hpp"
#include "gaugelab/states.hpp"
#include "gaugelab/symmetry.hpp"

#include <functional>
#include <vector>

namespace gaugelab {

// Weighting of the partition sum: a product state built from a
// normalized generator, the canonical trace of the fixed-point
// algebra, or the full matrix trace.
class PressureWeight {
 public:
  enum class Kind { ProductState, AlgebraTrace, FullTrace };

  static PressureWeight product_state(Matrix h);
  static PressureWeight algebra_trace();
  static PressureWeight full_trace();

  Kind kind() const { return kind_; }
  const Matrix& h() const { return h_; }

 private:
  explicit PressureWeight(Kind k) : kind_(k) {}
  Kind kind_;
  Matrix h_;
};

// log of the algebra-trace partition sum Tr_A(e^{-H}), evaluated
// stably through the spectral shift.
double log_algebra_trace_exp(const Matrix& hamiltonian, const BlockDecompositionPtr& dec);

// Per-site log partition sums (1/n) log <e^{-H_n}> under the chosen
// weighting, for n in [n_lo, n_hi]. The algebra-trace weighting needs
// a symmetry-checked interaction.
ThermoSeries pressure_series(const Interaction& phi, const PressureWeight& weight, int n_lo,
                             int n_hi);

// Per-site entropies of a state family.
ThermoSeries mean_entropy_series(const std::function<AlgebraDensity(int)>& family, int n_lo,
                                 int n_hi, const std::string& label);
ThermoSeries mean_entropy_series(const std::function<FieldDensity(int)>& family, int n_lo,
                                 int n_hi, const std::string& label);

// Restriction to [1, n] of the Gibbs state of H(Phi) on the window
// [1-L, n+L] with open ends: the finite-size stand-in for the
// infinite-chain equilibrium state.
FieldDensity buffered_gibbs_proxy(const Interaction& phi, int n, int buffer);

// A state family entering the variational functional, handed the same
// decomposition used for the reference restriction.
using CandidateFamily = std::function<AlgebraDensity(int n, const BlockDecompositionPtr& dec)>;

// Restriction of the buffered-window Gibbs state of Phi^h.
CandidateFamily gibbs_proxy_candidate(const Interaction& phi, const Matrix& h, int buffer);

// Restriction to [1, n] of the Gibbs state of the cyclic closure of
// Phi^h on n + 2*buffer sites. Translation invariance of the ring
// kills the edge defects an open window drags in, so the variational
// defect of this family shrinks like the seam term, O(1/n).
CandidateFamily ring_gibbs_candidate(const Interaction& phi, const Matrix& h, int buffer);

// Restriction of the Gibbs state for the hamiltonian scaled by c; a
// deliberately non-optimal candidate for c != 1.
CandidateFamily scaled_gibbs_candidate(const Interaction& phi, const Matrix& h, double c);

// Restriction of the normalized trace: the bluntest candidate.
CandidateFamily uniform_candidate();

// Per-n value of -(1/n)[S(omega_n, phi_n) + omega_n(H_n)] - (1/n)log
// phi(e^{-H_n}): nonpositive, zero exactly on the finite-volume
// weighted Gibbs state.
ThermoSeries variational_defect(const Interaction& phi, const Matrix& h,
                                const CandidateFamily& candidate, int n_lo, int n_hi);

// Five per-site sequences from the entropy-density chain. The first
// three share one limit (the mean relative entropy of the weighted
// equilibrium state against the product weight): the relative entropy
// on the fixed-point algebra, the same on the field algebra, and the
// entropy-energy form evaluated through the buffered proxy. The last
// two are the per-site Gibbs entropies on field and algebra; they
// share a different limit and their mutual gap is bounded by
// (1/n) log max_i d_i. max_gap tracks the largest pairwise gap among
// the first three; entropy_gap tracks |field - algebra| Gibbs entropy.
struct EntropyChain {
  ThermoSeries algebra_relative;
  ThermoSeries field_relative;
  ThermoSeries proxy_form;
  ThermoSeries field_gibbs_entropy;
  ThermoSeries algebra_gibbs_entropy;
  ThermoSeries max_gap;
  ThermoSeries entropy_gap;
};

EntropyChain entropy_density_chain(const Interaction& phi, const Matrix& h, int n_lo, int n_hi,
                                   int buffer);

// Central finite difference at beta = 0 of the per-site weighted
// pressure of Phi + beta * Psi. Step must lie in [1e-6, 1e-2].
double pressure_derivative(const Interaction& phi, const Matrix& h, const Interaction& psi, int n,
                           double step);

// The closed form the derivative is tested against when the direction
// commutes with the model: -(1/n) phi_n^G(H_n(Psi)).
double gibbs_energy_form(const Interaction& phi, const Matrix& h, const Interaction& psi, int n);

}  // namespace gaugelab
