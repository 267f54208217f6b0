#pragma once

#include "gaugelab/common.hpp"
#include "gaugelab/interaction.hpp"
#include "gaugelab/series.hpp"
#include "gaugelab/states.hpp"
#include "gaugelab/symmetry.hpp"

#include <string>
#include <vector>

namespace gaugelab {

// Outcome of minimizing the reference weight of a test projection
// subject to a floor on the null-state mass. `value` is the weight of
// the best projection found and `psi_mass` the null mass it carries.
// When `exact` is set the minimum is certified and `lower_bound`
// equals `value`; otherwise `lower_bound` is the operator-relaxed
// floor, which never exceeds the projection optimum.
struct BetaResult {
  double value = 0.0;
  double psi_mass = 0.0;
  double lower_bound = 0.0;
  bool exact = false;
  std::string description;
};

// Exact minimum over projections for a commuting pair, solved in the
// joint eigenbasis as a grouped 0/1 knapsack: minimize the reference
// mass subject to null mass >= 1 - eps (inclusive). The fixed-point
// overloads optimize over projections of the fixed-point algebra,
// cells being its minimal projections; unweighted overloads charge
// each cell its canonical-trace weight (one per minimal projection)
// or matrix-trace weight (one per eigenvector).
// Densities that fail to commute within 1e-10 are rejected with a
// hypothesis error naming beta_epsilon_search as the fallback.
BetaResult beta_epsilon_commuting(const AlgebraDensity& psi, const AlgebraDensity& ref,
                                  double eps);
BetaResult beta_epsilon_commuting(const AlgebraDensity& psi, double eps);
BetaResult beta_epsilon_commuting(const FieldDensity& psi, const FieldDensity& ref, double eps);
BetaResult beta_epsilon_commuting(const FieldDensity& psi, double eps);

// Certified bounds for a general pair. The upper bound is the best
// feasible projection among eigenvalue-ordered prefixes of the pencil
// (1-a)*psi - a*ref over a grid of mixtures and of the log-ratio
// operator; the lower bound relaxes the projection to 0 <= q <= 1 and
// evaluates the concave dual by scan plus ternary refinement. A pair
// that commutes within 1e-10 routes to the exact path instead, so the
// two bounds collapse there.
BetaResult beta_epsilon_search(const FieldDensity& psi, const FieldDensity& ref, double eps,
                               int grid = 33);
BetaResult beta_epsilon_search(const AlgebraDensity& psi, const AlgebraDensity& ref, double eps,
                               int grid = 33);

// The four error-exponent sequences: test the buffered equilibrium
// proxy against the product weight on the fixed-point or the field
// algebra, or against the plain trace (unweighted), per volume.
enum class ExponentVariant {
  AlgebraPair,        // proxy vs product weight on the fixed-point algebra
  FieldPair,          // proxy vs product weight on the field algebra
  AlgebraUnweighted,  // proxy vs canonical trace; needs a central generator
  FieldUnweighted     // proxy vs matrix trace; needs a central generator
};

// Per-n optima and exponents, the limit estimate they chase, and the
// finite-n corridor. For the pair variants the corridor floor dilates
// the (negative) target by 1/(1-eps); for the unweighted variants the
// asserted limit is the entropy density itself and the corridor
// collapses onto it. margins[k] measures how far point k falls outside
// [corridor_lo - 0, corridor_hi + 0]; zero inside.
struct ExponentReport {
  ExponentVariant variant = ExponentVariant::AlgebraPair;
  double eps = 0.0;
  ThermoSeries values;     // per-n optimal reference weights
  ThermoSeries exponents;  // per-n (1/n) log value
  double target = 0.0;
  double corridor_lo = 0.0;
  double corridor_hi = 0.0;
  std::vector<double> margins;
  bool exact = false;
};

ExponentReport exponent_series(const Interaction& phi, const Matrix& h, double eps, int n_lo,
                               int n_hi, ExponentVariant variant, int buffer = 1);

// Spectral window of -(1/n) log D_n around -s, half-width delta, where
// D_n is the density of psi relative to ref in their joint eigenbasis.
// Every selected cell has likelihood ratio inside
// (exp(n(s - delta)), exp(n(s + delta))), which forces the two-sided
// sandwich ref_floor <= ref_mass <= ref_ceiling with
// ref_floor = psi_mass * exp(-n(s + delta)) and the ceiling likewise.
struct AepWindow {
  double psi_mass = 0.0;
  double ref_mass = 0.0;
  double ref_floor = 0.0;
  double ref_ceiling = 0.0;
  long long cells = 0;
  double s_center = 0.0;
};

AepWindow aep_projection(const AlgebraDensity& psi, const AlgebraDensity& ref, double s,
                         double delta);
// Convenience: proxy-vs-product instance at volume n with the window
// centered on the extrapolated mean relative entropy density.
AepWindow aep_projection(const Interaction& phi, const Matrix& h, int n, double delta,
                         int buffer = 1);

// Largest eigenvalue of log D_n^G - log D_n against the surface bound
// 2||W_n||, where D_n^G is the weighted local Gibbs density
// e^{-H_n} / phi(e^{-H_n}) and D_n the density of the ring-closure
// proxy relative to the product weight. The finite-buffer proxy
// inflates the gap; the inflation decays as the buffer grows, so the
// (negative) margin decreases while the bound holds throughout.
struct LogRatioBound {
  double max_eigenvalue = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // max_eigenvalue - bound
};

LogRatioBound gibbs_log_ratio_bound(const Interaction& phi, const Matrix& h, int n, int buffer);

}  // namespace gaugelab
