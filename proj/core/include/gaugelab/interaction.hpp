#pragma once

#include "gaugelab/common.hpp"
#include "gaugelab/operator_kernel.hpp"
#include "gaugelab/symmetry.hpp"

#include <optional>
#include <vector>

namespace gaugelab {

// One translation-invariant coupling: a hermitian operator attached to
// the site set {x + o : o in offsets} for every integer x. Offsets are
// strictly ascending and start at 0, so each set is keyed by its
// leftmost site.
struct InteractionTerm {
  std::vector<int> offsets;
  Matrix op;  // dim d^{offsets.size()}, first tensor slot = leftmost site
};

// True when a single-site operator commutes with the on-site action,
// i.e. the flow it generates is central relative to the symmetry.
bool commutes_with_action(const Matrix& h, const SymmetrySpec& spec);

// Finite-range translation-invariant interaction on the chain. The
// symmetry-aware constructor rejects terms the gauge average moves;
// perturbing by a non-invariant single-site operator keeps the object
// usable but clears the invariance flag.
class Interaction {
 public:
  Interaction(int d, std::vector<InteractionTerm> terms);
  Interaction(const SymmetrySpec& spec, std::vector<InteractionTerm> terms);

  int d() const { return d_; }
  int range() const { return range_; }  // largest offset across terms
  const std::vector<InteractionTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // All terms verified invariant under the attached symmetry.
  bool gauge_invariant() const { return invariant_; }
  const std::optional<SymmetrySpec>& symmetry() const { return spec_; }

  // Sum of all translates fully contained in lam, as an operator on
  // lam (or embedded into a larger window).
  Matrix hamiltonian(Interval lam) const;
  Matrix hamiltonian(Interval lam, Interval window) const;

  // Surface part: translates that intersect both lam and its
  // complement. The window must contain lam widened by the range.
  Matrix boundary(Interval lam, Interval window) const;

  // Sum of term norms over the translates containing a fixed site.
  double site_sum_norm() const;
  // Worst surface norm over intervals of length 1 .. 2*range+1; longer
  // intervals repeat the pattern.
  double max_boundary_norm() const;
  // site_sum_norm + max_boundary_norm; controls commutators of the
  // formal derivation with strictly local elements.
  double locality_norm() const;
  // Sum over sets through a fixed site of term norm / set size; equals
  // the sum of term norms over leftmost-site representatives. Bounds
  // the energy per site.
  double per_site_norm() const;

  // Energy density observable at `site`: translates through the site,
  // each weighted by 1/|support|, summed inside the window.
  Matrix mean_energy(int site, Interval window) const;

  // Interaction with `single_site` added to the one-site coupling.
  // Keeps the symmetry attachment; the invariance flag survives only
  // if `single_site` commutes with the action.
  Interaction perturb(const Matrix& single_site) const;

 private:
  friend Interaction scale(const Interaction&, double);
  friend Interaction combine(const Interaction&, const Interaction&);

  void init_terms(std::vector<InteractionTerm> terms);

  int d_;
  int range_ = 0;
  std::vector<InteractionTerm> terms_;
  std::optional<SymmetrySpec> spec_;
  bool invariant_ = false;
};

// Every term scaled by c. Symmetry attachment carries over.
Interaction scale(const Interaction& phi, double c);

// Term-wise sum; couplings on the same offset set are merged. The
// symmetry carries over only when both inputs hold the same one.
Interaction combine(const Interaction& a, const Interaction& b);

// Hamiltonian on the cyclic closure of `sites` sites: all translates
// plus the seam term. Needs range <= 1 and exchange-symmetric pair
// couplings, since the wrapped pair is re-embedded with sorted legs.
Matrix ring_hamiltonian(const Interaction& phi, int sites);

// Unitary cyclic right shift of the sites of [-radius, radius].
Matrix cyclic_shift_unitary(int radius, int d);

// Commutator of the formal Hamiltonian with an operator supported on
// a_support: sum of [term, a] over all translates meeting a_support,
// assembled in the window a_support widened by the range. Result is
// generally not hermitian.
Matrix derivation(const Interaction& phi, const Matrix& a, Interval a_support);

// Operator norm of the derivation applied to the cyclic shift of
// [-radius, radius], paired with its locality-norm bound (4x).
struct DerivationBound {
  double value = 0.0;
  double bound = 0.0;
};
DerivationBound cyclic_derivation_bound(const Interaction& phi, int radius);

}  // namespace gaugelab
