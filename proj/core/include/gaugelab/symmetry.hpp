#pragma once

#include "gaugelab/common.hpp"
#include "gaugelab/operator_kernel.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace gaugelab {

// On-site symmetry action, one of three backends. All three admit an
// exact fixed-point average: finite groups by averaging over the
// element list, integer charge assignments by charge-sector masking,
// and hermitian generator lists by projecting onto the null space of
// the summed commutator maps.
struct FiniteGroupBackend {
  std::vector<Matrix> elements;  // closed under product and adjoint, contains 1
};
struct AbelianChargesBackend {
  std::vector<int> charges;  // one integer per basis vector
};
struct LieGeneratorsBackend {
  std::vector<Matrix> generators;  // hermitian d x d
};

class SymmetrySpec {
 public:
  static SymmetrySpec finite_group(int d, std::vector<Matrix> elements);
  static SymmetrySpec abelian(std::vector<int> charges);
  static SymmetrySpec lie(int d, std::vector<Matrix> generators);
  static SymmetrySpec trivial(int d);  // one-element group

  int d() const { return d_; }
  const std::variant<FiniteGroupBackend, AbelianChargesBackend, LieGeneratorsBackend>&
  backend() const {
    return backend_;
  }
  bool is_abelian_charges() const {
    return std::holds_alternative<AbelianChargesBackend>(backend_);
  }

 private:
  int d_ = 2;
  std::variant<FiniteGroupBackend, AbelianChargesBackend, LieGeneratorsBackend> backend_;
};

// Average of a window operator over the product action. Exact for all
// backends; the result commutes with the action within 1e-10.
Matrix gauge_average(const Matrix& a, const SymmetrySpec& spec, int n);
HermitianOp gauge_average(const HermitianOp& a, const SymmetrySpec& spec, int n);

struct Block {
  int mult = 0;       // multiplicity of the component
  int irrep_dim = 0;  // dimension of the commutant factor
};

// Result of splitting the n-site action into isotypic components. In
// the rotated basis every fixed-point operator is block diagonal with
// component i of the form (m_i x m_i matrix) tensor identity(d_i), and
// every operator of the action algebra has the transposed pattern.
class BlockDecomposition {
 public:
  BlockDecomposition(int n, int d, std::vector<Block> blocks, Matrix basis);
  // Permutation basis: column k of the basis change is the field basis
  // vector perm[k]. Keeps charge-sector backends at O(dim^2) instead of
  // dense conjugations.
  BlockDecomposition(int n, int d, std::vector<Block> blocks, std::vector<long long> perm);

  int n() const { return n_; }
  int d() const { return d_; }
  long long dim() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  Matrix basis_matrix() const;  // materializes the permutation case
  int block_count() const { return static_cast<int>(blocks_.size()); }
  long long offset(int i) const { return offsets_[static_cast<size_t>(i)]; }
  int block_span(int i) const { return blocks_[static_cast<size_t>(i)].mult * blocks_[static_cast<size_t>(i)].irrep_dim; }
  int max_irrep_dim() const;
  long long fixed_algebra_dim() const;  // sum of m_i^2

  Matrix to_block_basis(const Matrix& a) const;    // basis^† a basis
  Matrix from_block_basis(const Matrix& a) const;  // basis a basis^†

  // Compress component i of a fixed-point operator to its m_i x m_i
  // matrix (averages the inner index; exact on the pattern).
  std::vector<Matrix> algebra_compress(const Matrix& a_field) const;
  Matrix algebra_expand(const std::vector<Matrix>& parts) const;  // back to field basis

  // Residual Frobenius mass of `a` outside the fixed-point pattern
  // (relative to the Frobenius norm of `a`).
  double algebra_pattern_residual(const Matrix& a_field) const;
  // Same for the commutant pattern identity(m_i) tensor B_i.
  double commutant_pattern_residual(const Matrix& a_field) const;

  // Canonical trace of the fixed-point algebra: weight one on each
  // minimal projection, i.e. sum over components of tr(block)/d_i.
  double fixed_trace(const Matrix& a_field) const;

  // Density of a state on the fixed-point algebra with respect to the
  // canonical trace: per-component partial trace over the inner index.
  std::vector<Matrix> restrict_density(const Matrix& density_field) const;

  // Trace-preserving conditional expectation onto the fixed-point
  // algebra, computed blockwise (agrees with gauge_average).
  Matrix conditional_expectation(const Matrix& a_field) const;

  // Density of the normalized product trace against the canonical
  // trace: the constant d_i / d^n on component i.
  std::vector<Matrix> nu_blocks() const;

 private:
  void finish_init();

  int n_;
  int d_;
  long long dim_ = 0;
  std::vector<Block> blocks_;
  Matrix basis_;                 // empty when perm_ is used
  std::vector<long long> perm_;  // empty when basis_ is used
  std::vector<long long> offsets_;
};

using BlockDecompositionPtr = std::shared_ptr<const BlockDecomposition>;

// Splits the n-site action. Charge backends are handled by exact
// sector counting; the other backends use seeded random probes
// (averaged, eigendecomposed, clustered at 1e-8, aligned with a second
// probe, verified with a third) with up to five retries.
BlockDecompositionPtr decompose(const SymmetrySpec& spec, int n, std::uint64_t seed = 0x6761756765ULL);

// (1/n) log max_i d_i for n in [n_lo, n_hi].
std::vector<std::pair<int, double>> max_irrep_dim_series(const SymmetrySpec& spec, int n_lo,
                                                         int n_hi, std::uint64_t seed);

// True when the generator is invariant under the single-site action
// and its compressed components are scalar, i.e. e^{ith} acts from the
// center of the single-site fixed-point algebra.
bool is_central_generator(const Matrix& h, const SymmetrySpec& spec);

int total_charge(const AbelianChargesBackend& b, long long index, int n, int d);

}  // namespace gaugelab
