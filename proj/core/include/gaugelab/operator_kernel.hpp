#pragma once

#include "gaugelab/common.hpp"

#include <functional>
#include <random>
#include <vector>

namespace gaugelab {

// Dense hermitian operator. Construction symmetrizes the input and
// rejects matrices whose anti-hermitian part exceeds the guard
// tolerance relative to the Frobenius norm.
class HermitianOp {
 public:
  HermitianOp() = default;
  static HermitianOp from(const Matrix& m, double guard = tol().hermiticity);
  // For matrices hermitian by construction; still symmetrizes.
  static HermitianOp trusted(const Matrix& m);

  const Matrix& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  explicit HermitianOp(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

// Eigensystem of a hermitian matrix, eigenvalues ascending. Matrices
// with exactly zero off-diagonal part take a fast path that keeps the
// spectrum bit-identical to the diagonal entries.
struct EigSys {
  RealVector values;
  Matrix vectors;  // columns
};
EigSys eig_hermitian(const Matrix& m);

bool is_diagonal(const Matrix& m);

Matrix identity(int dim);
Matrix tensor(const Matrix& a, const Matrix& b);
Matrix tensor_many(const std::vector<Matrix>& factors);
Matrix tensor_power(const Matrix& a, int n);

// Operator acting on `sites` (strictly ascending, within `window`),
// extended by identity to the full window. `a` must have dimension
// d^{|sites|}; its first tensor slot corresponds to sites.front().
Matrix embed(const Matrix& a, const std::vector<int>& sites, Interval window, int d);
HermitianOp embed(const HermitianOp& a, const std::vector<int>& sites, Interval window, int d);

// Partial trace keeping `keep` (ascending subset of window sites).
Matrix partial_trace(const Matrix& a, const std::vector<int>& keep, Interval window, int d);

HermitianOp expm(const HermitianOp& a);
// Requires a strictly positive spectrum; eigenvalues at or below the
// spectrum floor raise SingularityError.
HermitianOp logm(const HermitianOp& a);
Matrix apply_spectral(const EigSys& es, const std::function<double(double)>& f);

double op_norm(const Matrix& a);     // largest singular value
double trace_norm(const Matrix& a);  // sum of singular values
double commutator_norm(const Matrix& a, const Matrix& b);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// GUE-style draw, entries O(1); deterministic for a given engine state.
HermitianOp random_hermitian(int dim, std::mt19937_64& rng);
Matrix random_density(int dim, std::mt19937_64& rng);

void check_capacity(long long dim, const std::string& what);

}  // namespace gaugelab
