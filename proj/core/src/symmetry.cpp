#include "gaugelab/symmetry.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace gaugelab {

namespace {

long long pow_ll(int d, int n) {
  long long out = 1;
  for (int k = 0; k < n; ++k) out *= d;
  return out;
}

bool approx_unitary(const Matrix& u, double tolerance) {
  return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm() <= tolerance;
}

}  // namespace

int total_charge(const AbelianChargesBackend& b, long long index, int n, int d) {
  int c = 0;
  long long rem = index;
  for (int k = 0; k < n; ++k) {
    c += b.charges[static_cast<size_t>(rem % d)];
    rem /= d;
  }
  return c;
}

SymmetrySpec SymmetrySpec::finite_group(int d, std::vector<Matrix> elements) {
  if (d < 2) throw DomainError("local dimension must be at least 2");
  if (elements.empty()) throw DomainError("finite group backend needs at least one element");
  for (const Matrix& u : elements) {
    if (u.rows() != d || u.cols() != d)
      throw DomainError("group element dimension does not match local dimension");
    if (!approx_unitary(u, tol().gauge * std::sqrt(static_cast<double>(d))))
      throw DomainError("group element is not unitary within 1e-10");
  }
  auto find_in = [&](const Matrix& m) {
    for (const Matrix& u : elements)
      if ((u - m).norm() <= tol().gauge * std::sqrt(static_cast<double>(d))) return true;
    return false;
  };
  if (!find_in(Matrix::Identity(d, d)))
    throw DomainError("finite group backend must contain the identity");
  for (const Matrix& u : elements) {
    if (!find_in(u.adjoint())) throw DomainError("finite group list is not closed under inverse");
    for (const Matrix& v : elements)
      if (!find_in(u * v)) throw DomainError("finite group list is not closed under product");
  }
  SymmetrySpec s;
  s.d_ = d;
  s.backend_ = FiniteGroupBackend{std::move(elements)};
  return s;
}

SymmetrySpec SymmetrySpec::abelian(std::vector<int> charges) {
  if (charges.size() < 2) throw DomainError("charge backend needs at least two charges");
  SymmetrySpec s;
  s.d_ = static_cast<int>(charges.size());
  s.backend_ = AbelianChargesBackend{std::move(charges)};
  return s;
}

SymmetrySpec SymmetrySpec::lie(int d, std::vector<Matrix> generators) {
  if (d < 2) throw DomainError("local dimension must be at least 2");
  if (generators.empty()) throw DomainError("generator backend needs at least one generator");
  for (const Matrix& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw DomainError("generator dimension does not match local dimension");
    if ((g - g.adjoint()).norm() > tol().gauge * std::max(1.0, g.norm()))
      throw DomainError("generators must be hermitian");
  }
  SymmetrySpec s;
  s.d_ = d;
  s.backend_ = LieGeneratorsBackend{std::move(generators)};
  return s;
}

SymmetrySpec SymmetrySpec::trivial(int d) {
  return finite_group(d, {Matrix::Identity(d, d)});
}

namespace {

Matrix average_finite(const FiniteGroupBackend& b, const Matrix& a, int n) {
  Matrix acc = Matrix::Zero(a.rows(), a.cols());
  for (const Matrix& u : b.elements) {
    Matrix un = tensor_power(u, n);
    acc += un * a * un.adjoint();
  }
  return acc / static_cast<double>(b.elements.size());
}

Matrix average_abelian(const AbelianChargesBackend& b, const Matrix& a, int n, int d) {
  const long long D = a.rows();
  std::vector<int> q(static_cast<size_t>(D));
  for (long long i = 0; i < D; ++i) q[static_cast<size_t>(i)] = total_charge(b, i, n, d);
  Matrix out = Matrix::Zero(D, D);
  for (long long j = 0; j < D; ++j)
    for (long long i = 0; i < D; ++i)
      if (q[static_cast<size_t>(i)] == q[static_cast<size_t>(j)]) out(i, j) = a(i, j);
  return out;
}

std::vector<Matrix> lie_total_generators(const LieGeneratorsBackend& b, int n, int d) {
  std::vector<Matrix> xt;
  const Interval w{1, n};
  for (const Matrix& g : b.generators) {
    const long long D = pow_ll(d, n);
    Matrix acc = Matrix::Zero(D, D);
    for (int s = 1; s <= n; ++s) acc += embed(g, {s}, w, d);
    xt.push_back(std::move(acc));
  }
  return xt;
}

Matrix lie_delta_apply(const std::vector<Matrix>& xtot, const Matrix& y) {
  Matrix out = Matrix::Zero(y.rows(), y.cols());
  for (const Matrix& x : xtot) {
    Matrix c = x * y - y * x;
    out.noalias() += x * c - c * x;
  }
  return out;
}

// Projection onto the joint commutant of the summed generators: the
// component of `a` in the range of the commutator map is removed by
// solving the normal equations with conjugate gradients (the map has
// few distinct eigenvalues, so convergence is fast).
Matrix average_lie(const std::vector<Matrix>& xtot, const Matrix& a) {
  Matrix rhs = lie_delta_apply(xtot, a);
  const double scale = std::max(1.0, a.norm());
  if (rhs.norm() <= 1e-14 * scale) return a;

  Matrix y = Matrix::Zero(a.rows(), a.cols());
  Matrix resid = rhs;
  Matrix p = rhs;
  double rs = resid.squaredNorm();
  const double target = 1e-14 * scale;
  const int maxit = 800;
  for (int it = 0; it < maxit && std::sqrt(rs) > target; ++it) {
    Matrix ap = lie_delta_apply(xtot, p);
    const double pap = (p.conjugate().cwiseProduct(ap)).sum().real();
    if (pap <= 0.0) break;
    const double alpha = rs / pap;
    y.noalias() += alpha * p;
    resid.noalias() -= alpha * ap;
    const double rs_new = resid.squaredNorm();
    p = resid + (rs_new / rs) * p;
    rs = rs_new;
  }
  Matrix out = a - y;
  double defect = 0.0;
  for (const Matrix& x : xtot) defect = std::max(defect, (x * out - out * x).norm());
  if (defect > 1e-10 * scale * std::max(1.0, xtot.empty() ? 1.0 : xtot.front().norm()))
    throw ModelError("gauge average did not reach the commutant (defect " +
                     format_double(defect) + ")");
  return out;
}

}  // namespace

Matrix gauge_average(const Matrix& a, const SymmetrySpec& spec, int n) {
  if (a.rows() != a.cols()) throw DomainError("gauge_average: operator must be square");
  if (a.rows() != pow_ll(spec.d(), n))
    throw DomainError("gauge_average: dimension does not match d^n");
  if (const auto* fg = std::get_if<FiniteGroupBackend>(&spec.backend()))
    return average_finite(*fg, a, n);
  if (const auto* ab = std::get_if<AbelianChargesBackend>(&spec.backend()))
    return average_abelian(*ab, a, n, spec.d());
  const auto& lie = std::get<LieGeneratorsBackend>(spec.backend());
  return average_lie(lie_total_generators(lie, n, spec.d()), a);
}

HermitianOp gauge_average(const HermitianOp& a, const SymmetrySpec& spec, int n) {
  return HermitianOp::trusted(gauge_average(a.mat(), spec, n));
}

BlockDecomposition::BlockDecomposition(int n, int d, std::vector<Block> blocks, Matrix basis)
    : n_(n), d_(d), dim_(basis.rows()), blocks_(std::move(blocks)), basis_(std::move(basis)) {
  finish_init();
}

BlockDecomposition::BlockDecomposition(int n, int d, std::vector<Block> blocks,
                                       std::vector<long long> perm)
    : n_(n), d_(d), dim_(static_cast<long long>(perm.size())), blocks_(std::move(blocks)),
      perm_(std::move(perm)) {
  finish_init();
}

void BlockDecomposition::finish_init() {
  offsets_.resize(blocks_.size());
  long long off = 0;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    offsets_[i] = off;
    off += static_cast<long long>(blocks_[i].mult) * blocks_[i].irrep_dim;
  }
  if (off != dim_) throw DecompositionError("component spans do not fill the space");
}

Matrix BlockDecomposition::basis_matrix() const {
  if (perm_.empty()) return basis_;
  Matrix b = Matrix::Zero(dim_, dim_);
  for (long long col = 0; col < dim_; ++col) b(perm_[static_cast<size_t>(col)], col) = 1.0;
  return b;
}

int BlockDecomposition::max_irrep_dim() const {
  int m = 1;
  for (const Block& b : blocks_) m = std::max(m, b.irrep_dim);
  return m;
}

long long BlockDecomposition::fixed_algebra_dim() const {
  long long s = 0;
  for (const Block& b : blocks_) s += static_cast<long long>(b.mult) * b.mult;
  return s;
}

Matrix BlockDecomposition::to_block_basis(const Matrix& a) const {
  if (perm_.empty()) return basis_.adjoint() * a * basis_;
  Matrix out(dim_, dim_);
  for (long long c = 0; c < dim_; ++c)
    for (long long r = 0; r < dim_; ++r)
      out(r, c) = a(perm_[static_cast<size_t>(r)], perm_[static_cast<size_t>(c)]);
  return out;
}
Matrix BlockDecomposition::from_block_basis(const Matrix& a) const {
  if (perm_.empty()) return basis_ * a * basis_.adjoint();
  Matrix out(dim_, dim_);
  for (long long c = 0; c < dim_; ++c)
    for (long long r = 0; r < dim_; ++r)
      out(perm_[static_cast<size_t>(r)], perm_[static_cast<size_t>(c)]) = a(r, c);
  return out;
}

std::vector<Matrix> BlockDecomposition::algebra_compress(const Matrix& a_field) const {
  Matrix ab;
  if (perm_.empty()) ab = to_block_basis(a_field);
  auto at = [&](long long r, long long c) -> Cplx {
    return perm_.empty() ? ab(r, c)
                         : a_field(perm_[static_cast<size_t>(r)], perm_[static_cast<size_t>(c)]);
  };
  std::vector<Matrix> parts;
  parts.reserve(blocks_.size());
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const int m = blocks_[i].mult, dd = blocks_[i].irrep_dim;
    const long long off = offsets_[i];
    Matrix part = Matrix::Zero(m, m);
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be) {
        Cplx acc(0.0, 0.0);
        for (int k = 0; k < dd; ++k)
          acc += at(off + static_cast<long long>(al) * dd + k,
                    off + static_cast<long long>(be) * dd + k);
        part(al, be) = acc / static_cast<double>(dd);
      }
    parts.push_back(std::move(part));
  }
  return parts;
}

Matrix BlockDecomposition::algebra_expand(const std::vector<Matrix>& parts) const {
  Matrix ab = Matrix::Zero(dim_, dim_);
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const int m = blocks_[i].mult, dd = blocks_[i].irrep_dim;
    const long long off = offsets_[i];
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be)
        for (int k = 0; k < dd; ++k)
          ab(off + static_cast<long long>(al) * dd + k,
             off + static_cast<long long>(be) * dd + k) = parts[i](al, be);
  }
  return from_block_basis(ab);
}

double BlockDecomposition::algebra_pattern_residual(const Matrix& a_field) const {
  // The fixed-point pattern map is a Hilbert-Schmidt-orthogonal
  // projection, so the residual mass is Pythagorean.
  const std::vector<Matrix> parts = algebra_compress(a_field);
  double projected = 0.0;
  for (size_t i = 0; i < blocks_.size(); ++i)
    projected += blocks_[i].irrep_dim * parts[i].squaredNorm();
  const double total = a_field.squaredNorm();
  return std::sqrt(std::max(0.0, total - projected)) / std::max(1.0, std::sqrt(total));
}

double BlockDecomposition::commutant_pattern_residual(const Matrix& a_field) const {
  Matrix ab;
  if (perm_.empty()) ab = to_block_basis(a_field);
  auto at = [&](long long r, long long c) -> Cplx {
    return perm_.empty() ? ab(r, c)
                         : a_field(perm_[static_cast<size_t>(r)], perm_[static_cast<size_t>(c)]);
  };
  double projected = 0.0;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const int m = blocks_[i].mult, dd = blocks_[i].irrep_dim;
    const long long off = offsets_[i];
    Matrix inner = Matrix::Zero(dd, dd);
    for (int k = 0; k < dd; ++k)
      for (int l = 0; l < dd; ++l) {
        Cplx acc(0.0, 0.0);
        for (int al = 0; al < m; ++al)
          acc += at(off + static_cast<long long>(al) * dd + k,
                    off + static_cast<long long>(al) * dd + l);
        inner(k, l) = acc / static_cast<double>(m);
      }
    projected += m * inner.squaredNorm();
  }
  const double total = a_field.squaredNorm();
  return std::sqrt(std::max(0.0, total - projected)) / std::max(1.0, std::sqrt(total));
}

double BlockDecomposition::fixed_trace(const Matrix& a_field) const {
  Matrix ab;
  if (perm_.empty()) ab = to_block_basis(a_field);
  auto at = [&](long long r, long long c) -> Cplx {
    return perm_.empty() ? ab(r, c)
                         : a_field(perm_[static_cast<size_t>(r)], perm_[static_cast<size_t>(c)]);
  };
  double s = 0.0;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const long long off = offsets_[i];
    const int span = block_span(static_cast<int>(i));
    Cplx tr(0.0, 0.0);
    for (int k = 0; k < span; ++k) tr += at(off + k, off + k);
    s += tr.real() / blocks_[i].irrep_dim;
  }
  return s;
}

std::vector<Matrix> BlockDecomposition::restrict_density(const Matrix& density_field) const {
  Matrix ab;
  if (perm_.empty()) ab = to_block_basis(density_field);
  auto at = [&](long long r, long long c) -> Cplx {
    return perm_.empty() ? ab(r, c)
                         : density_field(perm_[static_cast<size_t>(r)],
                                         perm_[static_cast<size_t>(c)]);
  };
  std::vector<Matrix> parts;
  parts.reserve(blocks_.size());
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const int m = blocks_[i].mult, dd = blocks_[i].irrep_dim;
    const long long off = offsets_[i];
    Matrix part = Matrix::Zero(m, m);
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be) {
        Cplx acc(0.0, 0.0);
        for (int k = 0; k < dd; ++k)
          acc += at(off + static_cast<long long>(al) * dd + k,
                    off + static_cast<long long>(be) * dd + k);
        part(al, be) = acc;
      }
    part = 0.5 * (part + part.adjoint().eval());
    parts.push_back(std::move(part));
  }
  return parts;
}

Matrix BlockDecomposition::conditional_expectation(const Matrix& a_field) const {
  return algebra_expand(algebra_compress(a_field));
}

std::vector<Matrix> BlockDecomposition::nu_blocks() const {
  const double denom = static_cast<double>(pow_ll(d_, n_));
  std::vector<Matrix> parts;
  parts.reserve(blocks_.size());
  for (const Block& b : blocks_)
    parts.push_back((static_cast<double>(b.irrep_dim) / denom) * Matrix::Identity(b.mult, b.mult));
  return parts;
}

namespace {

BlockDecompositionPtr decompose_abelian(const AbelianChargesBackend& b, int n, int d) {
  const long long D = pow_ll(d, n);
  check_capacity(D, "decompose");
  std::vector<long long> order(static_cast<size_t>(D));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> q(static_cast<size_t>(D));
  for (long long i = 0; i < D; ++i) q[static_cast<size_t>(i)] = total_charge(b, i, n, d);
  std::stable_sort(order.begin(), order.end(),
                   [&](long long x, long long y) { return q[static_cast<size_t>(x)] < q[static_cast<size_t>(y)]; });

  std::vector<Block> blocks;
  long long k = 0;
  while (k < D) {
    long long start = k;
    const int charge = q[static_cast<size_t>(order[static_cast<size_t>(k)])];
    while (k < D && q[static_cast<size_t>(order[static_cast<size_t>(k)])] == charge) ++k;
    blocks.push_back(Block{static_cast<int>(k - start), 1});
  }
  return std::make_shared<BlockDecomposition>(n, d, std::move(blocks), std::move(order));
}

struct EigenCluster {
  double value = 0.0;
  Matrix q;  // D x g orthonormal columns
  int g() const { return static_cast<int>(q.cols()); }
};

std::vector<EigenCluster> cluster_spectrum(const Matrix& b) {
  EigSys es = eig_hermitian(b);
  std::vector<EigenCluster> out;
  const Eigen::Index D = es.values.size();
  Eigen::Index k = 0;
  while (k < D) {
    Eigen::Index start = k;
    while (k + 1 < D && es.values[k + 1] - es.values[k] <= tol().cluster) ++k;
    ++k;
    EigenCluster c;
    c.value = es.values.segment(start, k - start).mean();
    c.q = es.vectors.middleCols(start, k - start);
    out.push_back(std::move(c));
  }
  return out;
}

Matrix unitary_factor(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double smallest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
}

struct RandomizedAttemptFailure {};

BlockDecompositionPtr decompose_randomized_attempt(const SymmetrySpec& spec, int n,
                                                   std::mt19937_64& rng) {
  const int d = spec.d();
  const long long D = pow_ll(d, n);
  check_capacity(D, "decompose");

  auto averaged_probe = [&]() {
    return gauge_average(random_hermitian(static_cast<int>(D), rng).mat(), spec, n);
  };

  Matrix b1 = averaged_probe();
  Matrix b2 = averaged_probe();

  std::vector<EigenCluster> clusters = cluster_spectrum(b1);
  const int M = static_cast<int>(clusters.size());

  // Link eigenspaces through the second probe; exact averaging makes
  // cross-component matrix elements vanish, so any visible overlap
  // means "same component".
  const double link_tol = 1e-8 * std::max(1.0, b2.norm());
  std::vector<int> parent(static_cast<size_t>(M));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  std::vector<std::vector<double>> link(static_cast<size_t>(M), std::vector<double>(static_cast<size_t>(M), 0.0));
  for (int a = 0; a < M; ++a)
    for (int c = a + 1; c < M; ++c) {
      const double w = (clusters[static_cast<size_t>(a)].q.adjoint() * b2 * clusters[static_cast<size_t>(c)].q).norm();
      link[static_cast<size_t>(a)][static_cast<size_t>(c)] = w;
      link[static_cast<size_t>(c)][static_cast<size_t>(a)] = w;
      if (w > link_tol) {
        int ra = find(a), rc = find(c);
        if (ra != rc) parent[static_cast<size_t>(ra)] = rc;
      }
    }

  std::vector<std::vector<int>> comps;
  {
    std::vector<int> root_of(static_cast<size_t>(M), -1);
    for (int a = 0; a < M; ++a) {
      int r = find(a);
      if (root_of[static_cast<size_t>(r)] < 0) {
        root_of[static_cast<size_t>(r)] = static_cast<int>(comps.size());
        comps.emplace_back();
      }
      comps[static_cast<size_t>(root_of[static_cast<size_t>(r)])].push_back(a);
    }
  }

  struct ComponentBasis {
    int mult = 0;
    int irrep_dim = 0;
    double probe_trace = 0.0;
    std::vector<Matrix> aligned;  // per eigenspace, D x irrep_dim
  };
  std::vector<ComponentBasis> built;

  for (const std::vector<int>& comp : comps) {
    const int g0 = clusters[static_cast<size_t>(comp.front())].g();
    for (int a : comp)
      if (clusters[static_cast<size_t>(a)].g() != g0) throw RandomizedAttemptFailure{};

    ComponentBasis cb;
    cb.mult = static_cast<int>(comp.size());
    cb.irrep_dim = g0;
    for (int a : comp)
      cb.probe_trace += clusters[static_cast<size_t>(a)].value * g0;
    cb.aligned.resize(comp.size());

    // Prim-style alignment: grow from the lowest eigenvalue node along
    // the strongest available connector.
    std::vector<bool> done(comp.size(), false);
    cb.aligned[0] = clusters[static_cast<size_t>(comp[0])].q;
    done[0] = true;
    for (int step = 1; step < static_cast<int>(comp.size()); ++step) {
      int best_p = -1, best_c = -1;
      double best_w = -1.0;
      for (size_t p = 0; p < comp.size(); ++p) {
        if (!done[p]) continue;
        for (size_t c = 0; c < comp.size(); ++c) {
          if (done[c]) continue;
          const double w = link[static_cast<size_t>(comp[p])][static_cast<size_t>(comp[c])];
          if (w > best_w) {
            best_w = w;
            best_p = static_cast<int>(p);
            best_c = static_cast<int>(c);
          }
        }
      }
      if (best_p < 0 || best_w <= link_tol) throw RandomizedAttemptFailure{};
      const Matrix connector =
          cb.aligned[static_cast<size_t>(best_p)].adjoint() * b2 * clusters[static_cast<size_t>(comp[static_cast<size_t>(best_c)])].q;
      if (smallest_singular_value(connector) < 1e-9 * std::max(1.0, b2.norm()))
        throw RandomizedAttemptFailure{};
      cb.aligned[static_cast<size_t>(best_c)] =
          clusters[static_cast<size_t>(comp[static_cast<size_t>(best_c)])].q * unitary_factor(connector).adjoint();
      done[static_cast<size_t>(best_c)] = true;
    }
    built.push_back(std::move(cb));
  }

  std::stable_sort(built.begin(), built.end(), [](const ComponentBasis& x, const ComponentBasis& y) {
    if (x.irrep_dim != y.irrep_dim) return x.irrep_dim < y.irrep_dim;
    return x.probe_trace < y.probe_trace;
  });

  std::vector<Block> blocks;
  Matrix basis(D, D);
  long long col = 0;
  for (const ComponentBasis& cb : built) {
    blocks.push_back(Block{cb.mult, cb.irrep_dim});
    for (const Matrix& q : cb.aligned) {
      basis.middleCols(col, cb.irrep_dim) = q;
      col += cb.irrep_dim;
    }
  }
  if (col != D) throw RandomizedAttemptFailure{};

  long long span = 0;
  for (const Block& b : blocks) span += static_cast<long long>(b.mult) * b.irrep_dim;
  if (span != D) throw RandomizedAttemptFailure{};

  if ((basis.adjoint() * basis - Matrix::Identity(D, D)).norm() > 1e-10 * std::sqrt(static_cast<double>(D)))
    throw RandomizedAttemptFailure{};

  auto dec = std::make_shared<BlockDecomposition>(n, d, std::move(blocks), std::move(basis));

  // Confirmation: a fresh averaged probe must fit the fixed-point
  // pattern, and the action itself must fit the commutant pattern.
  Matrix b3 = averaged_probe();
  if (dec->algebra_pattern_residual(b3) > 1e-8) throw RandomizedAttemptFailure{};

  if (const auto* fg = std::get_if<FiniteGroupBackend>(&spec.backend())) {
    for (const Matrix& u : fg->elements) {
      if (dec->commutant_pattern_residual(tensor_power(u, n)) > 1e-8)
        throw RandomizedAttemptFailure{};
    }
  } else if (const auto* lg = std::get_if<LieGeneratorsBackend>(&spec.backend())) {
    for (const Matrix& x : lie_total_generators(*lg, n, d)) {
      if (dec->commutant_pattern_residual(x) > 1e-8) throw RandomizedAttemptFailure{};
    }
  }
  return dec;
}

}  // namespace

BlockDecompositionPtr decompose(const SymmetrySpec& spec, int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("decompose: chain length must be positive");
  if (const auto* ab = std::get_if<AbelianChargesBackend>(&spec.backend()))
    return decompose_abelian(*ab, n, spec.d());

  const int max_attempts = 5;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    try {
      return decompose_randomized_attempt(spec, n, rng);
    } catch (const RandomizedAttemptFailure&) {
      continue;
    }
  }
  throw DecompositionError("block decomposition did not stabilize after " +
                           std::to_string(max_attempts) + " probe attempts");
}

std::vector<std::pair<int, double>> max_irrep_dim_series(const SymmetrySpec& spec, int n_lo,
                                                         int n_hi, std::uint64_t seed) {
  std::vector<std::pair<int, double>> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    auto dec = decompose(spec, n, mix_seed(seed, static_cast<std::uint64_t>(n)));
    out.emplace_back(n, std::log(static_cast<double>(dec->max_irrep_dim())) / n);
  }
  return out;
}

bool is_central_generator(const Matrix& h, const SymmetrySpec& spec) {
  if (h.rows() != spec.d() || h.cols() != spec.d())
    throw DomainError("is_central_generator: generator dimension does not match the site");
  const double scale = std::max(1.0, h.norm());
  if ((gauge_average(h, spec, 1) - h).norm() > tol().gauge * scale) return false;
  const auto dec = decompose(spec, 1);
  for (const Matrix& part : dec->algebra_compress(h)) {
    const int m = static_cast<int>(part.rows());
    const Cplx mean = part.trace() / static_cast<double>(m);
    if ((part - mean * Matrix::Identity(m, m)).norm() > tol().gauge * scale) return false;
  }
  return true;
}

}  // namespace gaugelab
