#include "gaugelab/operator_kernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace gaugelab {

namespace {
std::atomic<int> g_max_dim{1 << 14};
}

int max_dimension() { return g_max_dim.load(); }
void set_max_dimension(int dim) {
  if (dim < 2) throw DomainError("max dimension must be at least 2");
  g_max_dim.store(dim);
}

void check_capacity(long long dim, const std::string& what) {
  if (dim > g_max_dim.load()) {
    throw CapacityError(what + ": dimension " + std::to_string(dim) +
                        " exceeds configured maximum " +
                        std::to_string(g_max_dim.load()));
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

HermitianOp HermitianOp::from(const Matrix& m, double guard) {
  if (m.rows() != m.cols()) throw DomainError("hermitian operator must be square");
  const double scale = std::max(1.0, m.norm());
  const double dev = (m - m.adjoint()).norm();
  if (dev > guard * scale) {
    throw DomainError("matrix is not hermitian: deviation " + format_double(dev) +
                      " exceeds guard " + format_double(guard * scale));
  }
  Matrix sym = 0.5 * (m + m.adjoint());
  return HermitianOp(std::move(sym));
}

HermitianOp HermitianOp::trusted(const Matrix& m) {
  Matrix sym = 0.5 * (m + m.adjoint());
  return HermitianOp(std::move(sym));
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Cplx(0.0, 0.0)) return false;
  return true;
}

EigSys eig_hermitian(const Matrix& m) {
  EigSys out;
  const Eigen::Index n = m.rows();
  if (is_diagonal(m)) {
    // Sort the diagonal ascending; eigenvectors are basis vectors.
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return m(a, a).real() < m(b, b).real();
    });
    out.values.resize(n);
    out.vectors = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      out.values[k] = m(idx[k], idx[k]).real();
      out.vectors(idx[k], k) = 1.0;
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw SingularityError("eigendecomposition failed");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  const long long rows = static_cast<long long>(a.rows()) * b.rows();
  const long long cols = static_cast<long long>(a.cols()) * b.cols();
  check_capacity(std::max(rows, cols), "tensor");
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix tensor_many(const std::vector<Matrix>& factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors.front();
  for (size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

Matrix tensor_power(const Matrix& a, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = tensor(out, a);
  return out;
}

Matrix embed(const Matrix& a, const std::vector<int>& sites, Interval window, int d) {
  const int n = window.length();
  if (n < 1) throw DomainError("embed: empty window");
  for (size_t k = 0; k < sites.size(); ++k) {
    if (!window.contains(sites[k]))
      throw DomainError("embed: site " + std::to_string(sites[k]) + " outside window [" +
                        std::to_string(window.lo) + "," + std::to_string(window.hi) + "]");
    if (k > 0 && sites[k] <= sites[k - 1])
      throw DomainError("embed: support sites must be strictly ascending");
  }
  long long dim = 1;
  for (int k = 0; k < n; ++k) {
    dim *= d;
    check_capacity(dim, "embed");
  }
  long long adim = 1;
  for (size_t k = 0; k < sites.size(); ++k) adim *= d;
  if (a.rows() != adim || a.cols() != adim)
    throw DomainError("embed: operator dimension does not match support size");

  // Strides of each site in the big-endian multi-index.
  std::vector<long long> stride(static_cast<size_t>(n));
  stride[static_cast<size_t>(n - 1)] = 1;
  for (int k = n - 2; k >= 0; --k) stride[static_cast<size_t>(k)] = stride[static_cast<size_t>(k + 1)] * d;

  std::vector<long long> sup_stride, env_stride;
  std::vector<bool> on_support(static_cast<size_t>(n), false);
  for (int s : sites) on_support[static_cast<size_t>(s - window.lo)] = true;
  for (int k = 0; k < n; ++k) {
    if (on_support[static_cast<size_t>(k)])
      sup_stride.push_back(stride[static_cast<size_t>(k)]);
    else
      env_stride.push_back(stride[static_cast<size_t>(k)]);
  }

  const long long sup_dim = adim;
  long long env_dim = dim / adim;

  // Offsets of every support configuration and every environment
  // configuration in the full index.
  std::vector<long long> sup_off(static_cast<size_t>(sup_dim));
  for (long long x = 0; x < sup_dim; ++x) {
    long long rem = x, off = 0;
    for (size_t k = sup_stride.size(); k-- > 0;) {
      off += (rem % d) * sup_stride[k];
      rem /= d;
    }
    sup_off[static_cast<size_t>(x)] = off;
  }
  std::vector<long long> env_off(static_cast<size_t>(env_dim));
  for (long long x = 0; x < env_dim; ++x) {
    long long rem = x, off = 0;
    for (size_t k = env_stride.size(); k-- > 0;) {
      off += (rem % d) * env_stride[k];
      rem /= d;
    }
    env_off[static_cast<size_t>(x)] = off;
  }

  Matrix out = Matrix::Zero(dim, dim);
  for (long long i = 0; i < sup_dim; ++i)
    for (long long j = 0; j < sup_dim; ++j) {
      const Cplx v = a(i, j);
      if (v == Cplx(0.0, 0.0)) continue;
      for (long long e = 0; e < env_dim; ++e)
        out(sup_off[static_cast<size_t>(i)] + env_off[static_cast<size_t>(e)],
            sup_off[static_cast<size_t>(j)] + env_off[static_cast<size_t>(e)]) = v;
    }
  return out;
}

HermitianOp embed(const HermitianOp& a, const std::vector<int>& sites, Interval window, int d) {
  return HermitianOp::trusted(embed(a.mat(), sites, window, d));
}

Matrix partial_trace(const Matrix& a, const std::vector<int>& keep, Interval window, int d) {
  const int n = window.length();
  for (size_t k = 0; k < keep.size(); ++k) {
    if (!window.contains(keep[k])) throw DomainError("partial_trace: kept site outside window");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw DomainError("partial_trace: kept sites must be strictly ascending");
  }
  long long dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  if (a.rows() != dim || a.cols() != dim)
    throw DomainError("partial_trace: operator dimension does not match window");

  std::vector<long long> stride(static_cast<size_t>(n));
  stride[static_cast<size_t>(n - 1)] = 1;
  for (int k = n - 2; k >= 0; --k) stride[static_cast<size_t>(k)] = stride[static_cast<size_t>(k + 1)] * d;

  std::vector<long long> keep_stride, env_stride;
  std::vector<bool> kept(static_cast<size_t>(n), false);
  for (int s : keep) kept[static_cast<size_t>(s - window.lo)] = true;
  for (int k = 0; k < n; ++k) {
    if (kept[static_cast<size_t>(k)])
      keep_stride.push_back(stride[static_cast<size_t>(k)]);
    else
      env_stride.push_back(stride[static_cast<size_t>(k)]);
  }

  long long keep_dim = 1;
  for (size_t k = 0; k < keep_stride.size(); ++k) keep_dim *= d;
  const long long env_dim = dim / keep_dim;

  std::vector<long long> keep_off(static_cast<size_t>(keep_dim));
  for (long long x = 0; x < keep_dim; ++x) {
    long long rem = x, off = 0;
    for (size_t k = keep_stride.size(); k-- > 0;) {
      off += (rem % d) * keep_stride[k];
      rem /= d;
    }
    keep_off[static_cast<size_t>(x)] = off;
  }
  std::vector<long long> env_off(static_cast<size_t>(env_dim));
  for (long long x = 0; x < env_dim; ++x) {
    long long rem = x, off = 0;
    for (size_t k = env_stride.size(); k-- > 0;) {
      off += (rem % d) * env_stride[k];
      rem /= d;
    }
    env_off[static_cast<size_t>(x)] = off;
  }

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  if (is_diagonal(a)) {
    for (long long i = 0; i < keep_dim; ++i) {
      Cplx acc(0.0, 0.0);
      for (long long e = 0; e < env_dim; ++e)
        acc += a(keep_off[static_cast<size_t>(i)] + env_off[static_cast<size_t>(e)],
                 keep_off[static_cast<size_t>(i)] + env_off[static_cast<size_t>(e)]);
      out(i, i) = acc;
    }
    return out;
  }
  for (long long i = 0; i < keep_dim; ++i)
    for (long long j = 0; j < keep_dim; ++j) {
      Cplx acc(0.0, 0.0);
      for (long long e = 0; e < env_dim; ++e)
        acc += a(keep_off[static_cast<size_t>(i)] + env_off[static_cast<size_t>(e)],
                 keep_off[static_cast<size_t>(j)] + env_off[static_cast<size_t>(e)]);
      out(i, j) = acc;
    }
  return out;
}

Matrix apply_spectral(const EigSys& es, const std::function<double(double)>& f) {
  const Eigen::Index n = es.values.size();
  RealVector fv(n);
  for (Eigen::Index k = 0; k < n; ++k) fv[k] = f(es.values[k]);
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

HermitianOp expm(const HermitianOp& a) {
  EigSys es = eig_hermitian(a.mat());
  return HermitianOp::trusted(apply_spectral(es, [](double x) { return std::exp(x); }));
}

HermitianOp logm(const HermitianOp& a) {
  EigSys es = eig_hermitian(a.mat());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values[k] <= tol().spectrum_floor) {
      throw SingularityError("logm: eigenvalue " + format_double(es.values[k]) +
                             " at or below spectrum floor");
    }
  }
  return HermitianOp::trusted(apply_spectral(es, [](double x) { return std::log(x); }));
}

double op_norm(const Matrix& a) {
  if (a.rows() == a.cols() && (a - a.adjoint()).norm() <= 1e-13 * std::max(1.0, a.norm())) {
    EigSys es = eig_hermitian(0.5 * (a + a.adjoint()));
    double m = 0.0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) m = std::max(m, std::abs(es.values[k]));
    return m;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double trace_norm(const Matrix& a) {
  if (a.rows() == a.cols() && (a - a.adjoint()).norm() <= 1e-13 * std::max(1.0, a.norm())) {
    EigSys es = eig_hermitian(0.5 * (a + a.adjoint()));
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) s += std::abs(es.values[k]);
    return s;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  return op_norm(a * b - b * a);
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli_y() {
  Matrix m(2, 2);
  m << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

HermitianOp random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix b(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) b(i, j) = Cplx(gauss(rng), gauss(rng));
  Matrix h = (b + b.adjoint()) / (2.0 * std::sqrt(static_cast<double>(dim)));
  return HermitianOp::trusted(h);
}

Matrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix b(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) b(i, j) = Cplx(gauss(rng), gauss(rng));
  Matrix rho = b * b.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace gaugelab
