#include "gaugelab/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaugelab {

namespace {

constexpr double kUnitGuard = 1e-8;  // accepted drift of a unit trace before rejection

double xlogx(double x) { return x <= tol().spectrum_floor ? 0.0 : x * std::log(x); }

double logsumexp(const RealVector& v) {
  const double m = v.maxCoeff();
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) s += std::exp(v[k] - m);
  return m + std::log(s);
}

RealVector sorted_ascending(RealVector v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// log of a faithful density, reusing its stored spectral form.
Matrix density_log(const FieldDensity& rho) {
  const double floor = tol().spectrum_floor;
  if (rho.spectrum().minCoeff() <= floor)
    throw SingularityError("state is not faithful: smallest eigenvalue " +
                           format_double(rho.spectrum().minCoeff()));
  if (rho.diagonal()) {
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (long long k = 0; k < rho.dim(); ++k) out(k, k) = std::log(rho.mat()(k, k).real());
    return out;
  }
  const Matrix& v = rho.dense_vectors();
  Matrix out = v * rho.spectrum().array().log().matrix().asDiagonal() * v.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

}  // namespace

double generator_shift(const Matrix& h) {
  const HermitianOp hh = HermitianOp::from(h);
  const EigSys es = eig_hermitian(hh.mat());
  const RealVector neg = -es.values;
  return logsumexp(neg) - std::log(static_cast<double>(h.rows()));
}

Matrix normalize_generator(const Matrix& h) {
  return h + generator_shift(h) * Matrix::Identity(h.rows(), h.cols());
}

bool is_normalized_generator(const Matrix& h) { return std::abs(generator_shift(h)) <= 1e-12; }

FieldDensity::FieldDensity(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw DomainError("density must be square");
  if ((m - m.adjoint()).norm() > tol().hermiticity * std::max(1.0, m.norm()))
    throw DomainError("density is not hermitian");
  m_ = 0.5 * (m + m.adjoint());
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kUnitGuard)
    throw DomainError("density trace is " + format_double(tr) + ", expected 1");
  m_ /= tr;
  if (is_diagonal(m_)) {
    diagonal_ = true;
    values_ = sorted_ascending(m_.diagonal().real());
  } else {
    EigSys es = eig_hermitian(m_);
    values_ = std::move(es.values);
    vectors_ = std::move(es.vectors);
  }
  validate();
}

FieldDensity FieldDensity::with_spectrum(Matrix m, RealVector values_ascending, Matrix vectors) {
  FieldDensity out;
  out.m_ = std::move(m);
  out.values_ = std::move(values_ascending);
  out.vectors_ = std::move(vectors);
  out.diagonal_ = out.vectors_.size() == 0;
  const double tr = out.values_.sum();
  if (std::abs(tr - 1.0) > kUnitGuard)
    throw DomainError("density trace is " + format_double(tr) + ", expected 1");
  out.m_ /= tr;
  out.values_ /= tr;
  out.validate();
  return out;
}

void FieldDensity::validate() {
  if (values_.size() != m_.rows()) throw DomainError("spectrum size mismatch");
  if (values_.minCoeff() < -1e-12)
    throw DomainError("density has negative eigenvalue " + format_double(values_.minCoeff()));
}

const Matrix& FieldDensity::dense_vectors() const {
  if (diagonal_) throw DomainError("diagonal density stores no eigenvector matrix");
  return vectors_;
}

AlgebraDensity::AlgebraDensity(BlockDecompositionPtr dec, std::vector<Matrix> blocks)
    : dec_(std::move(dec)), blocks_(std::move(blocks)) {
  if (!dec_) throw DomainError("algebra density needs a decomposition");
  if (blocks_.size() != dec_->blocks().size())
    throw DomainError("algebra density block count mismatch");
  double tr = 0.0;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const int m = dec_->blocks()[i].mult;
    if (blocks_[i].rows() != m || blocks_[i].cols() != m)
      throw DomainError("algebra density block dimension mismatch");
    if ((blocks_[i] - blocks_[i].adjoint()).norm() >
        tol().hermiticity * std::max(1.0, blocks_[i].norm()))
      throw DomainError("algebra density block is not hermitian");
    blocks_[i] = 0.5 * (blocks_[i] + blocks_[i].adjoint().eval());
    tr += blocks_[i].trace().real();
  }
  if (std::abs(tr - 1.0) > kUnitGuard)
    throw DomainError("canonical trace of density is " + format_double(tr) + ", expected 1");
  spectra_.reserve(blocks_.size());
  for (Matrix& b : blocks_) {
    b /= tr;
    spectra_.push_back(eig_hermitian(b));
    if (spectra_.back().values.minCoeff() < -1e-12)
      throw DomainError("algebra density block has negative eigenvalue " +
                        format_double(spectra_.back().values.minCoeff()));
  }
}

AlgebraDensity AlgebraDensity::restricted(const FieldDensity& rho,
                                          const BlockDecompositionPtr& dec) {
  if (!dec) throw DomainError("restricted: missing decomposition");
  if (rho.dim() != dec->dim()) throw DomainError("restricted: dimension mismatch");
  return AlgebraDensity(dec, dec->restrict_density(rho.mat()));
}

double AlgebraDensity::expect(const std::vector<Matrix>& observable_parts) const {
  if (observable_parts.size() != blocks_.size())
    throw DomainError("expect: compressed observable has wrong block count");
  Cplx acc(0.0, 0.0);
  for (size_t i = 0; i < blocks_.size(); ++i)
    acc += (blocks_[i].transpose().cwiseProduct(observable_parts[i])).sum();
  return acc.real();
}

AlgebraDensity nu_state(const BlockDecompositionPtr& dec) {
  if (!dec) throw DomainError("nu_state: missing decomposition");
  return AlgebraDensity(dec, dec->nu_blocks());
}

double entropy(const FieldDensity& rho) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < rho.spectrum().size(); ++k) s -= xlogx(rho.spectrum()[k]);
  return s;
}

double entropy(const AlgebraDensity& rho) {
  double s = 0.0;
  for (size_t i = 0; i < rho.blocks().size(); ++i) {
    const RealVector& v = rho.block_spectrum(i).values;
    for (Eigen::Index k = 0; k < v.size(); ++k) s -= xlogx(v[k]);
  }
  return s;
}

namespace {

// tr(Da log Db) with the mass of Da outside supp(Db) reported.
void cross_term(const Matrix& da, const FieldDensity& b, double& cross, double& off_support) {
  const double floor = tol().spectrum_floor;
  if (b.diagonal()) {
    for (long long k = 0; k < b.dim(); ++k) {
      const double mu = std::max(0.0, b.mat()(k, k).real());
      const double w = std::max(0.0, da(k, k).real());
      if (mu <= floor)
        off_support += w;
      else
        cross += w * std::log(mu);
    }
    return;
  }
  const Matrix& v = b.dense_vectors();
  const Matrix rotated = v.adjoint() * da * v;
  for (Eigen::Index k = 0; k < b.spectrum().size(); ++k) {
    const double mu = b.spectrum()[k];
    const double w = std::max(0.0, rotated(k, k).real());
    if (mu <= floor)
      off_support += w;
    else
      cross += w * std::log(mu);
  }
}

}  // namespace

double relative_entropy(const FieldDensity& psi, const FieldDensity& omega) {
  if (psi.dim() != omega.dim()) throw DomainError("relative_entropy: dimension mismatch");
  double s_psi = 0.0;
  for (Eigen::Index k = 0; k < psi.spectrum().size(); ++k) s_psi += xlogx(psi.spectrum()[k]);
  double cross = 0.0, off = 0.0;
  cross_term(psi.mat(), omega, cross, off);
  if (off > 1e-12) return std::numeric_limits<double>::infinity();
  return s_psi - cross;
}

double relative_entropy(const AlgebraDensity& psi, const AlgebraDensity& omega) {
  if (psi.decomposition().get() != omega.decomposition().get())
    throw DomainError("relative_entropy: densities live in different decompositions");
  const double floor = tol().spectrum_floor;
  double s = 0.0, off = 0.0;
  for (size_t i = 0; i < psi.blocks().size(); ++i) {
    const RealVector& pv = psi.block_spectrum(i).values;
    for (Eigen::Index k = 0; k < pv.size(); ++k) s += xlogx(pv[k]);
    const EigSys& oe = omega.block_spectrum(i);
    const Matrix rotated = oe.vectors.adjoint() * psi.blocks()[i] * oe.vectors;
    for (Eigen::Index k = 0; k < oe.values.size(); ++k) {
      const double mu = oe.values[k];
      const double w = std::max(0.0, rotated(k, k).real());
      if (mu <= floor)
        off += w;
      else
        s -= w * std::log(mu);
    }
  }
  if (off > 1e-12) return std::numeric_limits<double>::infinity();
  return s;
}

double expect(const FieldDensity& rho, const Matrix& observable) {
  if (observable.rows() != rho.dim() || observable.cols() != rho.dim())
    throw DomainError("expect: dimension mismatch");
  return (rho.mat().transpose().cwiseProduct(observable)).sum().real();
}

double trace_distance(const FieldDensity& a, const FieldDensity& b) {
  if (a.dim() != b.dim()) throw DomainError("trace_distance: dimension mismatch");
  return trace_norm(a.mat() - b.mat());
}

double functional_distance(const AlgebraDensity& a, const AlgebraDensity& b) {
  if (a.decomposition().get() != b.decomposition().get())
    throw DomainError("functional_distance: densities live in different decompositions");
  double s = 0.0;
  for (size_t i = 0; i < a.blocks().size(); ++i) s += trace_norm(a.blocks()[i] - b.blocks()[i]);
  return s;
}

FieldDensity maximally_mixed(int n, int d) {
  long long D = 1;
  for (int k = 0; k < n; ++k) D *= d;
  check_capacity(D, "maximally_mixed");
  Matrix m = Matrix::Identity(D, D) / static_cast<double>(D);
  return FieldDensity(m);
}

FieldDensity product_state(const Matrix& h, int n) {
  if (h.rows() != h.cols()) throw DomainError("product_state: generator must be square");
  if (!is_normalized_generator(h))
    throw DomainError("product_state: generator is not normalized (shift " +
                      format_double(generator_shift(h)) + ")");
  const int d = static_cast<int>(h.rows());
  const Matrix site = expm(HermitianOp::from(Matrix(-h))).mat() / static_cast<double>(d);
  return FieldDensity(tensor_power(site, n));
}

FieldDensity restrict_field(const FieldDensity& rho, Interval sub, Interval window, int d) {
  if (!window.contains(sub)) throw DomainError("restrict_field: window must contain the target");
  std::vector<int> keep(static_cast<size_t>(sub.length()));
  for (int k = 0; k < sub.length(); ++k) keep[static_cast<size_t>(k)] = sub.lo + k;
  return FieldDensity(partial_trace(rho.mat(), keep, window, d));
}

GibbsState gibbs_field(const Matrix& hamiltonian) {
  const HermitianOp h = HermitianOp::from(hamiltonian);
  const EigSys es = eig_hermitian(h.mat());
  const RealVector neg = -es.values;
  const double log_z = logsumexp(neg);
  RealVector weights(neg.size());
  for (Eigen::Index k = 0; k < neg.size(); ++k) weights[k] = std::exp(neg[k] - log_z);
  if (is_diagonal(h.mat())) {
    Matrix m = Matrix::Zero(h.dim(), h.dim());
    for (int k = 0; k < h.dim(); ++k) m(k, k) = std::exp(-h.mat()(k, k).real() - log_z);
    return GibbsState{FieldDensity::with_spectrum(std::move(m), sorted_ascending(weights), {}),
                      log_z};
  }
  // Eigenvalues of H ascending means weights descending; flip both.
  Matrix m = es.vectors * weights.asDiagonal() * es.vectors.adjoint();
  m = 0.5 * (m + m.adjoint().eval());
  const Matrix flipped_vectors = es.vectors.rowwise().reverse();
  return GibbsState{
      FieldDensity::with_spectrum(std::move(m), weights.reverse(), flipped_vectors), log_z};
}

GibbsState gibbs_weighted(const FieldDensity& reference, const Matrix& hamiltonian) {
  if (hamiltonian.rows() != reference.dim())
    throw DomainError("gibbs_weighted: dimension mismatch");
  const HermitianOp h = HermitianOp::from(hamiltonian);
  const EigSys es = eig_hermitian(h.mat());
  const Matrix boltzmann = apply_spectral(es, [](double x) { return std::exp(-x); });
  const double scale = std::max(1.0, reference.mat().norm() * boltzmann.norm());
  const double defect = (reference.mat() * boltzmann - boltzmann * reference.mat()).norm();
  if (defect > tol().commutation * scale)
    throw ModelError("reference state and Gibbs factor do not commute (relative defect " +
                     format_double(defect / scale) + ")");
  Matrix m = reference.mat() * boltzmann;
  const double z = m.trace().real();
  if (!(z > 0.0)) throw SingularityError("reference-weighted partition sum is not positive");
  m = 0.5 * (m + m.adjoint().eval()) / z;
  return GibbsState{FieldDensity(m), std::log(z)};
}

PerturbedState perturb_state(const FieldDensity& omega, const Matrix& q) {
  if (q.rows() != omega.dim() || q.cols() != omega.dim())
    throw DomainError("perturb_state: dimension mismatch");
  const HermitianOp qq = HermitianOp::from(q);
  const Matrix generator = qq.mat() - density_log(omega);
  GibbsState g = gibbs_field(generator);
  return PerturbedState{std::move(g.state), g.log_partition};
}

double weak_gibbs_residual(const Interaction& phi, const Matrix& h, Interval lam, int buffer) {
  if (!phi.symmetry())
    throw DomainError("weak_gibbs_residual: interaction carries no symmetry");
  if (buffer < phi.range())
    throw DomainError("weak_gibbs_residual: buffer must cover the interaction range");
  if (lam.length() < 1) throw DomainError("weak_gibbs_residual: empty interval");
  const Interaction phih = phi.perturb(h);
  const Interval window{lam.lo - buffer, lam.hi + buffer};
  const GibbsState proxy = gibbs_field(phih.hamiltonian(window));
  const Matrix w = phi.boundary(lam, window);
  const PerturbedState shifted = perturb_state(proxy.state, Matrix(-w));
  const FieldDensity inner = restrict_field(shifted.state, lam, window, phi.d());
  const GibbsState local = gibbs_field(phih.hamiltonian(chain(lam.length())));
  const BlockDecompositionPtr dec = decompose(*phi.symmetry(), lam.length());
  return functional_distance(AlgebraDensity::restricted(inner, dec),
                             AlgebraDensity::restricted(local.state, dec));
}

}  // namespace gaugelab
