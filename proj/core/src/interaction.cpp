#include "gaugelab/interaction.hpp"

#include <algorithm>
#include <cmath>

namespace gaugelab {

namespace {

long long pow_ll(int d, int n) {
  long long out = 1;
  for (int k = 0; k < n; ++k) out *= d;
  return out;
}

std::vector<int> shifted(const std::vector<int>& offsets, int x) {
  std::vector<int> s(offsets.size());
  for (size_t k = 0; k < offsets.size(); ++k) s[k] = offsets[k] + x;
  return s;
}

bool meets(const std::vector<int>& sites, Interval lam) {
  for (int s : sites)
    if (lam.contains(s)) return true;
  return false;
}

bool inside(const std::vector<int>& sites, Interval lam) {
  for (int s : sites)
    if (!lam.contains(s)) return false;
  return true;
}

}  // namespace

bool commutes_with_action(const Matrix& h, const SymmetrySpec& spec) {
  return (gauge_average(h, spec, 1) - h).norm() <= tol().gauge * std::max(1.0, h.norm());
}

Interaction::Interaction(int d, std::vector<InteractionTerm> terms) : d_(d) {
  init_terms(std::move(terms));
}

Interaction::Interaction(const SymmetrySpec& spec, std::vector<InteractionTerm> terms)
    : d_(spec.d()), spec_(spec) {
  init_terms(std::move(terms));
  for (const InteractionTerm& t : terms_) {
    const int support = static_cast<int>(t.offsets.size());
    if ((gauge_average(t.op, spec, support) - t.op).norm() >
        tol().gauge * std::max(1.0, t.op.norm()))
      throw DomainError("interaction term is not invariant under the symmetry action");
  }
  invariant_ = true;
}

void Interaction::init_terms(std::vector<InteractionTerm> terms) {
  range_ = 0;
  terms_ = std::move(terms);
  if (d_ < 2) throw DomainError("interaction: local dimension must be at least 2");
  for (const InteractionTerm& t : terms_) {
    if (t.offsets.empty()) throw DomainError("interaction term has empty support");
    if (t.offsets.front() != 0)
      throw DomainError("interaction term offsets must start at 0");
    for (size_t k = 1; k < t.offsets.size(); ++k)
      if (t.offsets[k] <= t.offsets[k - 1])
        throw DomainError("interaction term offsets must be strictly ascending");
    const long long dim = pow_ll(d_, static_cast<int>(t.offsets.size()));
    if (t.op.rows() != dim || t.op.cols() != dim)
      throw DomainError("interaction term dimension does not match its support");
    if ((t.op - t.op.adjoint()).norm() > tol().hermiticity * std::max(1.0, t.op.norm()))
      throw DomainError("interaction terms must be hermitian");
    range_ = std::max(range_, t.offsets.back());
  }
  for (size_t i = 0; i < terms_.size(); ++i)
    for (size_t j = i + 1; j < terms_.size(); ++j)
      if (terms_[i].offsets == terms_[j].offsets)
        throw DomainError("duplicate interaction term support");
}

Matrix Interaction::hamiltonian(Interval lam) const { return hamiltonian(lam, lam); }

Matrix Interaction::hamiltonian(Interval lam, Interval window) const {
  if (!window.contains(lam)) throw DomainError("hamiltonian: window must contain the interval");
  const long long D = pow_ll(d_, window.length());
  check_capacity(D, "hamiltonian");
  bool all_diag = true;
  for (const InteractionTerm& t : terms_) all_diag = all_diag && is_diagonal(t.op);
  if (all_diag) {
    // Classical terms: accumulate the diagonal by digit extraction
    // instead of materializing one dense summand per translate.
    const int n = window.length();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(D);
    for (const InteractionTerm& t : terms_) {
      for (int x = lam.lo; x + t.offsets.back() <= lam.hi; ++x) {
        const std::vector<int> sites = shifted(t.offsets, x);
        for (long long i = 0; i < D; ++i) {
          long long sub = 0;
          for (int s : sites) {
            const int pos = s - window.lo;
            long long digit = i;
            for (int k = pos + 1; k < n; ++k) digit /= d_;
            sub = sub * d_ + digit % d_;
          }
          diag[i] += t.op(sub, sub).real();
        }
      }
    }
    Matrix h = Matrix::Zero(D, D);
    for (long long i = 0; i < D; ++i) h(i, i) = diag[i];
    return h;
  }
  Matrix h = Matrix::Zero(D, D);
  for (const InteractionTerm& t : terms_)
    for (int x = lam.lo; x + t.offsets.back() <= lam.hi; ++x)
      h += embed(t.op, shifted(t.offsets, x), window, d_);
  return h;
}

Matrix Interaction::boundary(Interval lam, Interval window) const {
  const Interval widened{lam.lo - range_, lam.hi + range_};
  if (!window.contains(widened))
    throw DomainError("boundary: window must contain the interval widened by the range");
  const long long D = pow_ll(d_, window.length());
  check_capacity(D, "boundary");
  Matrix w = Matrix::Zero(D, D);
  for (const InteractionTerm& t : terms_) {
    for (int x = lam.lo - t.offsets.back(); x <= lam.hi; ++x) {
      const std::vector<int> sites = shifted(t.offsets, x);
      if (meets(sites, lam) && !inside(sites, lam)) w += embed(t.op, sites, window, d_);
    }
  }
  return w;
}

double Interaction::site_sum_norm() const {
  double s = 0.0;
  for (const InteractionTerm& t : terms_)
    s += static_cast<double>(t.offsets.size()) * op_norm(t.op);
  return s;
}

double Interaction::max_boundary_norm() const {
  if (terms_.empty() || range_ == 0) return 0.0;
  double best = 0.0;
  for (int m = 1; m <= 2 * range_ + 1; ++m) {
    const Interval lam{1, m};
    const Interval window{1 - range_, m + range_};
    best = std::max(best, op_norm(boundary(lam, window)));
  }
  return best;
}

double Interaction::locality_norm() const { return site_sum_norm() + max_boundary_norm(); }

double Interaction::per_site_norm() const {
  double s = 0.0;
  for (const InteractionTerm& t : terms_) s += op_norm(t.op);
  return s;
}

Matrix Interaction::mean_energy(int site, Interval window) const {
  if (!window.contains(site)) throw DomainError("mean_energy: site outside window");
  const long long D = pow_ll(d_, window.length());
  check_capacity(D, "mean_energy");
  Matrix a = Matrix::Zero(D, D);
  for (const InteractionTerm& t : terms_) {
    for (int x = site - t.offsets.back(); x <= site; ++x) {
      const std::vector<int> sites = shifted(t.offsets, x);
      if (!inside(sites, window)) continue;
      if (std::find(sites.begin(), sites.end(), site) == sites.end()) continue;
      a += embed(t.op, sites, window, d_) / static_cast<double>(sites.size());
    }
  }
  return a;
}

Interaction Interaction::perturb(const Matrix& single_site) const {
  if (single_site.rows() != d_ || single_site.cols() != d_)
    throw DomainError("perturb: operator must act on one site");
  std::vector<InteractionTerm> out = terms_;
  bool merged = false;
  for (InteractionTerm& t : out) {
    if (t.offsets == std::vector<int>{0}) {
      t.op += single_site;
      merged = true;
      break;
    }
  }
  if (!merged) out.push_back(InteractionTerm{{0}, single_site});
  Interaction result(d_, std::move(out));
  result.spec_ = spec_;
  result.invariant_ = invariant_ && spec_ && commutes_with_action(single_site, *spec_);
  return result;
}

Interaction scale(const Interaction& phi, double c) {
  std::vector<InteractionTerm> out = phi.terms();
  for (InteractionTerm& t : out) t.op *= c;
  Interaction r(phi.d(), std::move(out));
  r.spec_ = phi.spec_;
  r.invariant_ = phi.invariant_;
  return r;
}

Interaction combine(const Interaction& a, const Interaction& b) {
  if (a.d() != b.d()) throw DomainError("combine: site dimensions differ");
  std::vector<InteractionTerm> out = a.terms();
  for (const InteractionTerm& t : b.terms()) {
    bool merged = false;
    for (InteractionTerm& s : out) {
      if (s.offsets == t.offsets) {
        s.op += t.op;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(t);
  }
  Interaction r(a.d(), std::move(out));
  if (a.symmetry() && b.symmetry()) {
    r.spec_ = a.spec_;
    r.invariant_ = a.gauge_invariant() && b.gauge_invariant();
  }
  return r;
}

Matrix ring_hamiltonian(const Interaction& phi, int sites) {
  if (sites < 2) throw DomainError("ring_hamiltonian: need at least two sites");
  if (phi.range() > 1)
    throw DomainError("ring_hamiltonian: only nearest-neighbor interactions close up");
  const int d = phi.d();
  const Interval lam = chain(sites);
  Matrix h = phi.hamiltonian(lam);
  for (const InteractionTerm& t : phi.terms()) {
    if (t.offsets.size() == 1) continue;
    Matrix p = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) p(i * d + j, j * d + i) = Cplx(1.0, 0.0);
    if ((p * t.op * p - t.op).norm() > tol().hermiticity * std::max(1.0, t.op.norm()))
      throw DomainError("ring_hamiltonian: pair coupling must be exchange-symmetric");
    // Seam translate, legs sorted; exchange symmetry makes the order moot.
    h += embed(t.op, {lam.lo, lam.hi}, lam, d);
  }
  return h;
}

Matrix cyclic_shift_unitary(int radius, int d) {
  const int n = 2 * radius + 1;
  const long long D = pow_ll(d, n);
  check_capacity(D, "cyclic_shift_unitary");
  Matrix u = Matrix::Zero(D, D);
  // Index i encodes digits big-endian over sites -radius..radius. The
  // shift moves the content of site s to site s+1 and wraps the last
  // site around, i.e. digit j of the image comes from digit j-1 mod n.
  std::vector<long long> stride(static_cast<size_t>(n));
  stride[static_cast<size_t>(n - 1)] = 1;
  for (int k = n - 2; k >= 0; --k)
    stride[static_cast<size_t>(k)] = stride[static_cast<size_t>(k + 1)] * d;
  for (long long i = 0; i < D; ++i) {
    long long img = 0;
    long long rem = i;
    for (int k = 0; k < n; ++k) {
      const int digit = static_cast<int>(rem / stride[static_cast<size_t>(k)]);
      rem %= stride[static_cast<size_t>(k)];
      const int dest = (k + 1) % n;
      img += digit * stride[static_cast<size_t>(dest)];
    }
    u(img, i) = 1.0;
  }
  return u;
}

DerivationBound cyclic_derivation_bound(const Interaction& phi, int radius) {
  const Matrix u = cyclic_shift_unitary(radius, phi.d());
  const Matrix delta = derivation(phi, u, Interval{-radius, radius});
  return DerivationBound{op_norm(delta), 4.0 * phi.locality_norm()};
}

Matrix derivation(const Interaction& phi, const Matrix& a, Interval a_support) {
  const int R = phi.range();
  const Interval window{a_support.lo - R, a_support.hi + R};
  const long long D = pow_ll(phi.d(), window.length());
  check_capacity(D, "derivation");
  std::vector<int> asites(static_cast<size_t>(a_support.length()));
  for (int k = 0; k < a_support.length(); ++k) asites[static_cast<size_t>(k)] = a_support.lo + k;
  const Matrix big_a = embed(a, asites, window, phi.d());
  Matrix out = Matrix::Zero(D, D);
  for (const InteractionTerm& t : phi.terms()) {
    for (int x = a_support.lo - t.offsets.back(); x <= a_support.hi; ++x) {
      const std::vector<int> sites = shifted(t.offsets, x);
      if (!meets(sites, a_support)) continue;
      const Matrix term = embed(t.op, sites, window, phi.d());
      out += term * big_a - big_a * term;
    }
  }
  return out;
}

}  // namespace gaugelab
