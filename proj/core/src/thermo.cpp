#include "gaugelab/thermo.hpp"

#include <algorithm>
#include <cmath>

namespace gaugelab {

PressureWeight PressureWeight::product_state(Matrix h) {
  PressureWeight w(Kind::ProductState);
  w.h_ = std::move(h);
  return w;
}

PressureWeight PressureWeight::algebra_trace() { return PressureWeight(Kind::AlgebraTrace); }

PressureWeight PressureWeight::full_trace() { return PressureWeight(Kind::FullTrace); }

double log_algebra_trace_exp(const Matrix& hamiltonian, const BlockDecompositionPtr& dec) {
  if (!dec) throw DomainError("log_algebra_trace_exp: missing decomposition");
  const HermitianOp h = HermitianOp::from(hamiltonian);
  const EigSys es = eig_hermitian(h.mat());
  const double shift = es.values.minCoeff();
  const Matrix b = apply_spectral(es, [shift](double x) { return std::exp(-(x - shift)); });
  return -shift + std::log(dec->fixed_trace(b));
}

ThermoSeries pressure_series(const Interaction& phi, const PressureWeight& weight, int n_lo,
                             int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("pressure_series: bad volume range");
  ThermoSeries s;
  switch (weight.kind()) {
    case PressureWeight::Kind::ProductState:
      s.label = "pressure[product]";
      break;
    case PressureWeight::Kind::AlgebraTrace:
      s.label = "pressure[algebra_trace]";
      if (!phi.symmetry() || !phi.gauge_invariant())
        throw DomainError("pressure_series: algebra-trace weighting needs an invariant "
                          "interaction with its symmetry attached");
      break;
    case PressureWeight::Kind::FullTrace:
      s.label = "pressure[full_trace]";
      break;
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    const Matrix h = phi.hamiltonian(chain(n));
    double v = 0.0;
    switch (weight.kind()) {
      case PressureWeight::Kind::ProductState:
        v = gibbs_weighted(product_state(weight.h(), n), h).log_partition;
        break;
      case PressureWeight::Kind::AlgebraTrace:
        v = log_algebra_trace_exp(h, decompose(*phi.symmetry(), n));
        break;
      case PressureWeight::Kind::FullTrace:
        v = gibbs_field(h).log_partition;
        break;
    }
    append_point(s, n, v / n);
  }
  attach_richardson(s);
  return s;
}

ThermoSeries mean_entropy_series(const std::function<AlgebraDensity(int)>& family, int n_lo,
                                 int n_hi, const std::string& label) {
  ThermoSeries s;
  s.label = label;
  for (int n = n_lo; n <= n_hi; ++n) append_point(s, n, entropy(family(n)) / n);
  attach_richardson(s);
  return s;
}

ThermoSeries mean_entropy_series(const std::function<FieldDensity(int)>& family, int n_lo,
                                 int n_hi, const std::string& label) {
  ThermoSeries s;
  s.label = label;
  for (int n = n_lo; n <= n_hi; ++n) append_point(s, n, entropy(family(n)) / n);
  attach_richardson(s);
  return s;
}

FieldDensity buffered_gibbs_proxy(const Interaction& phi, int n, int buffer) {
  if (n < 1) throw DomainError("buffered_gibbs_proxy: empty chain");
  if (buffer < 0) throw DomainError("buffered_gibbs_proxy: negative buffer");
  // Purely single-site interactions factorize across the buffer cut, so
  // the restricted window state is the window-free Gibbs state exactly.
  if (phi.range() == 0 || buffer == 0) return gibbs_field(phi.hamiltonian(chain(n))).state;
  const Interval window{1 - buffer, n + buffer};
  const GibbsState g = gibbs_field(phi.hamiltonian(window));
  return restrict_field(g.state, chain(n), window, phi.d());
}

CandidateFamily gibbs_proxy_candidate(const Interaction& phi, const Matrix& h, int buffer) {
  const Interaction phih = phi.perturb(h);
  return [phih, buffer](int n, const BlockDecompositionPtr& dec) {
    return AlgebraDensity::restricted(buffered_gibbs_proxy(phih, n, buffer), dec);
  };
}

CandidateFamily ring_gibbs_candidate(const Interaction& phi, const Matrix& h, int buffer) {
  if (buffer < 1) throw DomainError("ring_gibbs_candidate: buffer must be positive");
  const Interaction phih = phi.perturb(h);
  return [phih, buffer](int n, const BlockDecompositionPtr& dec) {
    const int m = n + 2 * buffer;
    const GibbsState g = gibbs_field(ring_hamiltonian(phih, m));
    const FieldDensity inner = restrict_field(g.state, chain(n), chain(m), phih.d());
    return AlgebraDensity::restricted(inner, dec);
  };
}

CandidateFamily scaled_gibbs_candidate(const Interaction& phi, const Matrix& h, double c) {
  const Interaction phih = phi.perturb(h);
  return [phih, c](int n, const BlockDecompositionPtr& dec) {
    const Matrix hn = phih.hamiltonian(chain(n));
    return AlgebraDensity::restricted(gibbs_field(Matrix(c * hn)).state, dec);
  };
}

CandidateFamily uniform_candidate() {
  return [](int n, const BlockDecompositionPtr& dec) {
    return AlgebraDensity::restricted(maximally_mixed(n, dec->d()), dec);
  };
}

ThermoSeries variational_defect(const Interaction& phi, const Matrix& h,
                                const CandidateFamily& candidate, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("variational_defect: bad volume range");
  if (!phi.symmetry() || !phi.gauge_invariant())
    throw DomainError("variational_defect: needs an invariant interaction with its symmetry");
  ThermoSeries s;
  s.label = "variational_defect";
  for (int n = n_lo; n <= n_hi; ++n) {
    const Matrix hn = phi.hamiltonian(chain(n));
    const FieldDensity fprod = product_state(h, n);
    const double log_p = gibbs_weighted(fprod, hn).log_partition;
    const BlockDecompositionPtr dec = decompose(*phi.symmetry(), n);
    const AlgebraDensity omega = candidate(n, dec);
    const AlgebraDensity phin = AlgebraDensity::restricted(fprod, dec);
    const double rel = relative_entropy(omega, phin);
    const double energy = omega.expect(dec->algebra_compress(hn));
    append_point(s, n, (-rel - energy - log_p) / n);
  }
  attach_richardson(s);
  return s;
}

EntropyChain entropy_density_chain(const Interaction& phi, const Matrix& h, int n_lo, int n_hi,
                                   int buffer) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("entropy_density_chain: bad volume range");
  if (!phi.symmetry() || !phi.gauge_invariant())
    throw DomainError("entropy_density_chain: needs an invariant interaction with its symmetry");
  const int d = phi.d();
  const double logd = std::log(static_cast<double>(d));
  const Interaction phih = phi.perturb(h);

  EntropyChain out;
  out.algebra_relative.label = "relative_entropy[algebra]";
  out.field_relative.label = "relative_entropy[field]";
  out.proxy_form.label = "entropy_energy_form[proxy]";
  out.field_gibbs_entropy.label = "gibbs_entropy[field]";
  out.algebra_gibbs_entropy.label = "gibbs_entropy[algebra]";
  out.max_gap.label = "max_pairwise_gap";
  out.entropy_gap.label = "gibbs_entropy_gap";

  for (int n = n_lo; n <= n_hi; ++n) {
    const Matrix hn = phi.hamiltonian(chain(n));
    const FieldDensity fprod = product_state(h, n);
    const GibbsState gw = gibbs_weighted(fprod, hn);
    const BlockDecompositionPtr dec = decompose(*phi.symmetry(), n);
    const AlgebraDensity ag = AlgebraDensity::restricted(gw.state, dec);
    const AlgebraDensity ap = AlgebraDensity::restricted(fprod, dec);

    const double s1 = relative_entropy(ag, ap) / n;
    const double s2 = relative_entropy(gw.state, fprod) / n;
    const double s4 = entropy(gw.state) / n;
    const double s5 = entropy(ag) / n;

    const FieldDensity proxy = buffered_gibbs_proxy(phih, n, buffer);
    Matrix hfield = Matrix::Zero(proxy.dim(), proxy.dim());
    for (int j = 1; j <= n; ++j) hfield += embed(h, {j}, chain(n), d);
    const double s3 = -entropy(proxy) / n + expect(proxy, hfield) / n + logd;

    const double gap =
        std::max({std::abs(s1 - s2), std::abs(s1 - s3), std::abs(s2 - s3)});

    append_point(out.algebra_relative, n, s1);
    append_point(out.field_relative, n, s2);
    append_point(out.proxy_form, n, s3);
    append_point(out.field_gibbs_entropy, n, s4);
    append_point(out.algebra_gibbs_entropy, n, s5);
    append_point(out.max_gap, n, gap);
    append_point(out.entropy_gap, n, std::abs(s4 - s5));
  }
  attach_richardson(out.algebra_relative);
  attach_richardson(out.field_relative);
  attach_richardson(out.proxy_form);
  attach_richardson(out.field_gibbs_entropy);
  attach_richardson(out.algebra_gibbs_entropy);
  attach_richardson(out.max_gap);
  attach_richardson(out.entropy_gap);
  return out;
}

double pressure_derivative(const Interaction& phi, const Matrix& h, const Interaction& psi, int n,
                           double step) {
  if (step < 1e-6 || step > 1e-2)
    throw DomainError("pressure_derivative: step outside [1e-6, 1e-2]");
  if (phi.d() != psi.d()) throw DomainError("pressure_derivative: site dimensions differ");
  const FieldDensity fprod = product_state(h, n);
  const auto pressure = [&](double beta) {
    const Interaction moved = combine(phi, scale(psi, beta));
    return gibbs_weighted(fprod, moved.hamiltonian(chain(n))).log_partition / n;
  };
  return (pressure(step) - pressure(-step)) / (2.0 * step);
}

double gibbs_energy_form(const Interaction& phi, const Matrix& h, const Interaction& psi, int n) {
  const GibbsState gw = gibbs_weighted(product_state(h, n), phi.hamiltonian(chain(n)));
  return -expect(gw.state, psi.hamiltonian(chain(n))) / n;
}

}  // namespace gaugelab
