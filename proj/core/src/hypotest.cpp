#include "gaugelab/hypotest.hpp"

#include "gaugelab/operator_kernel.hpp"
#include "gaugelab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <utility>

namespace gaugelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr size_t kFrontierCap = 2000000;
constexpr size_t kStepWorkCap = 40000000;

// One minimal projection of the joint eigenbasis with its null-state
// and reference masses.
struct Cell {
  double psi;
  double ref;
};

struct CellClass {
  double psi;
  double ref;
  long long count;
};

double comm_residual(const Matrix& a, const Matrix& b) {
  if (is_diagonal(a) && is_diagonal(b)) return 0.0;
  const long long dim = a.rows();
  if (is_diagonal(a) || is_diagonal(b)) {
    const Matrix& diag = is_diagonal(a) ? a : b;
    const Matrix& full = is_diagonal(a) ? b : a;
    double s = 0.0;
    for (long long i = 0; i < dim; ++i)
      for (long long j = 0; j < dim; ++j) {
        const double gap = (diag(i, i) - diag(j, j)).real();
        s += gap * gap * std::norm(full(i, j));
      }
    return std::sqrt(s);
  }
  return (a * b - b * a).norm();
}

bool commute_ok(const Matrix& a, const Matrix& b) {
  return comm_residual(a, b) <= tol().gauge * std::max(1.0, a.norm() * b.norm());
}

// Joint spectral cells of a hermitian A and, when given, a second
// commuting hermitian B: eigenvalues of A paired with the eigenvalues
// of B compressed into each (near-)degenerate eigenspace. B == nullptr
// charges every cell a unit reference weight.
void append_joint_cells(const Matrix& a, const Matrix* b, std::vector<Cell>& out) {
  const long long dim = a.rows();
  if (is_diagonal(a) && (b == nullptr || is_diagonal(*b))) {
    for (long long i = 0; i < dim; ++i)
      out.push_back({a(i, i).real(), b == nullptr ? 1.0 : (*b)(i, i).real()});
    return;
  }
  const EigSys ea = eig_hermitian(a);
  if (b == nullptr) {
    for (long long i = 0; i < dim; ++i) out.push_back({ea.values[i], 1.0});
    return;
  }
  const double cluster = tol().gauge * std::max(1.0, ea.values.cwiseAbs().maxCoeff());
  long long i = 0;
  while (i < dim) {
    long long j = i + 1;
    while (j < dim && ea.values[j] - ea.values[j - 1] <= cluster) ++j;
    const long long w = j - i;
    if (w == 1) {
      const auto v = ea.vectors.col(i);
      out.push_back({ea.values[i], (v.adjoint() * (*b) * v)(0, 0).real()});
    } else {
      const Matrix v = ea.vectors.middleCols(i, w);
      Matrix m = v.adjoint() * (*b) * v;
      m = Cplx(0.5, 0.0) * (m + Matrix(m.adjoint()));
      const EigSys eb = eig_hermitian(m);
      for (long long k = 0; k < w; ++k) {
        double apart = 0.0;
        for (long long r = 0; r < w; ++r)
          apart += std::norm(eb.vectors(r, k)) * ea.values[i + r];
        out.push_back({apart, eb.values[k]});
      }
    }
    i = j;
  }
}

std::vector<Cell> field_cells(const FieldDensity& psi, const FieldDensity* ref) {
  if (ref != nullptr) {
    if (ref->dim() != psi.dim())
      throw DomainError("beta_epsilon: state dimensions differ");
    if (!commute_ok(psi.mat(), ref->mat()))
      throw HypothesisError(
          "beta_epsilon_commuting: densities do not commute within 1e-10; "
          "use beta_epsilon_search");
  }
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(psi.dim()));
  append_joint_cells(psi.mat(), ref == nullptr ? nullptr : &ref->mat(), cells);
  return cells;
}

std::vector<Cell> algebra_cells(const AlgebraDensity& psi, const AlgebraDensity* ref) {
  if (ref != nullptr && ref->decomposition() != psi.decomposition())
    throw DomainError("beta_epsilon: states live on different decompositions");
  std::vector<Cell> cells;
  const auto& blocks = psi.blocks();
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (ref != nullptr && !commute_ok(blocks[i], ref->blocks()[i]))
      throw HypothesisError(
          "beta_epsilon_commuting: densities do not commute within 1e-10; "
          "use beta_epsilon_search");
    append_joint_cells(blocks[i], ref == nullptr ? nullptr : &ref->blocks()[i], cells);
  }
  return cells;
}

std::vector<CellClass> group_cells(const std::vector<Cell>& cells) {
  double pscale = 0.0, rscale = 0.0;
  for (const Cell& c : cells) {
    pscale = std::max(pscale, std::abs(c.psi));
    rscale = std::max(rscale, std::abs(c.ref));
  }
  const double pq = (pscale > 0.0) ? 1e12 / pscale : 0.0;
  const double rq = (rscale > 0.0) ? 1e12 / rscale : 0.0;
  std::map<std::pair<long long, long long>, CellClass> groups;
  for (const Cell& c : cells) {
    const auto key = std::make_pair(static_cast<long long>(std::llround(c.psi * pq)),
                                    static_cast<long long>(std::llround(c.ref * rq)));
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(key, CellClass{c.psi, c.ref, 1});
    else
      ++it->second.count;
  }
  std::vector<CellClass> out;
  out.reserve(groups.size());
  for (auto& kv : groups) out.push_back(kv.second);
  return out;
}

struct Partial {
  double psi;
  double ref;
};

// Nondominated staircase: psi ascending, ref strictly ascending.
void prune_frontier(std::vector<Partial>& f) {
  std::sort(f.begin(), f.end(), [](const Partial& x, const Partial& y) {
    if (x.psi != y.psi) return x.psi > y.psi;
    return x.ref < y.ref;
  });
  size_t keep = 0;
  double best_ref = kInf;
  for (const Partial& s : f) {
    if (s.ref < best_ref) {
      f[keep++] = s;
      best_ref = s.ref;
    }
  }
  f.resize(keep);
  std::reverse(f.begin(), f.end());
}

// Exact minimum of the total reference weight of a cell subset whose
// null mass reaches `need`, by Pareto-frontier dynamic programming over
// weight classes. Falls back to a greedy certificate plus the
// fractional relaxation floor when the frontier outgrows its cap.
BetaResult min_ref_over_cells(const std::vector<Cell>& raw_cells, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("beta_epsilon: eps must lie in (0,1)");

  std::vector<CellClass> classes = group_cells(raw_cells);

  double base_psi = 0.0, base_ref = 0.0;
  long long total_cells = 0;
  double total_psi = 0.0;
  {
    std::vector<CellClass> kept;
    for (const CellClass& c : classes) {
      total_cells += c.count;
      total_psi += c.psi * static_cast<double>(c.count);
      if (c.ref <= 0.0) {
        // free mass: always take
        base_psi += c.psi * static_cast<double>(c.count);
      } else if (c.psi > 0.0) {
        kept.push_back(c);
      }
    }
    classes.swap(kept);
  }

  const double need = std::min(1.0 - eps, total_psi);
  const double slack = 1e-12 * std::max(1.0, std::abs(need));
  char desc[160];

  BetaResult res;
  if (base_psi >= need - slack) {
    res.value = base_ref;
    res.psi_mass = base_psi;
    res.lower_bound = base_ref;
    res.exact = true;
    res.description = "null-support cells alone reach the mass floor";
    return res;
  }

  // likelihood-ratio order, deterministic tie-breaks
  std::sort(classes.begin(), classes.end(), [](const CellClass& x, const CellClass& y) {
    const double rx = x.psi / x.ref, ry = y.psi / y.ref;
    if (rx != ry) return rx > ry;
    if (x.psi != y.psi) return x.psi > y.psi;
    return x.ref < y.ref;
  });

  std::vector<double> suffix_psi(classes.size() + 1, 0.0);
  for (size_t i = classes.size(); i-- > 0;)
    suffix_psi[i] =
        suffix_psi[i + 1] + classes[i].psi * static_cast<double>(classes[i].count);

  std::vector<Partial> frontier{{base_psi, base_ref}};
  double best_ref = kInf, best_psi = 0.0;
  bool exact = true;

  for (size_t ci = 0; ci < classes.size() && exact; ++ci) {
    const CellClass& c = classes[ci];
    const double after = suffix_psi[ci + 1];
    if (frontier.size() * static_cast<size_t>(c.count + 1) > kStepWorkCap) {
      exact = false;
      break;
    }
    std::vector<Partial> merged = frontier;
    for (const Partial& s : frontier) {
      for (long long j = 1; j <= c.count; ++j) {
        const double ps = s.psi + c.psi * static_cast<double>(j);
        const double rs = s.ref + c.ref * static_cast<double>(j);
        if (rs >= best_ref) break;  // later j only grow ref
        if (ps >= need - slack) {
          best_ref = rs;
          best_psi = ps;
          break;  // more copies only grow ref
        }
        const double left = (static_cast<double>(c.count - j)) * c.psi + after;
        if (ps + left < need - slack) continue;  // dead end
        merged.push_back({ps, rs});
      }
    }
    frontier.swap(merged);
    prune_frontier(frontier);
    if (frontier.size() > kFrontierCap) {
      exact = false;
      break;
    }
  }

  if (exact) {
    res.value = best_ref;
    res.psi_mass = best_psi;
    res.lower_bound = best_ref;
    res.exact = true;
    std::snprintf(desc, sizeof desc, "knapsack over %zu classes (%lld cells), exact",
                  classes.size(), total_cells);
    res.description = desc;
    return res;
  }

  // Greedy in ratio order with lookahead: within the run of classes
  // actually needed, skip mass that smaller cells can still cover, so
  // the overshoot never exceeds the last weight used.
  double got = base_psi, val = base_ref;
  for (size_t i = 0; i < classes.size(); ++i) {
    const double deficit = need - got;
    if (deficit <= slack) break;
    const CellClass& c = classes[i];
    const double reachable_later = suffix_psi[i + 1];
    long long take;
    if (reachable_later >= deficit - slack) {
      const double must = deficit - reachable_later;
      take = must <= 0.0 ? 0 : static_cast<long long>(std::ceil(must / c.psi - 1e-12));
    } else {
      take = static_cast<long long>(std::ceil((deficit - reachable_later) / c.psi - 1e-12));
    }
    take = std::min(take, c.count);
    // take what is still missing if later classes cannot cover it
    while (take < c.count && got + c.psi * static_cast<double>(take) + reachable_later <
                                 need - slack)
      ++take;
    got += c.psi * static_cast<double>(take);
    val += c.ref * static_cast<double>(take);
  }
  // fractional relaxation floor in the same ratio order
  double lo = base_ref, acc = base_psi;
  for (const CellClass& c : classes) {
    if (acc >= need) break;
    const double room = need - acc;
    const double whole = c.psi * static_cast<double>(c.count);
    if (whole <= room) {
      acc += whole;
      lo += c.ref * static_cast<double>(c.count);
    } else {
      lo += c.ref * (room / c.psi);
      acc = need;
    }
  }

  res.value = val;
  res.psi_mass = got;
  res.lower_bound = std::min(lo, val);
  res.exact = false;
  std::snprintf(desc, sizeof desc,
                "frontier cap hit: greedy certificate over %zu classes, fractional floor",
                classes.size());
  res.description = desc;
  return res;
}

}  // namespace

BetaResult beta_epsilon_commuting(const AlgebraDensity& psi, const AlgebraDensity& ref,
                                  double eps) {
  return min_ref_over_cells(algebra_cells(psi, &ref), eps);
}

BetaResult beta_epsilon_commuting(const AlgebraDensity& psi, double eps) {
  return min_ref_over_cells(algebra_cells(psi, nullptr), eps);
}

BetaResult beta_epsilon_commuting(const FieldDensity& psi, const FieldDensity& ref, double eps) {
  return min_ref_over_cells(field_cells(psi, &ref), eps);
}

BetaResult beta_epsilon_commuting(const FieldDensity& psi, double eps) {
  return min_ref_over_cells(field_cells(psi, nullptr), eps);
}

namespace {

// Feasible prefix candidates in the eigenbasis of a pencil matrix:
// order the joint cells by pencil eigenvalue descending, close off the
// first prefix whose null mass reaches the floor.
struct PencilCell {
  double order;
  double psi;
  double ref;
};

void best_prefix(std::vector<PencilCell>& cells, double need, double slack, double& best,
                 double& best_psi, std::string& how, const char* tag) {
  std::sort(cells.begin(), cells.end(), [](const PencilCell& a, const PencilCell& b) {
    if (a.order != b.order) return a.order > b.order;
    return a.ref < b.ref;
  });
  double ps = 0.0, rs = 0.0;
  for (size_t k = 0; k < cells.size(); ++k) {
    ps += cells[k].psi;
    rs += cells[k].ref;
    if (ps >= need - slack) {
      if (rs < best) {
        best = rs;
        best_psi = ps;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s prefix of %zu cells", tag, k + 1);
        how = buf;
      }
      return;
    }
  }
}

// Dual value of the relaxed test 0 <= q <= 1:
// g(t) = t(1-eps) - sum of positive eigenvalues of (t D_psi - D_ref),
// concave in t; any t >= 0 gives a certified floor.
double relaxed_dual(const std::function<double(double)>& g) {
  double best = g(0.0);
  double t_best = 0.0;
  for (int k = -24; k <= 24; ++k) {
    const double t = std::pow(2.0, 0.5 * k);
    const double v = g(t);
    if (v > best) {
      best = v;
      t_best = t;
    }
  }
  double lo = t_best / std::sqrt(2.0), hi = t_best * std::sqrt(2.0);
  if (t_best == 0.0) {
    lo = 0.0;
    hi = std::pow(2.0, -12.0);
  }
  for (int it = 0; it < 80; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::max(best, g(0.5 * (lo + hi)));
}

struct SearchBlocks {
  std::vector<Matrix> psi;  // density blocks
  std::vector<Matrix> ref;
};

BetaResult search_over_blocks(const SearchBlocks& sb, double eps, int grid) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("beta_epsilon_search: eps must lie in (0,1)");
  if (grid < 2) throw DomainError("beta_epsilon_search: grid needs at least two points");
  const double need = 1.0 - eps;
  const double slack = 1e-12;

  BetaResult res;
  double best = kInf, best_psi = 0.0;
  std::string how = "no feasible prefix";

  // mixture pencil (1-a) D_psi - a D_ref, a in [0,1]
  for (int gi = 0; gi < grid; ++gi) {
    const double a = static_cast<double>(gi) / (grid - 1);
    std::vector<PencilCell> cells;
    for (size_t b = 0; b < sb.psi.size(); ++b) {
      const Matrix pencil = (1.0 - a) * sb.psi[b] - a * sb.ref[b];
      const EigSys es = eig_hermitian(pencil);
      for (long long k = 0; k < pencil.rows(); ++k) {
        const auto v = es.vectors.col(k);
        cells.push_back({es.values[k], (v.adjoint() * sb.psi[b] * v)(0, 0).real(),
                         (v.adjoint() * sb.ref[b] * v)(0, 0).real()});
      }
    }
    char tag[32];
    std::snprintf(tag, sizeof tag, "pencil a=%.3f", a);
    best_prefix(cells, need, slack, best, best_psi, how, tag);
  }

  // log-ratio ordering, usable when both densities are faithful
  std::vector<EigSys> epsi(sb.psi.size()), eref(sb.psi.size());
  bool faithful = true;
  for (size_t b = 0; b < sb.psi.size(); ++b) {
    epsi[b] = eig_hermitian(sb.psi[b]);
    eref[b] = eig_hermitian(sb.ref[b]);
    if (epsi[b].values.minCoeff() <= tol().spectrum_floor ||
        eref[b].values.minCoeff() <= tol().spectrum_floor)
      faithful = false;
  }
  if (faithful) {
    const auto safe_log = [](double x) { return std::log(x); };
    std::vector<PencilCell> cells;
    for (size_t b = 0; b < sb.psi.size(); ++b) {
      const Matrix lr = apply_spectral(epsi[b], safe_log) - apply_spectral(eref[b], safe_log);
      const EigSys es = eig_hermitian(Cplx(0.5, 0.0) * (lr + Matrix(lr.adjoint())));
      for (long long k = 0; k < lr.rows(); ++k) {
        const auto v = es.vectors.col(k);
        cells.push_back({es.values[k], (v.adjoint() * sb.psi[b] * v)(0, 0).real(),
                         (v.adjoint() * sb.ref[b] * v)(0, 0).real()});
      }
    }
    best_prefix(cells, need, slack, best, best_psi, how, "log-ratio");
  }

  const auto dual = [&](double t) {
    double positive = 0.0;
    for (size_t b = 0; b < sb.psi.size(); ++b) {
      const Matrix m = t * sb.psi[b] - sb.ref[b];
      const EigSys es = eig_hermitian(m);
      for (long long k = 0; k < m.rows(); ++k)
        if (es.values[k] > 0.0) positive += es.values[k];
    }
    return t * need - positive;
  };

  res.value = best;
  res.psi_mass = best_psi;
  res.lower_bound = std::min(best, relaxed_dual(dual));
  res.exact = false;
  res.description = how;
  return res;
}

}  // namespace

BetaResult beta_epsilon_search(const FieldDensity& psi, const FieldDensity& ref, double eps,
                               int grid) {
  if (psi.dim() != ref.dim()) throw DomainError("beta_epsilon_search: dimensions differ");
  if (commute_ok(psi.mat(), ref.mat())) {
    BetaResult res = beta_epsilon_commuting(psi, ref, eps);
    res.description += " (commuting route)";
    return res;
  }
  SearchBlocks sb;
  sb.psi.push_back(psi.mat());
  sb.ref.push_back(ref.mat());
  return search_over_blocks(sb, eps, grid);
}

BetaResult beta_epsilon_search(const AlgebraDensity& psi, const AlgebraDensity& ref, double eps,
                               int grid) {
  if (psi.decomposition() != ref.decomposition())
    throw DomainError("beta_epsilon_search: states live on different decompositions");
  bool commuting = true;
  for (size_t b = 0; b < psi.blocks().size() && commuting; ++b)
    commuting = commute_ok(psi.blocks()[b], ref.blocks()[b]);
  if (commuting) {
    BetaResult res = beta_epsilon_commuting(psi, ref, eps);
    res.description += " (commuting route)";
    return res;
  }
  SearchBlocks sb;
  sb.psi = psi.blocks();
  sb.ref = ref.blocks();
  return search_over_blocks(sb, eps, grid);
}

ExponentReport exponent_series(const Interaction& phi, const Matrix& h, double eps, int n_lo,
                               int n_hi, ExponentVariant variant, int buffer) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("exponent_series: bad volume range");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("exponent_series: eps must lie in (0,1)");
  if (!phi.symmetry() || !phi.gauge_invariant())
    throw DomainError("exponent_series: needs an invariant interaction with its symmetry");
  const bool unweighted = variant == ExponentVariant::AlgebraUnweighted ||
                          variant == ExponentVariant::FieldUnweighted;
  if (unweighted && !is_central_generator(h, *phi.symmetry()))
    throw HypothesisError(
        "exponent_series: the unweighted sequences assume a central generator");

  const Interaction phih = phi.perturb(h);
  ExponentReport report;
  report.variant = variant;
  report.eps = eps;
  report.values.label = "beta_value";
  report.exponents.label = "beta_exponent";
  ThermoSeries limit_series;
  limit_series.label = "limit_series";
  report.exact = true;

  for (int n = n_lo; n <= n_hi; ++n) {
    BetaResult b;
    double limit_point = 0.0;
    switch (variant) {
      case ExponentVariant::AlgebraPair: {
        const FieldDensity proxy = buffered_gibbs_proxy(phih, n, buffer);
        const FieldDensity prod = product_state(h, n);
        const auto dec = decompose(*phi.symmetry(), n);
        const AlgebraDensity apsi = AlgebraDensity::restricted(proxy, dec);
        const AlgebraDensity aref = AlgebraDensity::restricted(prod, dec);
        try {
          b = beta_epsilon_commuting(apsi, aref, eps);
        } catch (const HypothesisError&) {
          b = beta_epsilon_search(apsi, aref, eps);
        }
        limit_point = -relative_entropy(apsi, aref) / n;
        break;
      }
      case ExponentVariant::FieldPair: {
        const FieldDensity gibbs = gibbs_field(phi.hamiltonian(chain(n))).state;
        const FieldDensity prod = product_state(h, n);
        try {
          b = beta_epsilon_commuting(gibbs, prod, eps);
        } catch (const HypothesisError&) {
          b = beta_epsilon_search(gibbs, prod, eps);
        }
        limit_point = -relative_entropy(gibbs, prod) / n;
        break;
      }
      case ExponentVariant::AlgebraUnweighted: {
        const FieldDensity proxy = buffered_gibbs_proxy(phih, n, buffer);
        const auto dec = decompose(*phi.symmetry(), n);
        const AlgebraDensity apsi = AlgebraDensity::restricted(proxy, dec);
        b = beta_epsilon_commuting(apsi, eps);
        limit_point = entropy(apsi) / n;
        break;
      }
      case ExponentVariant::FieldUnweighted: {
        const FieldDensity proxy = buffered_gibbs_proxy(phih, n, buffer);
        b = beta_epsilon_commuting(proxy, eps);
        limit_point = entropy(proxy) / n;
        break;
      }
    }
    if (!(b.value > 0.0))
      throw SingularityError("exponent_series: optimal weight vanished; exponent undefined");
    append_point(report.values, n, b.value);
    append_point(report.exponents, n, std::log(b.value) / n);
    append_point(limit_series, n, limit_point);
    report.exact = report.exact && b.exact;
  }

  attach_richardson(limit_series);
  report.target = limit_series.extrapolation ? limit_series.extrapolation->estimate
                                             : limit_series.points.back().value;
  if (unweighted) {
    report.corridor_lo = report.target;
    report.corridor_hi = report.target;
  } else {
    report.corridor_lo = report.target / (1.0 - eps);
    report.corridor_hi = report.target;
  }
  report.margins.reserve(report.exponents.points.size());
  for (const SeriesPoint& p : report.exponents.points) {
    const double below = report.corridor_lo - p.value;
    const double above = p.value - report.corridor_hi;
    report.margins.push_back(std::max({0.0, below, above}));
  }
  return report;
}

AepWindow aep_projection(const AlgebraDensity& psi, const AlgebraDensity& ref, double s,
                         double delta) {
  if (!(delta > 0.0)) throw DomainError("aep_projection: delta must be positive");
  const int n = psi.decomposition()->n();
  const std::vector<Cell> cells = algebra_cells(psi, &ref);

  AepWindow w;
  w.s_center = s;
  const double lo = n * (s - delta), hi = n * (s + delta);
  for (const Cell& c : cells) {
    if (c.psi <= 0.0 || c.ref <= 0.0) continue;  // ratio sits at an endpoint
    const double x = std::log(c.psi / c.ref);
    if (x > lo && x < hi) {
      w.psi_mass += c.psi;
      w.ref_mass += c.ref;
      ++w.cells;
    }
  }
  w.ref_floor = w.psi_mass * std::exp(-hi);
  w.ref_ceiling = w.psi_mass * std::exp(-lo);
  return w;
}

AepWindow aep_projection(const Interaction& phi, const Matrix& h, int n, double delta,
                         int buffer) {
  if (n < 1) throw DomainError("aep_projection: volume must be positive");
  if (!phi.symmetry() || !phi.gauge_invariant())
    throw DomainError("aep_projection: needs an invariant interaction with its symmetry");
  const Interaction phih = phi.perturb(h);

  ThermoSeries rel;
  rel.label = "relative_entropy[field]";
  for (int k = 2; k <= std::max(n, 4); ++k) {
    const FieldDensity proxy = buffered_gibbs_proxy(phih, k, buffer);
    const FieldDensity prod = product_state(h, k);
    append_point(rel, k, relative_entropy(proxy, prod) / k);
  }
  attach_richardson(rel);
  const double s =
      rel.extrapolation ? rel.extrapolation->estimate : rel.points.back().value;

  const FieldDensity proxy = buffered_gibbs_proxy(phih, n, buffer);
  const FieldDensity prod = product_state(h, n);
  const auto dec = decompose(*phi.symmetry(), n);
  return aep_projection(AlgebraDensity::restricted(proxy, dec),
                        AlgebraDensity::restricted(prod, dec), s, delta);
}

LogRatioBound gibbs_log_ratio_bound(const Interaction& phi, const Matrix& h, int n, int buffer) {
  if (n < 1 || buffer < 1) throw DomainError("gibbs_log_ratio_bound: bad window");
  if (!phi.symmetry() || !phi.gauge_invariant())
    throw DomainError("gibbs_log_ratio_bound: needs an invariant interaction with its symmetry");
  const int d = phi.d();
  const Interaction phih = phi.perturb(h);

  const int m = n + 2 * buffer;
  const GibbsState ring = gibbs_field(ring_hamiltonian(phih, m));
  const FieldDensity inner = restrict_field(ring.state, chain(n), chain(m), d);
  const auto dec = decompose(*phi.symmetry(), n);
  const AlgebraDensity omega = AlgebraDensity::restricted(inner, dec);

  const FieldDensity fprod = product_state(h, n);
  const AlgebraDensity weight = AlgebraDensity::restricted(fprod, dec);
  const Matrix hn = phi.hamiltonian(chain(n));
  const double log_p = gibbs_weighted(fprod, hn).log_partition;
  const std::vector<Matrix> hparts = dec->algebra_compress(hn);

  double top = -kInf;
  for (size_t b = 0; b < omega.blocks().size(); ++b) {
    const Matrix& a = omega.blocks()[b];
    const Matrix& f = weight.blocks()[b];
    const long long bd = a.rows();
    Matrix logd(bd, bd);
    if (is_diagonal(a) && is_diagonal(f)) {
      logd = Matrix::Zero(bd, bd);
      for (long long k = 0; k < bd; ++k) {
        const double q = a(k, k).real() / f(k, k).real();
        if (!(q > 0.0))
          throw SingularityError("gibbs_log_ratio_bound: proxy density not faithful");
        logd(k, k) = std::log(q);
      }
    } else {
      const EigSys ef = eig_hermitian(f);
      if (ef.values.minCoeff() <= tol().spectrum_floor)
        throw SingularityError("gibbs_log_ratio_bound: weight density not faithful");
      const Matrix froot =
          apply_spectral(ef, [](double x) { return 1.0 / std::sqrt(x); });
      Matrix q = froot * a * froot;
      q = Cplx(0.5, 0.0) * (q + Matrix(q.adjoint()));
      const EigSys eq = eig_hermitian(q);
      if (eq.values.minCoeff() <= tol().spectrum_floor)
        throw SingularityError("gibbs_log_ratio_bound: proxy density not faithful");
      logd = apply_spectral(eq, [](double x) { return std::log(x); });
    }
    Matrix diff = -hparts[b] - log_p * Matrix::Identity(bd, bd) - logd;
    diff = Cplx(0.5, 0.0) * (diff + Matrix(diff.adjoint()));
    top = std::max(top, eig_hermitian(diff).values.maxCoeff());
  }

  const int r = phi.range();
  const Matrix wn = phi.boundary(chain(n), Interval{1 - r, n + r});
  LogRatioBound out;
  out.max_eigenvalue = top;
  out.bound = 2.0 * op_norm(wn);
  out.margin = top - out.bound;
  return out;
}

}  // namespace gaugelab
