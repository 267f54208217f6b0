#pragma once

// Classical reference values the tests pin the library against:
// binomial sector counts, transfer-matrix partition sums, discrete
// entropies, and a standalone replica of the subset-search rule for
// commuting pairs. Nothing here includes library headers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace oracles {

inline long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// Sector dimensions of n sites with per-site charges (+1, -1), keyed
// by descending total charge n, n-2, ..., -n.
inline std::vector<long long> charge_sector_dims(int n) {
  std::vector<long long> out;
  for (int k = 0; k <= n; ++k) out.push_back(binom_ll(n, k));
  return out;
}

// Isotypic blocks of the n-fold fundamental SU(2) tower as
// (multiplicity, commutant dimension) pairs: the spin n/2 - k
// component carries multiplicity C(n,k) - C(n,k-1) and acts through a
// factor of dimension n - 2k + 1.
inline std::vector<std::pair<long long, int>> su2_blocks(int n) {
  std::vector<std::pair<long long, int>> out;
  for (int k = 0; 2 * k <= n; ++k) {
    const long long mult = binom_ll(n, k) - binom_ll(n, k - 1);
    if (mult > 0) out.push_back({mult, n - 2 * k + 1});
  }
  return out;
}

// log of the 2x2 transfer-matrix trace power: open chain of n sites
// with energy -(J z z' + mu z) ... the sign convention matches
// exp(-H), H = sum J Z Z + mu Z over classical spins z = +-1.
inline double log_partition_open(int n, double J, double mu) {
  // row/column order: z = +1, -1; t[z][z'] = exp(-J z z' - mu z')
  double t[2][2] = {{std::exp(-(J + mu)), std::exp(+J + mu)},
                    {std::exp(+J - mu), std::exp(-(J - mu))}};
  // weight vector picks up the field of the first site; bond matrices
  // carry the field of their right endpoint.
  double v[2] = {std::exp(-mu), std::exp(+mu)};
  double scale = 0.0;
  for (int s = 1; s < n; ++s) {
    double w[2] = {v[0] * t[0][0] + v[1] * t[1][0], v[0] * t[0][1] + v[1] * t[1][1]};
    const double m = std::max(std::abs(w[0]), std::abs(w[1]));
    v[0] = w[0] / m;
    v[1] = w[1] / m;
    scale += std::log(m);
  }
  return scale + std::log(v[0] + v[1]);
}

inline double log_partition_ring(int n, double J, double mu) {
  double t[2][2] = {{std::exp(-(J + mu)), std::exp(+J + mu)},
                    {std::exp(+J - mu), std::exp(-(J - mu))}};
  double a[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  double scale = 0.0;
  for (int s = 0; s < n; ++s) {
    double b[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) b[i][j] = a[i][0] * t[0][j] + a[i][1] * t[1][j];
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(b[i][j]));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a[i][j] = b[i][j] / m;
    scale += std::log(m);
  }
  return scale + std::log(a[0][0] + a[1][1]);
}

inline double shannon(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

inline double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    s += p[i] * std::log(p[i] / q[i]);
  }
  return s;
}

// Exhaustive minimum of the total reference weight over subsets whose
// null mass reaches 1 - eps. cells.size() <= 20.
inline double min_ref_brute(const std::vector<std::pair<double, double>>& cells, double eps) {
  const size_t m = cells.size();
  double total_psi = 0.0;
  for (const auto& c : cells) total_psi += std::max(0.0, c.first);
  const double need = std::min(1.0 - eps, total_psi);
  const double slack = 1e-12 * std::max(1.0, std::abs(need));
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double ps = 0.0, rs = 0.0;
    for (size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        ps += cells[i].first;
        rs += cells[i].second;
      }
    if (ps >= need - slack) best = std::min(best, rs);
  }
  return best;
}

// ---- replica of the production subset-search rule -----------------
// Identical grouping, Pareto frontier, work caps, and greedy fallback,
// rebuilt over plain (psi, ref) pairs. Keeping the branch thresholds
// and tie-breaks bit-compatible is what makes the cross-check tight
// even past the point where the exact optimum is out of reach.

struct BetaReplica {
  double value = 0.0;
  double lower = 0.0;
  bool exact = false;
};

namespace detail {

constexpr size_t kFrontierCap = 2000000;
constexpr size_t kStepWorkCap = 40000000;

struct CellClass {
  double psi;
  double ref;
  long long count;
};

struct Partial {
  double psi;
  double ref;
};

inline std::vector<CellClass> group_cells(const std::vector<std::pair<double, double>>& cells) {
  double pscale = 0.0, rscale = 0.0;
  for (const auto& c : cells) {
    pscale = std::max(pscale, std::abs(c.first));
    rscale = std::max(rscale, std::abs(c.second));
  }
  const double pq = (pscale > 0.0) ? 1e12 / pscale : 0.0;
  const double rq = (rscale > 0.0) ? 1e12 / rscale : 0.0;
  std::map<std::pair<long long, long long>, CellClass> groups;
  for (const auto& c : cells) {
    const auto key = std::make_pair(static_cast<long long>(std::llround(c.first * pq)),
                                    static_cast<long long>(std::llround(c.second * rq)));
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(key, CellClass{c.first, c.second, 1});
    else
      ++it->second.count;
  }
  std::vector<CellClass> out;
  out.reserve(groups.size());
  for (auto& kv : groups) out.push_back(kv.second);
  return out;
}

inline void prune_frontier(std::vector<Partial>& f) {
  std::sort(f.begin(), f.end(), [](const Partial& x, const Partial& y) {
    if (x.psi != y.psi) return x.psi > y.psi;
    return x.ref < y.ref;
  });
  size_t keep = 0;
  double best_ref = std::numeric_limits<double>::infinity();
  for (const Partial& s : f) {
    if (s.ref < best_ref) {
      f[keep++] = s;
      best_ref = s.ref;
    }
  }
  f.resize(keep);
  std::reverse(f.begin(), f.end());
}

}  // namespace detail

inline BetaReplica beta_replica(const std::vector<std::pair<double, double>>& raw_cells,
                                double eps) {
  using detail::CellClass;
  using detail::Partial;
  const double kInf = std::numeric_limits<double>::infinity();

  std::vector<CellClass> classes = detail::group_cells(raw_cells);

  double base_psi = 0.0, base_ref = 0.0;
  double total_psi = 0.0;
  {
    std::vector<CellClass> kept;
    for (const CellClass& c : classes) {
      total_psi += c.psi * static_cast<double>(c.count);
      if (c.ref <= 0.0) {
        base_psi += c.psi * static_cast<double>(c.count);
      } else if (c.psi > 0.0) {
        kept.push_back(c);
      }
    }
    classes.swap(kept);
  }

  const double need = std::min(1.0 - eps, total_psi);
  const double slack = 1e-12 * std::max(1.0, std::abs(need));

  BetaReplica res;
  if (base_psi >= need - slack) {
    res.value = base_ref;
    res.lower = base_ref;
    res.exact = true;
    return res;
  }

  std::sort(classes.begin(), classes.end(), [](const CellClass& x, const CellClass& y) {
    const double rx = x.psi / x.ref, ry = y.psi / y.ref;
    if (rx != ry) return rx > ry;
    if (x.psi != y.psi) return x.psi > y.psi;
    return x.ref < y.ref;
  });

  std::vector<double> suffix_psi(classes.size() + 1, 0.0);
  for (size_t i = classes.size(); i-- > 0;)
    suffix_psi[i] = suffix_psi[i + 1] + classes[i].psi * static_cast<double>(classes[i].count);

  std::vector<Partial> frontier{{base_psi, base_ref}};
  double best_ref = kInf;
  bool exact = true;

  for (size_t ci = 0; ci < classes.size() && exact; ++ci) {
    const CellClass& c = classes[ci];
    const double after = suffix_psi[ci + 1];
    if (frontier.size() * static_cast<size_t>(c.count + 1) > detail::kStepWorkCap) {
      exact = false;
      break;
    }
    std::vector<Partial> merged = frontier;
    for (const Partial& s : frontier) {
      for (long long j = 1; j <= c.count; ++j) {
        const double ps = s.psi + c.psi * static_cast<double>(j);
        const double rs = s.ref + c.ref * static_cast<double>(j);
        if (rs >= best_ref) break;
        if (ps >= need - slack) {
          best_ref = rs;
          break;
        }
        const double left = (static_cast<double>(c.count - j)) * c.psi + after;
        if (ps + left < need - slack) continue;
        merged.push_back({ps, rs});
      }
    }
    frontier.swap(merged);
    detail::prune_frontier(frontier);
    if (frontier.size() > detail::kFrontierCap) {
      exact = false;
      break;
    }
  }

  if (exact) {
    res.value = best_ref;
    res.lower = best_ref;
    res.exact = true;
    return res;
  }

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
    while (take < c.count &&
           got + c.psi * static_cast<double>(take) + reachable_later < need - slack)
      ++take;
    got += c.psi * static_cast<double>(take);
    val += c.ref * static_cast<double>(take);
  }
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
  res.lower = std::min(lo, val);
  res.exact = false;
  return res;
}

// The n-fold product of a two-outcome distribution as (psi, ref)
// cells with psi == ref: C(n,k) cells of mass p0^{n-k} p1^k.
inline std::vector<std::pair<double, double>> iid_pair_cells(double p0, double p1, int n) {
  std::vector<std::pair<double, double>> cells;
  for (int k = 0; k <= n; ++k) {
    const double mass = std::pow(p0, n - k) * std::pow(p1, k);
    const long long cnt = binom_ll(n, k);
    for (long long c = 0; c < cnt; ++c) cells.push_back({mass, mass});
  }
  return cells;
}

}  // namespace oracles
