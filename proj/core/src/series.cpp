#include "gaugelab/series.hpp"

#include <cmath>

namespace gaugelab {

void append_point(ThermoSeries& s, int n, double value) {
  if (!s.points.empty() && n <= s.points.back().n)
    throw DomainError("series '" + s.label + "': volume index must increase");
  if (!std::isfinite(value))
    throw DomainError("series '" + s.label + "': non-finite value at n = " + std::to_string(n));
  s.points.push_back(SeriesPoint{n, value});
}

double value_at(const ThermoSeries& s, int n) {
  for (const SeriesPoint& p : s.points)
    if (p.n == n) return p.value;
  throw DomainError("series '" + s.label + "' has no point at n = " + std::to_string(n));
}

namespace {

// Limit of a + b/n through two points.
double pair_limit(const SeriesPoint& p, const SeriesPoint& q) {
  const double np = p.n, nq = q.n;
  return (nq * q.value - np * p.value) / (nq - np);
}

}  // namespace

void attach_richardson(ThermoSeries& s) {
  if (s.points.size() < 3) return;
  const size_t k = s.points.size();
  const double a12 = pair_limit(s.points[k - 3], s.points[k - 2]);
  const double a23 = pair_limit(s.points[k - 2], s.points[k - 1]);
  s.extrapolation = Extrapolation{"one_over_n", a23, std::abs(a23 - a12)};
}

}  // namespace gaugelab
