#pragma once

#include "gaugelab/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaugelab {

struct SeriesPoint {
  int n = 0;
  double value = 0.0;
};

struct Extrapolation {
  std::string method;
  double estimate = 0.0;
  double uncertainty = 0.0;
};

// A finite-size sequence indexed by volume, with an optional limit
// estimate. Values are per-site quantities unless the label says
// otherwise.
struct ThermoSeries {
  std::string label;
  std::vector<SeriesPoint> points;
  std::optional<Extrapolation> extrapolation;
};

// Appends (n, value); n must exceed the previous index and the value
// must be finite.
void append_point(ThermoSeries& s, int n, double value);

double value_at(const ThermoSeries& s, int n);

// 1/n-model fit through the last three points: the limit of a + b/n is
// estimated from the last pair, the spread against the preceding pair
// is the uncertainty. No-op with fewer than three points.
void attach_richardson(ThermoSeries& s);

}  // namespace gaugelab
