#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gaugelab {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Error taxonomy. Every failure mode surfaces as one of these so the
// driver can map it to a stable exit code.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Centralized tolerances. Exact identities are gated at `exact`,
// finite-difference comparisons at `derivative`; the rest are the
// structural tolerances referenced throughout the library.
struct Tolerances {
  double exact = 1e-9;
  double derivative = 1e-6;
  double hermiticity = 1e-12;
  double cluster = 1e-8;
  double commutation = 1e-8;
  double gauge = 1e-10;
  double spectrum_floor = 1e-14;
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

// Closed integer interval of chain sites. Sites may be non-positive;
// buffered windows such as [1-L, n+L] are represented directly.
struct Interval {
  int lo = 1;
  int hi = 1;

  int length() const { return hi - lo + 1; }
  bool contains(int s) const { return lo <= s && s <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline Interval chain(int n) { return Interval{1, n}; }

// Dimension cap for tensor assembly, configurable by the driver.
int max_dimension();
void set_max_dimension(int dim);

// Splitmix64, used to derive independent per-task seeds from one
// user-facing seed so results do not depend on scheduling order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_double(double v);  // shortest round-trip style, 17 significant digits

}  // namespace gaugelab
