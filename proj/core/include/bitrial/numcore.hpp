#pragma once

// Shared numerical kernels: periodic trapezoid quadrature, central
// finite-difference stencils, the closed-form contour-moment oracle for the
// unit-circle integrals, and a platform-stable seeded sampler.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitrial {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Thrown when an input sits on (or numerically at) a pole of a map or field.
struct singularity_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown by linear solves whose condition number exceeds the configured cap.
struct conditioning_error : std::runtime_error {
  double condition;
  conditioning_error(const std::string& what, double cond)
      : std::runtime_error(what), condition(cond) {}
};

struct Tolerance {
  double absolute = 1e-10;
  double relative = 1e-8;

  // at least one bound must be positive for the tolerance to mean anything
  bool valid() const { return absolute > 0.0 || relative > 0.0; }
};

// Uniform grid of node_count angles 2*pi*j/node_count, j = 0..node_count-1.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int node_count);

  int node_count() const { return node_count_; }
  double spacing() const { return kTwoPi / node_count_; }
  double node(int j) const { return kTwoPi * j / node_count_; }
  std::vector<double> nodes() const;

 private:
  int node_count_;
};

inline constexpr int kDefaultQuadratureNodes = 4096;

// Trapezoid rule on a periodic integrand (equal weights); spectrally accurate
// for smooth 2*pi-periodic functions.  Throws std::domain_error naming the
// node if the integrand is non-finite there.
cplx quad_periodic(const std::function<cplx(double)>& evaluate,
                   const PeriodicGrid& grid);

// Central second-order stencils for the first or second derivative at the
// interior nodes; the two endpoint values are dropped.  Requires at least
// five samples.
std::vector<cplx> fd_apply(std::span<const cplx> samples, double spacing,
                           int order);
std::vector<double> fd_apply(std::span<const double> samples, double spacing,
                             int order);

// Closed form of the moment integral
//   I(k) = int_0^{2pi} ((1 - alpha^2) / (e^{-i theta} + alpha))^k dtheta
// for |alpha| < 1:
//   I(0)      = 2*pi
//   I(k >= 1) = 0                                   (analytic inside |z|=1)
//   I(k <= -1)= 2*pi * (alpha / (1 - alpha^2))^|k|  (residue at z = 0)
// Frozen against quad_periodic at 4096 nodes; the quadrature is the ground
// truth of record.
cplx contour_moment_oracle(int k, double alpha);

// Deterministic uniform samples in [low, high).  Uses the fully specified
// mt19937_64 stream plus a fixed 53-bit mantissa mapping, so the same seed
// yields the same doubles on every platform.
std::vector<double> seeded_sampler(std::uint64_t seed, double low, double high,
                                   int count);

}  // namespace bitrial
