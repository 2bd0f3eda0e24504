#pragma once

// The modified Klein-Gordon-Fock operator
//
//   (1 + alpha e^{-mu.x}) box phi + 2 mu^k d_k phi + mu^2 phi = 0
//
// with signature (+,-,-,-), its exact solutions (modified Yukawa, partial
// wave, 4-d bitrial exponential), the sourced spherical equation, the
// Lagrangian / Euler-Lagrange consistency check, and the self-adjointness
// defect behind the no-Lagrangian claim.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bitrial/numcore.hpp"

namespace bitrial {

struct FieldParams {
  std::array<double, 4> mu_vec{0.0, 0.0, 0.0, 0.0};  // contravariant mu^k
  double alpha = 0.0;

  // mu restricted to the radial / z direction
  static FieldParams scalar(double mu, double alpha);
  // mu in the (t, x) slice
  static FieldParams slice(double mu0, double mu1, double alpha);

  // mu^2 = mu_k mu^k under (+,-,-,-)
  double mu_squared() const;
  // sqrt(mu^2); requires a timelike mu
  double mass_scale() const;
  // mu . x = mu_k x^k
  double dot(const std::array<double, 4>& x) const;
};

// Uniform 1-d or 2-d sample grid; nodes hit by a pole are flagged singular
// and carry a zero sample.
struct FieldGrid {
  int dimension = 1;
  std::array<double, 2> low{0.0, 0.0};
  std::array<double, 2> high{0.0, 0.0};
  std::array<int, 2> node_counts{0, 1};
  std::vector<cplx> samples;              // row-major for 2-d (axis 0 major)
  std::vector<std::uint8_t> singular;

  double spacing(int axis) const;
  std::size_t index(int j, int k = 0) const;
};

FieldGrid sample_field_1d(const std::function<cplx(double)>& field, double low,
                          double high, int node_count);
FieldGrid sample_field_2d(const std::function<cplx(double, double)>& field,
                          const std::array<double, 2>& low,
                          const std::array<double, 2>& high,
                          const std::array<int, 2>& node_counts);

struct ResidualReport {
  std::vector<double> spacings;        // strictly decreasing
  std::vector<double> residual_norms;  // max norm over interior nodes
  std::vector<int> excluded_nodes;     // singular-flagged, per level
  double fitted_order = 0.0;           // LS slope of log(norm) vs log(h)
};

// phi = -c0 / (r (e^{mu r} + alpha))
double modified_yukawa(double r, double c0, const FieldParams& p);

// psi = psi0 / (e^{i mu z} + alpha)
cplx wave_solution(double z, cplx psi0, const FieldParams& p);

// phi = 1 / (e^{mu.x} + alpha); annihilates the operator exactly
double mkgf_exact_solution(const std::array<double, 4>& x,
                           const FieldParams& p);

// L = (alpha + e^{s mu.x}) d_n U d^n U* - mu^2 U U* e^{s mu.x},  s = +-1
double lagrangian_density(cplx u, const std::array<cplx, 4>& grad_u,
                          const std::array<double, 4>& x, const FieldParams& p,
                          int sign);

inline constexpr std::array<int, 3> kDefaultResidualLadder{129, 257, 513};

// ((1 + alpha e^{-i mu z}) d_z^2 + 2 i mu d_z - mu^2) psi discretized on the
// grid ladder; the default field is the exact wave solution.
ResidualReport ode_residual_1d(const FieldParams& p, double z_low,
                               double z_high, std::span<const int> node_counts);
ResidualReport ode_residual_1d(const std::function<cplx(double)>& field,
                               const FieldParams& p, double z_low,
                               double z_high, std::span<const int> node_counts);

// Full operator on a (t, x) slice with box = d_t^2 - d_x^2; default field is
// mkgf_exact_solution.
ResidualReport pde_residual_2d(const FieldParams& p,
                               const std::array<double, 2>& low,
                               const std::array<double, 2>& high,
                               std::span<const int> node_counts);
ResidualReport pde_residual_2d(const std::function<cplx(double, double)>& field,
                               const FieldParams& p,
                               const std::array<double, 2>& low,
                               const std::array<double, 2>& high,
                               std::span<const int> node_counts);

// Stationary spherical equation with the field source on the right-hand
// side; the solution sign convention is c0 = -q1 (overridable for negative
// controls).
ResidualReport spherical_residual(const FieldParams& p, double q1,
                                  double r_low, double r_high,
                                  std::span<const int> node_counts,
                                  std::optional<double> c0_override = std::nullopt);

// Compares the discrete Euler-Lagrange residual of the Lagrangian density
// (conservative flux form) against the expanded operator
// e^{s mu.x}[(1 + alpha e^{-s mu.x}) box U + s mu^n d_n U + mu^2 U] for a
// seeded band-limited field; the gap converges at second order.
ResidualReport el_vs_operator_check(const FieldParams& p, int sign,
                                    std::uint64_t seed,
                                    const std::array<double, 2>& low,
                                    const std::array<double, 2>& high,
                                    std::span<const int> node_counts);

enum class AdjointVersion { coefficient2, coefficient1_weighted };

inline constexpr std::array<int, 4> kDefaultAdjointLadder{65, 129, 257, 513};

// |<v, L u> - <u, L v>| for seeded band-limited bump-windowed fields with
// analytic derivatives; plain pairing for the coefficient-2 operator,
// e^{mu.x}-weighted pairing for the coefficient-1 operator.  The weighted
// defect is a quadrature error and vanishes under refinement; the plain
// coefficient-2 defect converges to a nonzero constant.
ResidualReport self_adjointness_scan(const FieldParams& p,
                                     AdjointVersion version,
                                     std::uint64_t u_seed, std::uint64_t v_seed,
                                     const std::array<double, 2>& low,
                                     const std::array<double, 2>& high,
                                     std::span<const int> node_counts);

// Finest-grid defect of the scan above.
double self_adjointness_defect(const FieldParams& p, AdjointVersion version,
                               std::uint64_t u_seed, std::uint64_t v_seed,
                               const std::array<double, 2>& low,
                               const std::array<double, 2>& high,
                               std::span<const int> node_counts);

}  // namespace bitrial
