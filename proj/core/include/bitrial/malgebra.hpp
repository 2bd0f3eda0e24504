#pragma once

// The bitrial exponent m exp(i theta') = 1/(e^{-i theta'} + alpha), the
// broken-symmetry algebra over its phase parameters, the Blaschke-type
// correspondence theta <-> theta', bitrial trigonometric and logarithmic
// functions, and the SU(2, alpha) uniformization.
//
// Two candidate addition operations are deliberately kept distinct:
//   m_mul_param     - pull the product of group elements back through the
//                     bitrial logarithm (identity parameter i ln(1-alpha))
//   oplus_pullback  - add the classical angles under the Blaschke
//                     correspondence (identity parameter 0)
// They do not coincide for alpha != 0; axiom_fuzz measures the mismatch.

#include <array>
#include <complex>
#include <cstdint>

#include "bitrial/numcore.hpp"

namespace bitrial {

// Group parameter theta or theta'.  Real for geometric rotations; the
// algebraic identity i ln(1-alpha) forces the complex field.
struct PhaseParam {
  cplx value;
  double alpha = 0.0;
};

struct GroupElement {
  cplx value;
};

// m exp: 1 / (e^{-i theta'} + alpha).  Real parameters trace the circle of
// radius 1/(1-alpha^2) centered at -alpha/(1-alpha^2).
GroupElement m_exp(const PhaseParam& theta);

// (1 - alpha^2) * m_exp: the normalized circle |w + alpha| = 1.
GroupElement m_exp_normalized(const PhaseParam& theta);

// Functional inverse of m_exp: theta' = i Ln(1/w - alpha), principal branch.
PhaseParam bitrial_log(const GroupElement& w, double alpha);

// Parameter of the product m_exp(a) * m_exp(b); exact at the group-element
// level, principal branch at the parameter level.
PhaseParam m_mul_param(const PhaseParam& a, const PhaseParam& b);

// theta'_0 = i ln(1 - alpha); m_exp of it is exactly 1.
PhaseParam identity_param(double alpha);

// Parameter of the group inverse: i Ln((1 - alpha e^{-i theta'} - alpha^2)
// / (e^{-i theta'} + alpha)); satisfies m_exp(inv) * m_exp(theta') = 1.
PhaseParam inverse_param(const PhaseParam& theta);

// Blaschke pair linking the uniform angle theta and the bitrial parameter
// theta' through e^{i theta} = (e^{i theta'} + alpha)/(1 + alpha e^{i theta'});
// both maps are strictly increasing bijections of [0, 2*pi).
double theta_of(const PhaseParam& theta_prime);
double theta_prime_of(double theta, double alpha);

// theta'_1 (+) theta'_2 realized as theta_prime_of(theta_1 + theta_2).
double oplus_pullback(double t1p, double t2p, double alpha);

// m cos / m sin; m_cos^2 + m_sin^2 = 1 identically for |alpha| < 1.
double m_cos(double theta, double alpha);
double m_sin(double theta, double alpha);

// m ln x = ln(x / (1 + alpha x)).
double m_ln(double x, double alpha);

struct SU2AlphaElement {
  std::array<cplx, 4> matrix;  // row-major 2x2
  std::array<double, 3> axis;
  double angle = 0.0;  // theta'
  double alpha = 0.0;
};

// m cos(theta'/2) I + i m sin(theta'/2) (n . sigma) with the standard Pauli
// matrices; unitary with determinant 1 by the Pythagorean identity.
SU2AlphaElement su2_alpha(double theta_prime, const std::array<double, 3>& axis,
                          double alpha);

// Seeded fuzz over the group axioms and associated identities; all
// violations are group-element distances, not parameter distances.
struct AxiomFuzzReport {
  double identity = 0.0;        // |m_exp(a (*) e) - m_exp(a)|
  double inverse = 0.0;         // |m_exp(a) m_exp(a^-1) - 1|
  double associativity = 0.0;   // |m_exp((ab)c) - m_exp(a(bc))|
  double pythagorean = 0.0;     // |m_cos^2 + m_sin^2 - 1|
  double circle = 0.0;          // | |w + a/(1-a^2)| - 1/(1-a^2) |
  double euler = 0.0;           // |m_cos + i m_sin - alpha - m_exp_norm|
  double oplus_mismatch_max = 0.0;   // |m_exp(a)m_exp(b) - m_exp(a (+) b)|
  double oplus_mismatch_mean = 0.0;
};

AxiomFuzzReport axiom_fuzz(double alpha, int samples, std::uint64_t seed);

}  // namespace bitrial
