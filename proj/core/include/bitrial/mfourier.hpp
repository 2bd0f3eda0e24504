#pragma once

// The m-Fourier basis phi_n(theta) = ((1-alpha^2)/(e^{-i theta}+alpha))^n,
// its pairing (Gram) integrals under both conjugation conventions, raw
// m-Fourier coefficients, and least-squares synthesis through the finite
// Gram system.  The basis is not orthogonal for alpha != 0, so raw
// coefficients are kept verbatim while reconstruction solves G c = b.

#include <functional>
#include <vector>

#include "bitrial/numcore.hpp"

namespace bitrial {

cplx basis_fn(double theta, int n, double alpha);
cplx conj_basis_fn(double theta, int m, double alpha);

// int phi_n phi_m^{-1} dtheta: both factors carry e^{-i theta}; equals
// contour_moment_oracle(n - m, alpha) up to quadrature error.
cplx gram_same_sign(int n, int m, double alpha, const PeriodicGrid& grid);

// int phi_n conj(phi_m) dtheta with the e^{+i theta} conjugate convention.
cplx gram_conjugate(int n, int m, double alpha, const PeriodicGrid& grid);

enum class GramConvention { same_sign, conjugate };

struct GramMatrix {
  int n_min = 0;
  int n_max = 0;
  double alpha = 0.0;
  GramConvention convention = GramConvention::same_sign;
  std::vector<cplx> entries;  // row-major, (n_max - n_min + 1)^2

  int size() const { return n_max - n_min + 1; }
  cplx at(int n, int m) const;
};

GramMatrix build_gram(GramConvention convention, int n_min, int n_max,
                      double alpha, const PeriodicGrid& grid);

struct MFourierCoefficients {
  double alpha = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::vector<cplx> values;  // a_{n_min} .. a_{n_max}

  cplx at(int n) const;
};

// a_n = sqrt((1-alpha^2)/(2 pi)) * int f(theta) ((1-alpha^2)/(e^{i theta}+alpha))^n dtheta
MFourierCoefficients m_fourier_coefficients(
    const std::function<cplx(double)>& f, int n_min, int n_max, double alpha,
    const PeriodicGrid& grid);

// Condition cap for the Gram solve; beyond it a conditioning_error carries
// the measured condition number.
inline constexpr double kGramConditionLimit = 1e12;

// Solves the Hermitian Gram system G c = b (b rebuilt from the raw
// coefficients) for the synthesis weights.
std::vector<cplx> synthesis_weights(const MFourierCoefficients& coeffs,
                                    const PeriodicGrid& grid);

// Truncated series sum_n c_n phi_n(theta) with Gram-solved weights.
cplx synthesize(const MFourierCoefficients& coeffs, double theta);

// Relative L2 error over the grid between f and its truncated synthesis on
// the symmetric index range [-truncation, truncation].
double reconstruction_error(const std::function<cplx(double)>& f,
                            int truncation, double alpha,
                            const PeriodicGrid& grid);

}  // namespace bitrial
