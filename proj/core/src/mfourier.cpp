#include "bitrial/mfourier.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace bitrial {

namespace {

constexpr cplx kI(0.0, 1.0);

void require_disk_alpha(double alpha, const char* where) {
  if (std::abs(alpha) >= 1.0) {
    throw std::domain_error(std::string(where) + ": requires |alpha| < 1");
  }
}

cplx ipow(cplx base, int n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// ((1-a^2)/(e^{-i theta} + a)); conj_base is its conjugate for real inputs
cplx bitrial_base(double theta, double alpha) {
  return (1.0 - alpha * alpha) / (std::exp(-kI * theta) + alpha);
}

// Power table base^{n_min..n_max} at one angle.
std::vector<cplx> power_row(cplx base, int n_min, int n_max) {
  std::vector<cplx> row(static_cast<std::size_t>(n_max - n_min + 1));
  cplx value = ipow(base, n_min);
  for (int n = n_min; n <= n_max; ++n) {
    row[static_cast<std::size_t>(n - n_min)] = value;
    if (n < n_max) value *= base;
  }
  return row;
}

}  // namespace

cplx basis_fn(double theta, int n, double alpha) {
  require_disk_alpha(alpha, "basis_fn");
  return ipow(bitrial_base(theta, alpha), n);
}

cplx conj_basis_fn(double theta, int m, double alpha) {
  require_disk_alpha(alpha, "conj_basis_fn");
  return ipow((1.0 - alpha * alpha) / (std::exp(kI * theta) + alpha), m);
}

cplx gram_same_sign(int n, int m, double alpha, const PeriodicGrid& grid) {
  require_disk_alpha(alpha, "gram_same_sign");
  return quad_periodic(
      [&](double theta) {
        return basis_fn(theta, n, alpha) / basis_fn(theta, m, alpha);
      },
      grid);
}

cplx gram_conjugate(int n, int m, double alpha, const PeriodicGrid& grid) {
  require_disk_alpha(alpha, "gram_conjugate");
  return quad_periodic(
      [&](double theta) {
        return basis_fn(theta, n, alpha) * conj_basis_fn(theta, m, alpha);
      },
      grid);
}

cplx GramMatrix::at(int n, int m) const {
  if (n < n_min || n > n_max || m < n_min || m > n_max) {
    throw std::out_of_range("GramMatrix::at: index outside range");
  }
  const auto row = static_cast<std::size_t>(n - n_min);
  const auto col = static_cast<std::size_t>(m - n_min);
  return entries[row * static_cast<std::size_t>(size()) + col];
}

GramMatrix build_gram(GramConvention convention, int n_min, int n_max,
                      double alpha, const PeriodicGrid& grid) {
  require_disk_alpha(alpha, "build_gram");
  if (n_min > n_max) {
    throw std::invalid_argument("build_gram: n_min must be <= n_max");
  }
  const int size = n_max - n_min + 1;
  GramMatrix gram;
  gram.n_min = n_min;
  gram.n_max = n_max;
  gram.alpha = alpha;
  gram.convention = convention;
  gram.entries.assign(static_cast<std::size_t>(size) * size, cplx(0.0));

  if (convention == GramConvention::same_sign) {
    // entries depend on n - m only; integrate the moment family once
    const int k_lo = n_min - n_max;
    const int k_hi = n_max - n_min;
    std::vector<cplx> moments(static_cast<std::size_t>(k_hi - k_lo + 1), 0.0);
    for (int j = 0; j < grid.node_count(); ++j) {
      const auto row =
          power_row(bitrial_base(grid.node(j), alpha), k_lo, k_hi);
      for (std::size_t k = 0; k < moments.size(); ++k) moments[k] += row[k];
    }
    for (cplx& m : moments) m *= grid.spacing();
    for (int n = n_min; n <= n_max; ++n) {
      for (int m = n_min; m <= n_max; ++m) {
        gram.entries[static_cast<std::size_t>(n - n_min) * size +
                     static_cast<std::size_t>(m - n_min)] =
            moments[static_cast<std::size_t>((n - m) - k_lo)];
      }
    }
    return gram;
  }

  for (int j = 0; j < grid.node_count(); ++j) {
    const auto row = power_row(bitrial_base(grid.node(j), alpha), n_min, n_max);
    for (int n = 0; n < size; ++n) {
      for (int m = 0; m < size; ++m) {
        gram.entries[static_cast<std::size_t>(n) * size + m] +=
            row[static_cast<std::size_t>(n)] *
            std::conj(row[static_cast<std::size_t>(m)]);
      }
    }
  }
  for (cplx& e : gram.entries) e *= grid.spacing();
  return gram;
}

cplx MFourierCoefficients::at(int n) const {
  if (n < n_min || n > n_max) {
    throw std::out_of_range("MFourierCoefficients::at: index outside range");
  }
  return values[static_cast<std::size_t>(n - n_min)];
}

MFourierCoefficients m_fourier_coefficients(
    const std::function<cplx(double)>& f, int n_min, int n_max, double alpha,
    const PeriodicGrid& grid) {
  require_disk_alpha(alpha, "m_fourier_coefficients");
  if (n_min > n_max) {
    throw std::invalid_argument("m_fourier_coefficients: n_min must be <= n_max");
  }
  const int size = n_max - n_min + 1;
  MFourierCoefficients coeffs;
  coeffs.alpha = alpha;
  coeffs.n_min = n_min;
  coeffs.n_max = n_max;
  coeffs.values.assign(static_cast<std::size_t>(size), cplx(0.0));
  for (int j = 0; j < grid.node_count(); ++j) {
    const double theta = grid.node(j);
    const cplx fv = f(theta);
    if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag())) {
      throw std::domain_error(
          "m_fourier_coefficients: non-finite sample at node " +
          std::to_string(j));
    }
    const auto row = power_row(
        std::conj(bitrial_base(theta, alpha)), n_min, n_max);
    for (int n = 0; n < size; ++n) {
      coeffs.values[static_cast<std::size_t>(n)] +=
          fv * row[static_cast<std::size_t>(n)];
    }
  }
  const double scale =
      grid.spacing() * std::sqrt((1.0 - alpha * alpha) / kTwoPi);
  for (cplx& v : coeffs.values) v *= scale;
  return coeffs;
}

std::vector<cplx> synthesis_weights(const MFourierCoefficients& coeffs,
                                    const PeriodicGrid& grid) {
  const int size = coeffs.n_max - coeffs.n_min + 1;
  const GramMatrix gram = build_gram(GramConvention::conjugate, coeffs.n_min,
                                     coeffs.n_max, coeffs.alpha, grid);
  // normal equations of the L2 projection: sum_m <phi_m, phi_n> c_m = <f, phi_n>
  Eigen::MatrixXcd a(size, size);
  for (int n = 0; n < size; ++n) {
    for (int m = 0; m < size; ++m) {
      a(n, m) = gram.at(coeffs.n_min + m, coeffs.n_min + n);
    }
  }
  // b_n = <f, phi_n> = a_n / sqrt((1-alpha^2)/(2 pi))
  const double scale =
      std::sqrt(kTwoPi / (1.0 - coeffs.alpha * coeffs.alpha));
  Eigen::VectorXcd b(size);
  for (int n = 0; n < size; ++n) {
    b(n) = coeffs.values[static_cast<std::size_t>(n)] * scale;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigensolver(a);
  if (eigensolver.info() != Eigen::Success) {
    throw conditioning_error("synthesis_weights: eigen decomposition failed",
                             std::numeric_limits<double>::infinity());
  }
  const auto& eigenvalues = eigensolver.eigenvalues();
  const double lambda_min = eigenvalues.minCoeff();
  const double lambda_max = eigenvalues.maxCoeff();
  const double condition =
      lambda_min > 0.0 ? lambda_max / lambda_min
                       : std::numeric_limits<double>::infinity();
  if (!(condition < kGramConditionLimit)) {
    throw conditioning_error(
        "synthesis_weights: Gram system condition number " +
            std::to_string(condition) + " exceeds limit",
        condition);
  }
  const Eigen::VectorXcd solved =
      eigensolver.eigenvectors() *
      (eigensolver.eigenvalues().cwiseInverse().asDiagonal() *
       (eigensolver.eigenvectors().adjoint() * b));
  return {solved.data(), solved.data() + size};
}

cplx synthesize(const MFourierCoefficients& coeffs, double theta) {
  const PeriodicGrid grid(kDefaultQuadratureNodes);
  const auto weights = synthesis_weights(coeffs, grid);
  cplx sum = 0.0;
  for (int n = coeffs.n_min; n <= coeffs.n_max; ++n) {
    sum += weights[static_cast<std::size_t>(n - coeffs.n_min)] *
           basis_fn(theta, n, coeffs.alpha);
  }
  return sum;
}

double reconstruction_error(const std::function<cplx(double)>& f,
                            int truncation, double alpha,
                            const PeriodicGrid& grid) {
  if (truncation < 1) {
    throw std::invalid_argument("reconstruction_error: truncation must be >= 1");
  }
  const auto coeffs =
      m_fourier_coefficients(f, -truncation, truncation, alpha, grid);
  const auto weights = synthesis_weights(coeffs, grid);
  long double num = 0.0L;
  long double den = 0.0L;
  for (int j = 0; j < grid.node_count(); ++j) {
    const double theta = grid.node(j);
    const auto row =
        power_row(bitrial_base(theta, alpha), -truncation, truncation);
    cplx synth = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) synth += weights[k] * row[k];
    const cplx fv = f(theta);
    num += std::norm(fv - synth);
    den += std::norm(fv);
  }
  if (den == 0.0L) return std::sqrt(static_cast<double>(num));
  return std::sqrt(static_cast<double>(num / den));
}

}  // namespace bitrial
