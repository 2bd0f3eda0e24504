#include "bitrial/malgebra.hpp"

#include <cmath>

namespace bitrial {

namespace {

constexpr cplx kI(0.0, 1.0);
constexpr double kPoleTolerance = 1e-15;

double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

void require_disk_alpha(double alpha, const char* where) {
  if (std::abs(alpha) >= 1.0) {
    throw std::domain_error(std::string(where) + ": requires |alpha| < 1");
  }
}

double require_real(const PhaseParam& p, const char* where) {
  if (p.value.imag() != 0.0) {
    throw std::invalid_argument(std::string(where) +
                                ": requires a real phase parameter");
  }
  return p.value.real();
}

}  // namespace

GroupElement m_exp(const PhaseParam& theta) {
  const cplx den = std::exp(-kI * theta.value) + theta.alpha;
  if (std::abs(den) < kPoleTolerance) {
    throw singularity_error("m_exp: e^{-i theta'} + alpha vanishes");
  }
  return {1.0 / den};
}

GroupElement m_exp_normalized(const PhaseParam& theta) {
  return {(1.0 - theta.alpha * theta.alpha) * m_exp(theta).value};
}

PhaseParam bitrial_log(const GroupElement& w, double alpha) {
  if (std::abs(w.value) == 0.0) {
    throw std::domain_error("bitrial_log: zero group element");
  }
  const cplx u = 1.0 / w.value - alpha;
  if (std::abs(u) < kPoleTolerance) {
    throw std::domain_error("bitrial_log: argument on the log branch pole");
  }
  return {kI * std::log(u), alpha};
}

PhaseParam m_mul_param(const PhaseParam& a, const PhaseParam& b) {
  if (a.alpha != b.alpha) {
    throw std::invalid_argument("m_mul_param: mismatched alpha");
  }
  return bitrial_log({m_exp(a).value * m_exp(b).value}, a.alpha);
}

PhaseParam identity_param(double alpha) {
  if (alpha >= 1.0) {
    throw std::domain_error("identity_param: requires alpha < 1");
  }
  return {cplx(0.0, std::log(1.0 - alpha)), alpha};
}

PhaseParam inverse_param(const PhaseParam& theta) {
  const cplx e = std::exp(-kI * theta.value);
  const cplx num = 1.0 - theta.alpha * e - theta.alpha * theta.alpha;
  const cplx den = e + theta.alpha;
  if (std::abs(den) < kPoleTolerance || std::abs(num) < kPoleTolerance) {
    throw std::domain_error("inverse_param: singular denominator");
  }
  return {kI * std::log(num / den), theta.alpha};
}

double theta_of(const PhaseParam& theta_prime) {
  const double tp = require_real(theta_prime, "theta_of");
  require_disk_alpha(theta_prime.alpha, "theta_of");
  const double a = theta_prime.alpha;
  const cplx z = std::polar(1.0, tp);
  // disk automorphism z -> (z + a)/(1 + a z); unit modulus stays unit
  return wrap_two_pi(std::arg((z + a) / (1.0 + a * z)));
}

double theta_prime_of(double theta, double alpha) {
  require_disk_alpha(alpha, "theta_prime_of");
  const cplx z = std::polar(1.0, theta);
  return wrap_two_pi(std::arg((z - alpha) / (1.0 - alpha * z)));
}

double oplus_pullback(double t1p, double t2p, double alpha) {
  require_disk_alpha(alpha, "oplus_pullback");
  const double sum = theta_of({t1p, alpha}) + theta_of({t2p, alpha});
  return theta_prime_of(sum, alpha);
}

double m_cos(double theta, double alpha) {
  require_disk_alpha(alpha, "m_cos");
  // real form of alpha + (1-a^2)/2 (1/(e^{-it}+a) + 1/(e^{it}+a))
  const double c = std::cos(theta);
  const double den = 1.0 + 2.0 * alpha * c + alpha * alpha;
  return alpha + (1.0 - alpha * alpha) * (c + alpha) / den;
}

double m_sin(double theta, double alpha) {
  require_disk_alpha(alpha, "m_sin");
  const double den = 1.0 + 2.0 * alpha * std::cos(theta) + alpha * alpha;
  return (1.0 - alpha * alpha) * std::sin(theta) / den;
}

double m_ln(double x, double alpha) {
  const double den = 1.0 + alpha * x;
  if (den == 0.0) {
    throw std::domain_error("m_ln: pole at x = -1/alpha");
  }
  const double argument = x / den;
  if (!(argument > 0.0)) {
    throw std::domain_error("m_ln: argument must be positive");
  }
  return std::log(argument);
}

SU2AlphaElement su2_alpha(double theta_prime, const std::array<double, 3>& axis,
                          double alpha) {
  require_disk_alpha(alpha, "su2_alpha");
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] +
                                axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::domain_error("su2_alpha: axis must be a unit vector");
  }
  const double c = m_cos(theta_prime / 2.0, alpha);
  const double s = m_sin(theta_prime / 2.0, alpha);
  // c I + i s (n1 s1 + n2 s2 + n3 s3)
  SU2AlphaElement out;
  out.matrix = {cplx(c, s * axis[2]), cplx(s * axis[1], s * axis[0]),
                cplx(-s * axis[1], s * axis[0]), cplx(c, -s * axis[2])};
  out.axis = axis;
  out.angle = theta_prime;
  out.alpha = alpha;
  return out;
}

AxiomFuzzReport axiom_fuzz(double alpha, int samples, std::uint64_t seed) {
  require_disk_alpha(alpha, "axiom_fuzz");
  if (samples < 1) throw std::invalid_argument("axiom_fuzz: samples < 1");
  AxiomFuzzReport report;
  const auto angles =
      seeded_sampler(seed, 0.0, kTwoPi, 3 * samples);
  const PhaseParam e = identity_param(alpha);
  const double a2 = alpha * alpha;
  const double radius = 1.0 / (1.0 - a2);
  long double mismatch_sum = 0.0L;
  for (int i = 0; i < samples; ++i) {
    const PhaseParam a{angles[static_cast<std::size_t>(3 * i)], alpha};
    const PhaseParam b{angles[static_cast<std::size_t>(3 * i + 1)], alpha};
    const PhaseParam c{angles[static_cast<std::size_t>(3 * i + 2)], alpha};
    const cplx wa = m_exp(a).value;
    const cplx wb = m_exp(b).value;

    // axiom 1: unit element
    report.identity = std::max(
        report.identity, std::abs(m_exp(m_mul_param(a, e)).value - wa));
    // axiom 2: inverse element
    report.inverse = std::max(
        report.inverse, std::abs(wa * m_exp(inverse_param(a)).value - 1.0));
    // axiom 3: associativity
    const cplx left = m_exp(m_mul_param(m_mul_param(a, b), c)).value;
    const cplx right = m_exp(m_mul_param(a, m_mul_param(b, c))).value;
    report.associativity = std::max(report.associativity, std::abs(left - right));

    const double t = a.value.real();
    const double mc = m_cos(t, alpha);
    const double ms = m_sin(t, alpha);
    report.pythagorean =
        std::max(report.pythagorean, std::abs(mc * mc + ms * ms - 1.0));
    report.circle = std::max(
        report.circle, std::abs(std::abs(wa + alpha * radius) - radius));
    report.euler = std::max(
        report.euler,
        std::abs(cplx(mc, ms) - (alpha + m_exp_normalized(a).value)));

    const double mismatch = std::abs(
        wa * wb -
        m_exp({oplus_pullback(t, b.value.real(), alpha), alpha}).value);
    report.oplus_mismatch_max = std::max(report.oplus_mismatch_max, mismatch);
    mismatch_sum += mismatch;
  }
  report.oplus_mismatch_mean =
      static_cast<double>(mismatch_sum / samples);
  return report;
}

}  // namespace bitrial
