#include "bitrial/malgebra.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"

using namespace bitrial;

namespace {

constexpr cplx kI(0.0, 1.0);

double wrap(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// distance on the circle of parameters mod 2 pi
double param_distance(double a, double b) {
  const double d = wrap(a - b);
  return std::min(d, kTwoPi - d);
}

}  // namespace

TEST_SUITE_BEGIN("malgebra");

TEST_CASE("m_exp point values") {
  CHECK(std::abs(m_exp({0.0, 0.5}).value - cplx(1.0 / 1.5)) < 1e-15);
  CHECK(std::abs(m_exp({kTwoPi / 2.0, 0.5}).value - cplx(-2.0)) < 1e-12);
  // alpha = 0 reduces to e^{i theta}
  CHECK(std::abs(m_exp({1.1, 0.0}).value - std::exp(kI * 1.1)) < 1e-15);
}

TEST_CASE("m_exp traces the off-center circle") {
  const double alpha = 0.3;
  const double radius = 1.0 / (1.0 - alpha * alpha);
  const cplx center(-alpha * radius, 0.0);
  for (double tp : seeded_sampler(31, 0.0, kTwoPi, 2000)) {
    const cplx w = m_exp({tp, alpha}).value;
    CHECK(std::abs(std::abs(w - center) - radius) < 1e-12);
  }
}

TEST_CASE("m_exp_normalized point values") {
  CHECK(m_exp_normalized({0.0, 0.3}).value.real() ==
        doctest::Approx(0.7).epsilon(1e-14));
  CHECK(m_exp_normalized({kTwoPi / 2.0, 0.3}).value.real() ==
        doctest::Approx(-1.3).epsilon(1e-12));
  CHECK(std::abs(m_exp_normalized({0.8, 0.0}).value - std::exp(kI * 0.8)) <
        1e-15);
}

TEST_CASE("bitrial_log inverts m_exp") {
  CHECK(std::abs(bitrial_log({cplx(1.0 / 1.5)}, 0.5).value) < 1e-15);
  // alpha = 0 reduces to -i log
  CHECK(bitrial_log({std::polar(1.0, kTwoPi / 6.0)}, 0.0).value.real() ==
        doctest::Approx(kTwoPi / 6.0).epsilon(1e-14));
  for (double tp : seeded_sampler(32, 0.0, kTwoPi, 2000)) {
    const PhaseParam round = bitrial_log(m_exp({tp, 0.3}), 0.3);
    CHECK(std::abs(round.value.imag()) < 1e-13);
    CHECK(param_distance(round.value.real(), tp) < 1e-12);
  }
  CHECK_THROWS_AS(bitrial_log({cplx(0.0)}, 0.3), std::domain_error);
}

TEST_CASE("identity parameter") {
  CHECK(identity_param(0.0).value == cplx(0.0));
  CHECK(identity_param(0.5).value.imag() ==
        doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(identity_param(0.5).value.real() == 0.0);
  CHECK(std::abs(m_exp(identity_param(0.3)).value - cplx(1.0)) < 1e-15);
  CHECK_THROWS_AS(identity_param(1.0), std::domain_error);
}

TEST_CASE("inverse parameter satisfies the product contract") {
  // theta'=0, alpha=0.3: i ln((1 - 0.3 - 0.09)/1.3)
  const PhaseParam inv0 = inverse_param({0.0, 0.3});
  CHECK(inv0.value.imag() ==
        doctest::Approx(std::log(0.61 / 1.3)).epsilon(1e-14));
  // alpha = 0: inverse is -theta'
  const PhaseParam invr = inverse_param({1.2, 0.0});
  CHECK(invr.value.real() == doctest::Approx(-1.2).epsilon(1e-14));
  const auto tps = seeded_sampler(33, 0.0, kTwoPi, 5000);
  const auto alphas = seeded_sampler(34, -0.6, 0.6, 5000);
  for (std::size_t i = 0; i < tps.size(); ++i) {
    const PhaseParam theta{tps[i], alphas[i]};
    const cplx product =
        m_exp(theta).value * m_exp(inverse_param(theta)).value;
    CHECK(std::abs(product - cplx(1.0)) < 1e-12);
  }
}

TEST_CASE("m_mul_param multiplies group elements exactly") {
  const double alpha = 0.3;
  const auto tps = seeded_sampler(35, 0.0, kTwoPi, 4000);
  for (std::size_t i = 0; i + 1 < tps.size(); i += 2) {
    const PhaseParam a{tps[i], alpha};
    const PhaseParam b{tps[i + 1], alpha};
    const PhaseParam c = m_mul_param(a, b);
    CHECK(std::abs(m_exp(c).value - m_exp(a).value * m_exp(b).value) < 1e-13);
  }
  // identity on the right leaves the parameter fixed mod 2 pi
  const PhaseParam a{2.4, alpha};
  const PhaseParam with_identity = m_mul_param(a, identity_param(alpha));
  CHECK(param_distance(with_identity.value.real(), 2.4) < 1e-13);
  CHECK(std::abs(with_identity.value.imag()) < 1e-13);
  // alpha = 0 is angle addition mod 2 pi
  const PhaseParam sum = m_mul_param({1.0, 0.0}, {2.0, 0.0});
  CHECK(param_distance(sum.value.real(), 3.0) < 1e-14);
  // parameter of g g^{-1} is the identity parameter i ln(1 - alpha)
  const PhaseParam neutral = m_mul_param(a, inverse_param(a));
  CHECK(std::abs(neutral.value - identity_param(alpha).value) < 1e-13);
  CHECK_THROWS_AS(m_mul_param({1.0, 0.1}, {1.0, 0.2}), std::invalid_argument);
}

TEST_CASE("theta_of endpoint values") {
  CHECK(theta_of({0.0, 0.3}) == 0.0);
  CHECK(theta_of({kTwoPi / 2.0, 0.3}) ==
        doctest::Approx(kTwoPi / 2.0).epsilon(1e-12));
  CHECK(theta_of({1.3, 0.0}) == doctest::Approx(1.3).epsilon(1e-14));
  // approaching 2 pi from below arrives together with the uniform angle
  CHECK(theta_of({kTwoPi - 1e-6, 0.3}) ==
        doctest::Approx(kTwoPi - 1e-6).epsilon(1e-3));
  CHECK(theta_of({kTwoPi - 1e-6, 0.3}) < kTwoPi);
  CHECK_THROWS_AS(theta_of({cplx(0.0, 1.0), 0.3}), std::invalid_argument);
}

TEST_CASE("blaschke pair round trip and monotonicity") {
  const double alpha = 0.3;
  double previous_theta = -1.0;
  double previous_tp = -1.0;
  for (int k = 0; k < 10000; ++k) {
    const double theta = kTwoPi * k / 10000;
    const double tp = theta_prime_of(theta, alpha);
    const double back = theta_of({tp, alpha});
    CHECK(std::abs(back - theta) < 1e-12);
    CHECK(tp > previous_tp);       // strictly increasing on [0, 2 pi)
    CHECK(theta > previous_theta);
    previous_tp = tp;
    previous_theta = theta;
  }
  CHECK(theta_prime_of(0.0, alpha) == 0.0);
  CHECK(theta_prime_of(1.7, 0.0) == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("oplus_pullback identities") {
  const double alpha = 0.3;
  // pullback zero is the identity of this operation
  for (double tp : seeded_sampler(36, 0.0, kTwoPi, 200)) {
    CHECK(param_distance(oplus_pullback(tp, 0.0, alpha), tp) < 1e-12);
  }
  // alpha = 0 reduces to addition mod 2 pi
  CHECK(oplus_pullback(1.0, 2.0, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(oplus_pullback(4.0, 4.0, 0.0) ==
        doctest::Approx(8.0 - kTwoPi).epsilon(1e-12));
}

TEST_CASE("oplus_pullback commutes and associates") {
  for (double alpha : {0.1, 0.3, 1.0 / 137.0}) {
    const auto draws = seeded_sampler(37, 0.0, kTwoPi, 3 * 3000);
    for (int i = 0; i < 3000; ++i) {
      const double a = draws[static_cast<std::size_t>(3 * i)];
      const double b = draws[static_cast<std::size_t>(3 * i + 1)];
      const double c = draws[static_cast<std::size_t>(3 * i + 2)];
      CHECK(param_distance(oplus_pullback(a, b, alpha),
                           oplus_pullback(b, a, alpha)) < 1e-12);
      const double left = oplus_pullback(oplus_pullback(a, b, alpha), c, alpha);
      const double right = oplus_pullback(a, oplus_pullback(b, c, alpha), alpha);
      CHECK(param_distance(left, right) < 1e-12);
    }
  }
}

TEST_CASE("bitrial cosine and sine point values") {
  for (double alpha : {0.0, 0.3, -0.4, 1.0 / 137.0}) {
    CHECK(m_cos(0.0, alpha) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m_sin(0.0, alpha) == doctest::Approx(0.0).epsilon(1e-14));
  }
  // closed forms 2 a/(1+a^2) and (1-a^2)/(1+a^2) at theta = pi/2
  CHECK(m_cos(kTwoPi / 4.0, 0.3) == doctest::Approx(0.6 / 1.09).epsilon(1e-12));
  CHECK(m_sin(kTwoPi / 4.0, 0.3) == doctest::Approx(0.91 / 1.09).epsilon(1e-12));
  CHECK(m_cos(0.77, 0.0) == doctest::Approx(std::cos(0.77)).epsilon(1e-15));
  CHECK(m_sin(0.77, 0.0) == doctest::Approx(std::sin(0.77)).epsilon(1e-15));
}

TEST_CASE("bitrial trig matches the complex-pair formula") {
  // oracle route: the two conjugate bitrial exponents summed directly
  const auto thetas = seeded_sampler(38, 0.0, kTwoPi, 3000);
  const auto alphas = seeded_sampler(39, -0.8, 0.8, 3000);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double t = thetas[i];
    const double a = alphas[i];
    const cplx plus = 1.0 / (std::exp(-kI * t) + a);
    const cplx minus = 1.0 / (std::exp(kI * t) + a);
    const cplx cos_ref = a + 0.5 * (1.0 - a * a) * (plus + minus);
    const cplx sin_ref = (1.0 - a * a) / (2.0 * kI) * (plus - minus);
    CHECK(std::abs(cos_ref.imag()) < 1e-13);
    CHECK(std::abs(m_cos(t, a) - cos_ref.real()) < 1e-12);
    CHECK(std::abs(m_sin(t, a) - sin_ref.real()) < 1e-12);
  }
}

TEST_CASE("pythagorean and euler identities") {
  const auto thetas = seeded_sampler(40, 0.0, kTwoPi, 20000);
  const auto alphas = seeded_sampler(41, -0.95, 0.95, 20000);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double c = m_cos(thetas[i], alphas[i]);
    const double s = m_sin(thetas[i], alphas[i]);
    CHECK(std::abs(c * c + s * s - 1.0) < 1e-12);
    const cplx euler =
        alphas[i] + m_exp_normalized({thetas[i], alphas[i]}).value;
    CHECK(std::abs(cplx(c, s) - euler) < 1e-13);
  }
}

TEST_CASE("bitrial logarithm") {
  CHECK(m_ln(1.0, 0.3) == doctest::Approx(-std::log(1.3)).epsilon(1e-14));
  CHECK(m_ln(2.5, 0.0) == doctest::Approx(std::log(2.5)).epsilon(1e-15));
  CHECK_THROWS_AS(m_ln(-1.0 / 0.3, 0.3), std::domain_error);
  CHECK_THROWS_AS(m_ln(-1.0, 0.0), std::domain_error);
}

TEST_CASE("su2_alpha uniformization") {
  // theta' = 0 gives the identity matrix
  const auto id = su2_alpha(0.0, {0.0, 0.0, 1.0}, 0.3);
  CHECK(std::abs(id.matrix[0] - cplx(1.0)) < 1e-14);
  CHECK(std::abs(id.matrix[1]) < 1e-14);
  CHECK(std::abs(id.matrix[2]) < 1e-14);
  CHECK(std::abs(id.matrix[3] - cplx(1.0)) < 1e-14);

  // alpha = 0, theta' = pi about z: diag(i, -i)
  const auto rot = su2_alpha(kTwoPi / 2.0, {0.0, 0.0, 1.0}, 0.0);
  CHECK(std::abs(rot.matrix[0] - kI) < 1e-14);
  CHECK(std::abs(rot.matrix[3] + kI) < 1e-14);

  CHECK_THROWS_AS(su2_alpha(1.0, {0.0, 0.0, 2.0}, 0.3), std::domain_error);
}

TEST_CASE("su2_alpha elements are unitary with unit determinant") {
  const auto angles = seeded_sampler(42, 0.0, 2.0 * kTwoPi, 500);
  const auto axes = seeded_sampler(43, -1.0, 1.0, 3 * 500);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    std::array<double, 3> axis{axes[3 * i], axes[3 * i + 1], axes[3 * i + 2]};
    const double norm =
        std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (norm < 1e-3) continue;
    for (double& a : axis) a /= norm;
    const auto el = su2_alpha(angles[i], axis, 0.3);
    const cplx det =
        el.matrix[0] * el.matrix[3] - el.matrix[1] * el.matrix[2];
    CHECK(std::abs(det - cplx(1.0)) < 1e-12);
    // rows of a unitary matrix are orthonormal
    const double row0 = std::norm(el.matrix[0]) + std::norm(el.matrix[1]);
    const double row1 = std::norm(el.matrix[2]) + std::norm(el.matrix[3]);
    const cplx cross = el.matrix[0] * std::conj(el.matrix[2]) +
                       el.matrix[1] * std::conj(el.matrix[3]);
    CHECK(std::abs(row0 - 1.0) < 1e-12);
    CHECK(std::abs(row1 - 1.0) < 1e-12);
    CHECK(std::abs(cross) < 1e-12);
  }
}

TEST_CASE("axiom fuzz meets the group tolerances") {
  for (double alpha : {0.1, -0.1, 0.3, -0.3, 1.0 / 137.0}) {
    const auto report = axiom_fuzz(alpha, 10000, 1);
    CHECK(report.identity < 1e-12);
    CHECK(report.inverse < 1e-12);
    CHECK(report.associativity < 1e-12);
    CHECK(report.pythagorean < 1e-12);
    CHECK(report.circle < 1e-12);
    CHECK(report.euler < 1e-13);
  }
}

TEST_CASE("the two addition operations coincide only at alpha = 0") {
  const auto at_zero = axiom_fuzz(0.0, 2000, 2);
  CHECK(at_zero.oplus_mismatch_max < 1e-12);
  const auto deformed = axiom_fuzz(0.3, 2000, 2);
  CHECK(deformed.oplus_mismatch_max > 1e-3);
  CHECK(deformed.oplus_mismatch_mean > 1e-4);
  CHECK(deformed.oplus_mismatch_mean <= deformed.oplus_mismatch_max);
}

TEST_SUITE_END();
