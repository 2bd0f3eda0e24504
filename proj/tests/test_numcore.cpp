#include "bitrial/numcore.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

using namespace bitrial;

namespace {
constexpr cplx kI(0.0, 1.0);
}

TEST_SUITE_BEGIN("numcore");

TEST_CASE("periodic grid invariants") {
  const PeriodicGrid grid(64);
  CHECK(grid.node_count() == 64);
  CHECK(grid.spacing() == doctest::Approx(kTwoPi / 64).epsilon(1e-15));
  const auto nodes = grid.nodes();
  REQUIRE(nodes.size() == 64);
  CHECK(nodes.front() == 0.0);
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    CHECK(nodes[j] > nodes[j - 1]);
    CHECK(nodes[j] < kTwoPi);
  }
  CHECK_THROWS_AS(PeriodicGrid(3), std::invalid_argument);
}

TEST_CASE("quadrature of a constant is 2 pi") {
  const PeriodicGrid grid(64);
  const cplx value = quad_periodic([](double) { return cplx(1.0); }, grid);
  CHECK(std::abs(value - cplx(kTwoPi)) < 1e-14);
}

TEST_CASE("quadrature of a full-period oscillation vanishes") {
  const PeriodicGrid grid(64);
  const cplx value =
      quad_periodic([](double t) { return std::exp(kI * t); }, grid);
  CHECK(std::abs(value) < 1e-14);
}

TEST_CASE("quadrature matches the residue values for the bitrial kernels") {
  const PeriodicGrid grid(256);
  // 1/(e^{-it} + a) = sum_{k>=0} (-a)^k e^{i(k+1)t}: no constant term
  const cplx no_mean = quad_periodic(
      [](double t) { return 1.0 / (std::exp(-kI * t) + 0.3); }, grid);
  CHECK(std::abs(no_mean) < 1e-13);
  // 1/(1 + a e^{-it}) = sum_{k>=0} (-a)^k e^{-ikt}: constant term 1
  const cplx mean_one = quad_periodic(
      [](double t) { return 1.0 / (1.0 + 0.3 * std::exp(-kI * t)); }, grid);
  CHECK(std::abs(mean_one - cplx(kTwoPi)) < 1e-13);
}

TEST_CASE("quadrature is exact for trigonometric polynomials") {
  const PeriodicGrid grid(64);
  const auto coeffs = seeded_sampler(42, -1.0, 1.0, 40);
  // degree-10 polynomial, well below node_count / 2
  const auto poly = [&](double t) {
    cplx sum = coeffs[0];
    for (int k = 1; k <= 10; ++k) {
      sum += cplx(coeffs[static_cast<std::size_t>(2 * k)],
                  coeffs[static_cast<std::size_t>(2 * k + 1)]) *
             std::exp(kI * static_cast<double>(k) * t);
      sum += cplx(coeffs[static_cast<std::size_t>(2 * k + 1)],
                  coeffs[static_cast<std::size_t>(2 * k)]) *
             std::exp(-kI * static_cast<double>(k) * t);
    }
    return sum;
  };
  // exact integral: 2 pi times the constant coefficient
  const cplx expected = kTwoPi * coeffs[0];
  CHECK(std::abs(quad_periodic(poly, grid) - expected) < 1e-12);
}

TEST_CASE("quadrature rejects non-finite samples naming the node") {
  const PeriodicGrid grid(8);
  CHECK_THROWS_WITH_AS(
      quad_periodic(
          [](double t) {
            return t == 0.0 ? cplx(std::numeric_limits<double>::infinity())
                            : cplx(1.0);
          },
          grid),
      doctest::Contains("node 0"), std::domain_error);
}

TEST_CASE("fd_apply is exact on quadratics") {
  std::vector<cplx> samples;
  const double h = 0.1;
  for (int i = 0; i < 9; ++i) {
    const double z = i * h;
    samples.push_back(z * z);
  }
  const auto d2 = fd_apply(std::span<const cplx>(samples), h, 2);
  REQUIRE(d2.size() == samples.size() - 2);
  for (const cplx& v : d2) CHECK(std::abs(v - cplx(2.0)) < 1e-12);
}

TEST_CASE("fd_apply first derivative of exp matches the analytic value") {
  std::vector<cplx> samples;
  const double h = 1e-3;
  const int n = 1001;
  for (int i = 0; i < n; ++i) samples.push_back(std::exp(i * h));
  const auto d1 = fd_apply(std::span<const cplx>(samples), h, 1);
  for (int i = 1; i + 1 < n; ++i) {
    const double exact = std::exp(i * h);
    CHECK(std::abs(d1[static_cast<std::size_t>(i - 1)] - exact) / exact < 1e-6);
  }
}

TEST_CASE("fd_apply of constants is zero") {
  const std::vector<cplx> samples(16, cplx(3.25));
  for (const cplx& v : fd_apply(std::span<const cplx>(samples), 0.5, 1)) {
    CHECK(std::abs(v) == 0.0);
  }
}

TEST_CASE("fd_apply rejects short inputs and bad orders") {
  const std::vector<cplx> four(4, cplx(1.0));
  CHECK_THROWS_AS(fd_apply(std::span<const cplx>(four), 0.1, 1),
                  std::invalid_argument);
  const std::vector<cplx> five(5, cplx(1.0));
  CHECK_THROWS_AS(fd_apply(std::span<const cplx>(five), 0.1, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(fd_apply(std::span<const cplx>(five), -0.1, 1),
                  std::invalid_argument);
}

TEST_CASE("fd_apply second-order convergence on sin") {
  const auto max_error = [](int n) {
    const double h = kTwoPi / n;
    std::vector<double> samples;
    for (int i = 0; i <= n; ++i) samples.push_back(std::sin(i * h));
    const auto d2 = fd_apply(std::span<const double>(samples), h, 2);
    double err = 0.0;
    for (int i = 1; i < n; ++i) {
      err = std::max(err,
                     std::abs(d2[static_cast<std::size_t>(i - 1)] + std::sin(i * h)));
    }
    return err;
  };
  const double coarse = max_error(128);
  const double fine = max_error(256);
  const double factor = coarse / fine;
  CHECK(factor > 3.6);
  CHECK(factor < 4.4);
}

TEST_CASE("contour moment oracle closed forms") {
  CHECK(std::abs(contour_moment_oracle(0, 0.3) - cplx(kTwoPi)) < 1e-15);
  // residue at z = 0: 2 pi (alpha/(1-alpha^2))^{|k|}
  CHECK(std::abs(contour_moment_oracle(-1, 0.3) -
                 cplx(kTwoPi * 0.3 / 0.91)) < 1e-14);
  CHECK(std::abs(contour_moment_oracle(2, 0.3)) == 0.0);
  CHECK_THROWS_AS(contour_moment_oracle(0, 1.0), std::domain_error);
  CHECK_THROWS_AS(contour_moment_oracle(2, -1.5), std::domain_error);
}

TEST_CASE("contour moment oracle agrees with brute-force quadrature") {
  // the quadrature at 4096 nodes is the ground truth of record
  const PeriodicGrid grid(4096);
  for (double alpha : {0.0, 0.1, -0.1, 0.3, -0.3, 1.0 / 137.0}) {
    for (int k = -6; k <= 6; ++k) {
      const cplx direct = quad_periodic(
          [&](double t) {
            const cplx base =
                (1.0 - alpha * alpha) / (std::exp(-kI * t) + alpha);
            return std::pow(base, k);
          },
          grid);
      CHECK(std::abs(direct - contour_moment_oracle(k, alpha)) < 1e-10);
    }
  }
}

TEST_CASE("seeded sampler determinism") {
  const auto a = seeded_sampler(1, 0.0, 1.0, 3);
  const auto b = seeded_sampler(1, 0.0, 1.0, 3);
  CHECK(a == b);
  // frozen reference triple for seed 1
  CHECK(a[0] == doctest::Approx(0.13387664401253263).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(0.13640703636619722).epsilon(1e-15));
  CHECK(a[2] == doctest::Approx(0.45121490384453811).epsilon(1e-15));
}

TEST_CASE("seeded sampler bounds and errors") {
  const auto values = seeded_sampler(9, -2.0, 3.0, 1000);
  for (double v : values) {
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
  CHECK_THROWS_AS(seeded_sampler(1, 0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(seeded_sampler(1, 1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("tolerance validity") {
  CHECK(Tolerance{}.valid());
  CHECK(Tolerance{0.0, 1e-8}.valid());
  CHECK_FALSE(Tolerance{0.0, 0.0}.valid());
}

TEST_SUITE_END();
