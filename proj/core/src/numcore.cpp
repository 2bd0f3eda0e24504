#include "bitrial/numcore.hpp"

#include <cmath>
#include <random>

namespace bitrial {

PeriodicGrid::PeriodicGrid(int node_count) : node_count_(node_count) {
  if (node_count < 4) {
    throw std::invalid_argument("PeriodicGrid: node_count must be >= 4, got " +
                                std::to_string(node_count));
  }
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(node_count_));
  for (int j = 0; j < node_count_; ++j) out[static_cast<std::size_t>(j)] = node(j);
  return out;
}

cplx quad_periodic(const std::function<cplx(double)>& evaluate,
                   const PeriodicGrid& grid) {
  cplx sum = 0.0;
  for (int j = 0; j < grid.node_count(); ++j) {
    const cplx value = evaluate(grid.node(j));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::domain_error("quad_periodic: non-finite integrand at node " +
                              std::to_string(j) + " (theta = " +
                              std::to_string(grid.node(j)) + ")");
    }
    sum += value;
  }
  return sum * grid.spacing();
}

namespace {

template <typename T>
std::vector<T> fd_apply_impl(std::span<const T> samples, double spacing,
                             int order) {
  if (samples.size() < 5) {
    throw std::invalid_argument("fd_apply: need at least 5 samples, got " +
                                std::to_string(samples.size()));
  }
  if (spacing <= 0.0) {
    throw std::invalid_argument("fd_apply: spacing must be positive");
  }
  if (order != 1 && order != 2) {
    throw std::invalid_argument("fd_apply: order must be 1 or 2");
  }
  const std::size_t n = samples.size();
  std::vector<T> out(n - 2);
  if (order == 1) {
    const double inv = 1.0 / (2.0 * spacing);
    for (std::size_t i = 1; i + 1 < n; ++i)
      out[i - 1] = (samples[i + 1] - samples[i - 1]) * inv;
  } else {
    const double inv = 1.0 / (spacing * spacing);
    for (std::size_t i = 1; i + 1 < n; ++i)
      out[i - 1] = (samples[i + 1] - 2.0 * samples[i] + samples[i - 1]) * inv;
  }
  return out;
}

}  // namespace

std::vector<cplx> fd_apply(std::span<const cplx> samples, double spacing,
                           int order) {
  return fd_apply_impl(samples, spacing, order);
}

std::vector<double> fd_apply(std::span<const double> samples, double spacing,
                             int order) {
  return fd_apply_impl(samples, spacing, order);
}

cplx contour_moment_oracle(int k, double alpha) {
  if (std::abs(alpha) >= 1.0) {
    throw std::domain_error(
        "contour_moment_oracle: |alpha| must be < 1 (pole on or inside the "
        "unit circle)");
  }
  if (k == 0) return cplx(kTwoPi, 0.0);
  if (k >= 1) return cplx(0.0, 0.0);
  const double ratio = alpha / (1.0 - alpha * alpha);
  return cplx(kTwoPi * std::pow(ratio, -k), 0.0);
}

std::vector<double> seeded_sampler(std::uint64_t seed, double low, double high,
                                   int count) {
  if (count < 1) {
    throw std::invalid_argument("seeded_sampler: count must be >= 1");
  }
  if (!(low < high)) {
    throw std::invalid_argument("seeded_sampler: requires low < high");
  }
  std::mt19937_64 engine(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& v : out) {
    // top 53 bits -> [0, 1); avoids the implementation-defined
    // std::uniform_real_distribution
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    v = low + u * (high - low);
  }
  return out;
}

}  // namespace bitrial
