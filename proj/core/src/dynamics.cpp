#include "bitrial/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bitrial {

namespace {

constexpr double kPoleTolerance = 1e-15;
// ln of the smallest positive double; caps individual log|f'| terms.
constexpr double kLogTermFloor = -745.0;

void check_pole(double denominator, const char* where) {
  if (std::abs(denominator) < kPoleTolerance) {
    throw singularity_error(std::string(where) + ": denominator vanishes");
  }
}

}  // namespace

const char* to_string(StepRule rule) {
  switch (rule) {
    case StepRule::vrp: return "vrp";
    case StepRule::four_rats: return "four_rats";
    case StepRule::limit_map: return "limit_map";
  }
  return "?";
}

std::optional<StepRule> step_rule_from_string(const std::string& name) {
  if (name == "vrp") return StepRule::vrp;
  if (name == "four_rats") return StepRule::four_rats;
  if (name == "limit_map") return StepRule::limit_map;
  return std::nullopt;
}

const char* to_string(SweepParam param) {
  switch (param) {
    case SweepParam::q: return "q";
    case SweepParam::q1: return "q1";
    case SweepParam::phi: return "phi";
    case SweepParam::mu: return "mu";
    case SweepParam::alpha: return "alpha";
  }
  return "?";
}

std::optional<SweepParam> sweep_param_from_string(const std::string& name) {
  if (name == "q") return SweepParam::q;
  if (name == "q1") return SweepParam::q1;
  if (name == "phi") return SweepParam::phi;
  if (name == "mu") return SweepParam::mu;
  if (name == "alpha") return SweepParam::alpha;
  return std::nullopt;
}

void set_param(MapParams& p, SweepParam param, double value) {
  switch (param) {
    case SweepParam::q: p.q = value; return;
    case SweepParam::q1: p.q1 = value; return;
    case SweepParam::phi: p.phi = value; return;
    case SweepParam::mu: p.mu = value; return;
    case SweepParam::alpha: p.alpha = value; return;
  }
}

double vrp_step(double x, const MapParams& p) {
  if (x == 0.0 && p.phi < 0.0) {
    throw singularity_error("vrp_step: x = 0 with negative Phi");
  }
  const double den = std::exp(x) + p.alpha;
  check_pole(den, "vrp_step");
  return p.q * std::pow(x, p.phi) / den;
}

double vrp_derivative(double x, const MapParams& p) {
  if (x == 0.0 && p.phi < 1.0) {
    throw singularity_error("vrp_derivative: x = 0 with Phi < 1");
  }
  const double ex = std::exp(x);
  const double den = ex + p.alpha;
  check_pole(den, "vrp_derivative");
  // d/dx [q x^Phi / (e^x + alpha)]
  return p.q * std::pow(x, p.phi - 1.0) * (p.phi * den - x * ex) / (den * den);
}

double four_rats_step(double r, const MapParams& p) {
  if (r == 0.0) throw singularity_error("four_rats_step: r = 0");
  const double den = std::exp(p.mu * r) + p.alpha;
  check_pole(den, "four_rats_step");
  return 2.0 * p.q1 * p.mu / (r * r * den);
}

double limit_map_step(double y, const MapParams& p) {
  if (y == 0.0) throw singularity_error("limit_map_step: y = 0");
  const double den = std::exp(y) + p.alpha;
  check_pole(den, "limit_map_step");
  return -2.0 * p.q1 * p.mu * p.mu * p.mu / (y * y * den);
}

namespace {

double four_rats_derivative(double r, const MapParams& p) {
  if (r == 0.0) throw singularity_error("four_rats_derivative: r = 0");
  const double e = std::exp(p.mu * r);
  const double den = e + p.alpha;
  check_pole(den, "four_rats_derivative");
  const double f = 2.0 * p.q1 * p.mu / (r * r * den);
  return f * (-2.0 / r - p.mu * e / den);
}

double limit_map_derivative(double y, const MapParams& p) {
  if (y == 0.0) throw singularity_error("limit_map_derivative: y = 0");
  const double e = std::exp(y);
  const double den = e + p.alpha;
  check_pole(den, "limit_map_derivative");
  const double f = -2.0 * p.q1 * p.mu * p.mu * p.mu / (y * y * den);
  return f * (-2.0 / y - e / den);
}

}  // namespace

double map_step(StepRule rule, double x, const MapParams& p) {
  switch (rule) {
    case StepRule::vrp: return vrp_step(x, p);
    case StepRule::four_rats: return four_rats_step(x, p);
    case StepRule::limit_map: return limit_map_step(x, p);
  }
  throw std::invalid_argument("map_step: unknown rule");
}

double map_derivative(StepRule rule, double x, const MapParams& p) {
  switch (rule) {
    case StepRule::vrp: return vrp_derivative(x, p);
    case StepRule::four_rats: return four_rats_derivative(x, p);
    case StepRule::limit_map: return limit_map_derivative(x, p);
  }
  throw std::invalid_argument("map_derivative: unknown rule");
}

Orbit iterate_orbit(double x0, const MapParams& p, StepRule rule,
                    int n_transient, int n_keep) {
  if (n_transient < 0) throw std::invalid_argument("iterate_orbit: n_transient < 0");
  if (n_keep < 1) throw std::invalid_argument("iterate_orbit: n_keep < 1");
  Orbit orbit;
  orbit.samples.reserve(static_cast<std::size_t>(n_keep));
  double x = x0;
  const long total = static_cast<long>(n_transient) + n_keep;
  for (long k = 0; k < total; ++k) {
    double next;
    try {
      next = map_step(rule, x, p);
    } catch (const singularity_error&) {
      orbit.diverged = true;
      orbit.diverged_at = static_cast<std::size_t>(k);
      return orbit;
    }
    if (!std::isfinite(next) || std::abs(next) > kDivergenceThreshold) {
      orbit.diverged = true;
      orbit.diverged_at = static_cast<std::size_t>(k);
      return orbit;
    }
    x = next;
    if (k >= n_transient) orbit.samples.push_back(x);
  }
  return orbit;
}

int count_branches(std::span<const double> samples, const Tolerance& tol) {
  if (samples.empty()) {
    throw std::invalid_argument("count_branches: empty sample set");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("count_branches: non-finite sample");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  int clusters = 1;
  double representative = sorted.front();
  for (double v : sorted) {
    if (v - representative > tol.absolute) {
      ++clusters;
      representative = v;
    }
  }
  return clusters;
}

double lyapunov_exponent(double x0, const MapParams& p, StepRule rule, int n) {
  if (n < 1000) throw std::invalid_argument("lyapunov_exponent: n must be >= 1000");
  constexpr int kTransient = 1000;
  const double inf = std::numeric_limits<double>::infinity();
  double x = x0;
  try {
    for (int k = 0; k < kTransient; ++k) {
      x = map_step(rule, x, p);
      if (!std::isfinite(x) || std::abs(x) > kDivergenceThreshold) return inf;
    }
    long double sum = 0.0L;
    for (int k = 0; k < n; ++k) {
      const double d = map_derivative(rule, x, p);
      double term = std::log(std::abs(d));
      if (std::isnan(term)) return inf;
      sum += std::max(term, kLogTermFloor);
      x = map_step(rule, x, p);
      if (!std::isfinite(x) || std::abs(x) > kDivergenceThreshold) return inf;
    }
    return std::max(static_cast<double>(sum / n), kLyapunovFloor);
  } catch (const singularity_error&) {
    return inf;
  }
}

double scan_initial_state(StepRule rule) {
  return rule == StepRule::vrp ? 0.5 : 1.0;
}

ScanCell bifurcation_cell(const MapParams& p, SweepParam control, double value,
                          StepRule rule, int n_transient, int n_keep,
                          const Tolerance& tol,
                          std::optional<std::uint64_t> restart_seed,
                          int cell_index) {
  if (!tol.valid()) {
    throw std::invalid_argument("bifurcation_cell: invalid tolerance");
  }
  MapParams cell = p;
  set_param(cell, control, value);
  double x0 = scan_initial_state(rule);
  if (restart_seed) {
    x0 = seeded_sampler(*restart_seed + static_cast<std::uint64_t>(cell_index),
                        0.1, 3.0, 1)[0];
  }
  Orbit orbit = iterate_orbit(x0, cell, rule, n_transient, n_keep);
  ScanCell out;
  out.control_value = value;
  out.branch_count = orbit.diverged ? 0 : count_branches(orbit.samples, tol);
  out.samples = std::move(orbit.samples);
  return out;
}

BifurcationDiagram bifurcation_scan(const MapParams& p, SweepParam control,
                                    double low, double high, int grid_points,
                                    StepRule rule, int n_transient, int n_keep,
                                    const Tolerance& tol,
                                    std::optional<std::uint64_t> restart_seed) {
  if (grid_points < 2) {
    throw std::invalid_argument("bifurcation_scan: grid_points must be >= 2");
  }
  BifurcationDiagram diagram;
  diagram.control_values.reserve(static_cast<std::size_t>(grid_points));
  diagram.attractor_samples.reserve(static_cast<std::size_t>(grid_points));
  diagram.branch_counts.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double value = low + (high - low) * i / (grid_points - 1);
    ScanCell cell = bifurcation_cell(p, control, value, rule, n_transient,
                                     n_keep, tol, restart_seed, i);
    diagram.control_values.push_back(cell.control_value);
    diagram.attractor_samples.push_back(std::move(cell.samples));
    diagram.branch_counts.push_back(cell.branch_count);
  }
  return diagram;
}

double chaotic_fraction(const MapParams& p, SweepParam control, double low,
                        double high, int grid_points, StepRule rule,
                        int lyapunov_n) {
  if (grid_points < 2) {
    throw std::invalid_argument("chaotic_fraction: grid_points must be >= 2");
  }
  int positive = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double value = low + (high - low) * i / (grid_points - 1);
    MapParams cell = p;
    set_param(cell, control, value);
    const double lambda =
        lyapunov_exponent(scan_initial_state(rule), cell, rule, lyapunov_n);
    if (std::isfinite(lambda) && lambda > 0.0) ++positive;
  }
  return static_cast<double>(positive) / grid_points;
}

}  // namespace bitrial
