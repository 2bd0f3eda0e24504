#pragma once

// The VRP family of one-dimensional maps
//
//   vrp:        x_{n+1} = q x^Phi / (e^x + alpha)
//   four_rats:  r_{n+1} = 2 q1 mu / (r^2 (e^{mu r} + alpha))
//   limit_map:  y_{n+1} = -2 q1 mu^3 / (y^2 (e^y + alpha))
//
// plus orbits, branch counting, Lyapunov exponents and bifurcation scans.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bitrial/numcore.hpp"

namespace bitrial {

struct MapParams {
  double q = 0.0;      // growth factor
  double q1 = 0.0;     // source strength
  double phi = 1.0;    // exponent Phi
  double mu = 1.0;     // scale, > 0 where used
  double alpha = 0.0;  // symmetry-breaking parameter
};

enum class StepRule { vrp, four_rats, limit_map };

const char* to_string(StepRule rule);
std::optional<StepRule> step_rule_from_string(const std::string& name);

// Orbits stopping here are flagged diverged and truncated.
inline constexpr double kDivergenceThreshold = 1e100;
// Reported Lyapunov exponents never go below this (superstable orbits).
inline constexpr double kLyapunovFloor = -50.0;

double vrp_step(double x, const MapParams& p);
double vrp_derivative(double x, const MapParams& p);
double four_rats_step(double r, const MapParams& p);
double limit_map_step(double y, const MapParams& p);

double map_step(StepRule rule, double x, const MapParams& p);
double map_derivative(StepRule rule, double x, const MapParams& p);

struct Orbit {
  std::vector<double> samples;  // post-transient states, iteration order
  bool diverged = false;
  std::optional<std::size_t> diverged_at;  // step index of the failure
};

// Iterates n_transient + n_keep steps from x0 and keeps the last n_keep
// states.  Singularities and overflow set the diverged marker and truncate.
Orbit iterate_orbit(double x0, const MapParams& p, StepRule rule,
                    int n_transient, int n_keep);

// Number of distinct values after single-pass merging of the sorted samples
// with the absolute tolerance.  A period-k attractor yields k.
int count_branches(std::span<const double> samples, const Tolerance& tol);

// (1/n) sum of ln|f'(x_k)| after a 1000-step transient.  Divergence is
// reported as +infinity, superstable collapse is floored at kLyapunovFloor.
double lyapunov_exponent(double x0, const MapParams& p, StepRule rule, int n);

enum class SweepParam { q, q1, phi, mu, alpha };

const char* to_string(SweepParam param);
std::optional<SweepParam> sweep_param_from_string(const std::string& name);

void set_param(MapParams& p, SweepParam param, double value);

struct BifurcationDiagram {
  std::vector<double> control_values;
  std::vector<std::vector<double>> attractor_samples;
  std::vector<int> branch_counts;  // 0 marks a diverged cell
};

struct ScanCell {
  double control_value = 0.0;
  std::vector<double> samples;
  int branch_count = 0;
};

// One column of a bifurcation scan; cell_index only feeds the optional
// per-cell random restart.
ScanCell bifurcation_cell(const MapParams& p, SweepParam control, double value,
                          StepRule rule, int n_transient, int n_keep,
                          const Tolerance& tol,
                          std::optional<std::uint64_t> restart_seed,
                          int cell_index);

// Initial-condition policy: x0 = 0.5 for the vrp rule, 1.0 otherwise,
// constant across the sweep.  Passing restart_seed draws instead a
// deterministic per-cell start from (0.1, 3).
BifurcationDiagram bifurcation_scan(
    const MapParams& p, SweepParam control, double low, double high,
    int grid_points, StepRule rule, int n_transient, int n_keep,
    const Tolerance& tol,
    std::optional<std::uint64_t> restart_seed = std::nullopt);

double scan_initial_state(StepRule rule);

// Fraction of control-grid cells with a positive Lyapunov exponent.
double chaotic_fraction(const MapParams& p, SweepParam control, double low,
                        double high, int grid_points, StepRule rule,
                        int lyapunov_n);

}  // namespace bitrial
