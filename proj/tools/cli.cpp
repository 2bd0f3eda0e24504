#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "bitrial/dynamics.hpp"
#include "bitrial/fieldeq.hpp"
#include "bitrial/malgebra.hpp"
#include "bitrial/mfourier.hpp"
#include "bitrial/numcore.hpp"

namespace bitrial::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_double(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for --" + name + ": '" + text +
                      "'");
  }
}

long parse_long(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for --" + name + ": '" + text +
                      "'");
  }
}

struct Range {
  double low = 0.0;
  double high = 0.0;
  int count = 0;
};

// "low:high:count" with count >= 2
Range parse_range(const std::string& text, const std::string& name) {
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos ||
      text.find(':', second + 1) != std::string::npos) {
    throw ConfigError("invalid range for --" + name + ": '" + text +
                      "' (expected low:high:count)");
  }
  Range range;
  range.low = parse_double(text.substr(0, first), name);
  range.high = parse_double(text.substr(first + 1, second - first - 1), name);
  const long count = parse_long(text.substr(second + 1), name);
  if (count < 2) {
    throw ConfigError("range for --" + name + " needs count >= 2");
  }
  if (!(range.low <= range.high)) {
    throw ConfigError("range for --" + name + " needs low <= high");
  }
  range.count = static_cast<int>(count);
  return range;
}

bool is_range(const std::string& text) {
  return text.find(':') != std::string::npos;
}

std::vector<int> parse_ladder(const std::string& text) {
  std::vector<int> ladder;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    ladder.push_back(static_cast<int>(parse_long(item, "ladder")));
  }
  if (ladder.size() < 2) {
    throw ConfigError("--ladder needs at least two node counts");
  }
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) {
      throw ConfigError("--ladder node counts must increase");
    }
  }
  return ladder;
}

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("BITRIAL_WORKERS")) {
    const std::string text(env);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
      throw ConfigError("BITRIAL_WORKERS must be a positive integer");
    }
    return value;
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : static_cast<int>(hardware);
}

// Index-sharded worker pool; each index is computed identically no matter
// which thread picks it up, so output bytes do not depend on the count.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

MapParams map_params_from(const RunConfig& config) {
  MapParams p;
  p.q = parse_double(config.parameters.at("q"), "q");
  p.q1 = parse_double(config.parameters.at("q1"), "q1");
  p.phi = parse_double(config.parameters.at("phi"), "phi");
  p.mu = parse_double(config.parameters.at("mu"), "mu");
  p.alpha = parse_double(config.parameters.at("alpha"), "alpha");
  return p;
}

StepRule rule_from(const RunConfig& config) {
  const std::string& name = config.parameters.at("map");
  const auto rule = step_rule_from_string(name);
  if (!rule) {
    throw ConfigError("unknown map '" + name +
                      "' (expected vrp, four_rats or limit_map)");
  }
  return *rule;
}

// Finds the one swept parameter among q, q1, phi, mu, alpha.
std::pair<SweepParam, Range> control_from(const RunConfig& config) {
  std::optional<std::pair<SweepParam, Range>> control;
  for (const char* name : {"q", "q1", "phi", "mu", "alpha"}) {
    const std::string& text = config.parameters.at(name);
    if (!is_range(text)) continue;
    if (control) {
      throw ConfigError("only one parameter may carry a low:high:count range");
    }
    control = {*sweep_param_from_string(name), parse_range(text, name)};
  }
  if (!control) {
    throw ConfigError(
        "one of --q --q1 --phi --mu --alpha must be a low:high:count range");
  }
  return *control;
}

MapParams scalar_params_from(const RunConfig& config, SweepParam control) {
  MapParams p;
  for (const char* name : {"q", "q1", "phi", "mu", "alpha"}) {
    const SweepParam param = *sweep_param_from_string(name);
    if (param == control) continue;
    set_param(p, param, parse_double(config.parameters.at(name), name));
  }
  return p;
}

std::string map_comment(const RunConfig& config, SweepParam control,
                        const MapParams& base) {
  std::string line = "# map rule=" + config.parameters.at("map") +
                     " control=" + to_string(control);
  line += " q=" + fmt(base.q) + " q1=" + fmt(base.q1) +
          " phi=" + fmt(base.phi) + " mu=" + fmt(base.mu) +
          " alpha=" + fmt(base.alpha);
  return line + "\n";
}

std::optional<std::uint64_t> restart_seed_from(const RunConfig& config) {
  const std::string& text = config.parameters.at("restart-seed");
  if (text == "none") return std::nullopt;
  const long value = parse_long(text, "restart-seed");
  if (value < 0) throw ConfigError("--restart-seed must be non-negative");
  return static_cast<std::uint64_t>(value);
}

// ---------------------------------------------------------------------------

std::string run_bifurcate(const RunConfig& config, int workers) {
  const StepRule rule = rule_from(config);
  const auto [control, range] = control_from(config);
  const MapParams base = scalar_params_from(config, control);
  const int transient =
      static_cast<int>(parse_long(config.parameters.at("transient"), "transient"));
  const int keep = static_cast<int>(parse_long(config.parameters.at("keep"), "keep"));
  const Tolerance tol{parse_double(config.parameters.at("tol"), "tol"), 0.0};
  const auto restart = restart_seed_from(config);
  if (transient < 0 || keep < 1) {
    throw ConfigError("--transient must be >= 0 and --keep >= 1");
  }

  std::vector<ScanCell> cells(static_cast<std::size_t>(range.count));
  parallel_for(range.count, workers, [&](int i) {
    const double value =
        range.low + (range.high - range.low) * i / (range.count - 1);
    cells[static_cast<std::size_t>(i)] = bifurcation_cell(
        base, control, value, rule, transient, keep, tol, restart, i);
  });

  std::string out = "# bitrial bifurcate\n# config " + config_json(config) +
                    "\n" + map_comment(config, control, base);
  out += "control_value,sample_index,state,branch_count\n";
  for (const auto& cell : cells) {
    for (std::size_t s = 0; s < cell.samples.size(); ++s) {
      out += fmt(cell.control_value);
      out += ',';
      out += std::to_string(s);
      out += ',';
      out += fmt(cell.samples[s]);
      out += ',';
      out += std::to_string(cell.branch_count);
      out += '\n';
    }
    if (cell.samples.empty()) {
      out += fmt(cell.control_value);
      out += ",,,0\n";
    }
  }
  return out;
}

std::string run_lyapunov(const RunConfig& config, int workers) {
  const StepRule rule = rule_from(config);
  const auto [control, range] = control_from(config);
  const MapParams base = scalar_params_from(config, control);
  const int n = static_cast<int>(parse_long(config.parameters.at("n"), "n"));
  if (n < 1000) throw ConfigError("--n must be >= 1000");

  std::vector<double> lambdas(static_cast<std::size_t>(range.count));
  parallel_for(range.count, workers, [&](int i) {
    const double value =
        range.low + (range.high - range.low) * i / (range.count - 1);
    MapParams cell = base;
    set_param(cell, control, value);
    lambdas[static_cast<std::size_t>(i)] =
        lyapunov_exponent(scan_initial_state(rule), cell, rule, n);
  });

  std::string out = "# bitrial lyapunov\n# config " + config_json(config) +
                    "\n" + map_comment(config, control, base);
  out += "control_value,lambda\n";
  for (int i = 0; i < range.count; ++i) {
    const double value =
        range.low + (range.high - range.low) * i / (range.count - 1);
    out += fmt(value);
    out += ',';
    out += fmt(lambdas[static_cast<std::size_t>(i)]);
    out += '\n';
  }
  return out;
}

std::string run_orbit(const RunConfig& config, int) {
  const StepRule rule = rule_from(config);
  MapParams p;
  for (const char* name : {"q", "q1", "phi", "mu", "alpha"}) {
    const std::string& text = config.parameters.at(name);
    if (is_range(text)) {
      throw ConfigError("orbit takes scalar parameters only");
    }
    set_param(p, *sweep_param_from_string(name), parse_double(text, name));
  }
  const int steps = static_cast<int>(parse_long(config.parameters.at("steps"), "steps"));
  const int transient =
      static_cast<int>(parse_long(config.parameters.at("transient"), "transient"));
  if (steps < 1 || transient < 0) {
    throw ConfigError("--steps must be >= 1 and --transient >= 0");
  }
  const std::string& x0_text = config.parameters.at("x0");
  const double x0 = x0_text == "auto" ? scan_initial_state(rule)
                                      : parse_double(x0_text, "x0");

  const Orbit orbit = iterate_orbit(x0, p, rule, transient, steps);
  std::string out = "# bitrial orbit\n# config " + config_json(config) + "\n";
  out += "# map rule=" + config.parameters.at("map") + " q=" + fmt(p.q) +
         " q1=" + fmt(p.q1) + " phi=" + fmt(p.phi) + " mu=" + fmt(p.mu) +
         " alpha=" + fmt(p.alpha) + " x0=" + fmt(x0) + "\n";
  out += "index,state\n";
  for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += fmt(orbit.samples[i]);
    out += '\n';
  }
  if (orbit.diverged) {
    out += "# diverged_at ";
    out += std::to_string(*orbit.diverged_at);
    out += '\n';
  }
  return out;
}

std::string run_gram(const RunConfig& config, int) {
  const std::string& convention_name = config.parameters.at("convention");
  GramConvention convention;
  if (convention_name == "same_sign") {
    convention = GramConvention::same_sign;
  } else if (convention_name == "conjugate") {
    convention = GramConvention::conjugate;
  } else {
    throw ConfigError("unknown convention '" + convention_name +
                      "' (expected same_sign or conjugate)");
  }
  const double alpha = parse_double(config.parameters.at("alpha"), "alpha");
  const int n_min = static_cast<int>(parse_long(config.parameters.at("nmin"), "nmin"));
  const int n_max = static_cast<int>(parse_long(config.parameters.at("nmax"), "nmax"));
  const int nodes = static_cast<int>(parse_long(config.parameters.at("nodes"), "nodes"));
  if (n_min > n_max) throw ConfigError("--nmin must be <= --nmax");
  if (std::abs(alpha) >= 1.0) throw ConfigError("--alpha must satisfy |alpha| < 1");
  if (nodes < 4) throw ConfigError("--nodes must be >= 4");

  const PeriodicGrid grid(nodes);
  const GramMatrix gram = build_gram(convention, n_min, n_max, alpha, grid);

  // values the text claims: same-sign 2 pi on the diagonal,
  // 2 pi alpha/(1-alpha^2) on m = n+1, zero elsewhere; conjugate zero off
  // the diagonal, nothing stated on it
  const auto paper_value = [&](int n, int m) -> std::optional<double> {
    if (convention == GramConvention::same_sign) {
      if (m == n) return kTwoPi;
      if (m == n + 1) return kTwoPi * alpha / (1.0 - alpha * alpha);
      return 0.0;
    }
    if (m != n) return 0.0;
    return std::nullopt;
  };

  std::string out = "# bitrial gram\n# config " + config_json(config) + "\n";
  out += "n,m,value_re,value_im,paper_re,paper_im,delta_abs\n";
  for (int n = n_min; n <= n_max; ++n) {
    for (int m = n_min; m <= n_max; ++m) {
      const cplx value = gram.at(n, m);
      out += std::to_string(n);
      out += ',';
      out += std::to_string(m);
      out += ',';
      out += fmt(value.real());
      out += ',';
      out += fmt(value.imag());
      if (const auto claim = paper_value(n, m)) {
        out += ',';
        out += fmt(*claim);
        out += ",0,";
        out += fmt(std::abs(value - cplx(*claim)));
      } else {
        out += ",,,";
      }
      out += '\n';
    }
  }
  return out;
}

cplx eval_named_function(const std::string& name, double theta) {
  if (name == "one") return cplx(1.0);
  if (name == "cos") return cplx(std::cos(theta));
  if (name == "sin") return cplx(std::sin(theta));
  if (name == "inv2mcos") return cplx(1.0 / (2.0 - std::cos(theta)));
  throw ConfigError("unknown test function '" + name +
                    "' (expected one, cos, sin or inv2mcos)");
}

std::string run_fourier(const RunConfig& config, int) {
  const double alpha = parse_double(config.parameters.at("alpha"), "alpha");
  const std::string& fname = config.parameters.at("f");
  const int trunc = static_cast<int>(parse_long(config.parameters.at("trunc"), "trunc"));
  const int nodes = static_cast<int>(parse_long(config.parameters.at("nodes"), "nodes"));
  if (trunc < 1) throw ConfigError("--trunc must be >= 1");
  if (std::abs(alpha) >= 1.0) throw ConfigError("--alpha must satisfy |alpha| < 1");
  if (nodes < 4) throw ConfigError("--nodes must be >= 4");
  eval_named_function(fname, 0.0);  // validate the name up front

  const PeriodicGrid grid(nodes);
  const auto f = [&](double theta) { return eval_named_function(fname, theta); };
  const auto coeffs = m_fourier_coefficients(f, -trunc, trunc, alpha, grid);

  std::string out = "# bitrial fourier\n# config " + config_json(config) + "\n";
  out += "# table coefficients\n";
  out += "n,re,im\n";
  for (int n = -trunc; n <= trunc; ++n) {
    out += std::to_string(n);
    out += ',';
    out += fmt(coeffs.at(n).real());
    out += ',';
    out += fmt(coeffs.at(n).imag());
    out += '\n';
  }
  out += "# table reconstruction_error\n";
  out += "truncation,error\n";
  std::vector<int> truncations;
  for (int t = 1; t < trunc; t *= 2) truncations.push_back(t);
  truncations.push_back(trunc);
  for (int t : truncations) {
    out += std::to_string(t);
    out += ',';
    out += fmt(reconstruction_error(f, t, alpha, grid));
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(const ResidualReport& report) {
  return {{"spacings", report.spacings},
          {"residual_norms", report.residual_norms},
          {"excluded_nodes", report.excluded_nodes},
          {"fitted_order", report.fitted_order}};
}

std::string run_residual(const RunConfig& config, int) {
  const std::string& which = config.parameters.at("which");
  const double alpha = parse_double(config.parameters.at("alpha"), "alpha");
  const auto ladder = parse_ladder(config.parameters.at("ladder"));

  ResidualReport report;
  if (which == "ode1d") {
    const FieldParams p = FieldParams::scalar(
        parse_double(config.parameters.at("mu"), "mu"), alpha);
    report = ode_residual_1d(
        p, parse_double(config.parameters.at("zlo"), "zlo"),
        parse_double(config.parameters.at("zhi"), "zhi"), ladder);
  } else if (which == "pde2d" || which == "el" || which == "adjoint2" ||
             which == "adjoint1w") {
    const FieldParams p = FieldParams::slice(
        parse_double(config.parameters.at("mu0"), "mu0"),
        parse_double(config.parameters.at("mu1"), "mu1"), alpha);
    const std::array<double, 2> low{
        parse_double(config.parameters.at("tlo"), "tlo"),
        parse_double(config.parameters.at("xlo"), "xlo")};
    const std::array<double, 2> high{
        parse_double(config.parameters.at("thi"), "thi"),
        parse_double(config.parameters.at("xhi"), "xhi")};
    if (which == "pde2d") {
      report = pde_residual_2d(p, low, high, ladder);
    } else if (which == "el") {
      const long sign = parse_long(config.parameters.at("sign"), "sign");
      if (sign != 1 && sign != -1) throw ConfigError("--sign must be 1 or -1");
      report = el_vs_operator_check(p, static_cast<int>(sign), config.seed,
                                    low, high, ladder);
    } else {
      const auto version = which == "adjoint2"
                               ? AdjointVersion::coefficient2
                               : AdjointVersion::coefficient1_weighted;
      const auto u_seed = static_cast<std::uint64_t>(
          parse_long(config.parameters.at("useed"), "useed"));
      const auto v_seed = static_cast<std::uint64_t>(
          parse_long(config.parameters.at("vseed"), "vseed"));
      report = self_adjointness_scan(p, version, u_seed, v_seed, low, high,
                                     ladder);
    }
  } else if (which == "spherical") {
    const FieldParams p = FieldParams::scalar(
        parse_double(config.parameters.at("mu"), "mu"), alpha);
    report = spherical_residual(
        p, parse_double(config.parameters.at("q1"), "q1"),
        parse_double(config.parameters.at("rlo"), "rlo"),
        parse_double(config.parameters.at("rhi"), "rhi"), ladder);
  } else {
    throw ConfigError(
        "unknown --which '" + which +
        "' (expected ode1d, pde2d, spherical, el, adjoint2 or adjoint1w)");
  }

  nlohmann::json doc;
  doc["config"] = nlohmann::json::parse(config_json(config));
  doc["which"] = which;
  doc.update(report_json(report));
  return doc.dump(2) + "\n";
}

std::string run_axioms(const RunConfig& config, int) {
  const double alpha = parse_double(config.parameters.at("alpha"), "alpha");
  const int samples =
      static_cast<int>(parse_long(config.parameters.at("samples"), "samples"));
  if (samples < 1) throw ConfigError("--samples must be >= 1");
  if (std::abs(alpha) >= 1.0) throw ConfigError("--alpha must satisfy |alpha| < 1");

  const auto report = axiom_fuzz(alpha, samples, config.seed);
  nlohmann::json doc;
  doc["config"] = nlohmann::json::parse(config_json(config));
  doc["alpha"] = alpha;
  doc["samples"] = samples;
  doc["max_violation"] = {{"identity", report.identity},
                          {"inverse", report.inverse},
                          {"associativity", report.associativity},
                          {"pythagorean", report.pythagorean},
                          {"circle", report.circle},
                          {"euler", report.euler}};
  doc["oplus_mismatch"] = {{"max", report.oplus_mismatch_max},
                           {"mean", report.oplus_mismatch_mean}};
  return doc.dump(2) + "\n";
}

void write_output(const RunConfig& config, const std::string& content,
                  std::ostream& diagnostics) {
  if (config.output_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file '" + config.output_path + "'");
  }
  out << content;
  if (!out) {
    diagnostics << "warning: short write to " << config.output_path << "\n";
  }
}

using CommandFn = std::string (*)(const RunConfig&, int);

struct CommandSpec {
  CommandFn fn;
  std::string format;
};

const std::map<std::string, CommandSpec>& command_table() {
  static const std::map<std::string, CommandSpec> table{
      {"bifurcate", {run_bifurcate, "csv"}},
      {"lyapunov", {run_lyapunov, "csv"}},
      {"orbit", {run_orbit, "csv"}},
      {"gram", {run_gram, "csv"}},
      {"fourier", {run_fourier, "csv"}},
      {"residual", {run_residual, "json"}},
      {"axioms", {run_axioms, "json"}}};
  return table;
}

void add_map_options(CLI::App* cmd, std::map<std::string, std::string>& params) {
  params["map"] = "vrp";
  params["q"] = "2";
  params["q1"] = "1";
  params["phi"] = "1";
  params["mu"] = "1";
  params["alpha"] = "0";
  cmd->add_option("--map", params["map"], "map rule: vrp, four_rats, limit_map")
      ->capture_default_str();
  cmd->add_option("--q", params["q"], "growth factor (scalar or low:high:count)")
      ->capture_default_str();
  cmd->add_option("--q1", params["q1"], "source strength (scalar or range)")
      ->capture_default_str();
  cmd->add_option("--phi", params["phi"], "exponent Phi (scalar or range)")
      ->capture_default_str();
  cmd->add_option("--mu", params["mu"], "scale mu (scalar or range)")
      ->capture_default_str();
  cmd->add_option("--alpha", params["alpha"],
                  "symmetry-breaking alpha (scalar or range)")
      ->capture_default_str();
}

}  // namespace

std::string config_json(const RunConfig& config) {
  nlohmann::json doc;
  doc["command"] = config.command;
  doc["format"] = config.format;
  doc["parameters"] = config.parameters;
  doc["seed"] = config.seed;
  return doc.dump();
}

int run(const std::vector<std::string>& args, std::ostream& diagnostics) {
  CLI::App app{
      "bitrial: VRP chaotic maps, broken-symmetry group algebra, m-Fourier "
      "analysis and modified Klein-Gordon-Fock residual checks"};
  app.require_subcommand(1);

  RunConfig config;
  int workers = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", config.output_path,
                    "output file path ('-' for stdout)")
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "base seed for all sampling")
        ->capture_default_str();
  };

  // bifurcate ---------------------------------------------------------------
  auto* bifurcate = app.add_subcommand(
      "bifurcate", "bifurcation diagram over one swept parameter (CSV)");
  std::map<std::string, std::string> bif_params;
  add_map_options(bifurcate, bif_params);
  bif_params["transient"] = "1000";
  bif_params["keep"] = "500";
  bif_params["tol"] = "1e-6";
  bif_params["restart-seed"] = "none";
  bifurcate->add_option("--transient", bif_params["transient"],
                        "discarded leading steps")->capture_default_str();
  bifurcate->add_option("--keep", bif_params["keep"],
                        "post-transient samples per cell")->capture_default_str();
  bifurcate->add_option("--tol", bif_params["tol"],
                        "absolute branch clustering tolerance")
      ->capture_default_str();
  bifurcate->add_option("--restart-seed", bif_params["restart-seed"],
                        "draw per-cell starts from (0.1,3) with this seed")
      ->capture_default_str();
  bifurcate->add_option("--workers", workers,
                        "worker threads (default: hardware, or BITRIAL_WORKERS)");
  add_common(bifurcate);

  // lyapunov ----------------------------------------------------------------
  auto* lyapunov = app.add_subcommand(
      "lyapunov", "Lyapunov exponent sweep over one parameter (CSV)");
  std::map<std::string, std::string> lyap_params;
  add_map_options(lyapunov, lyap_params);
  lyap_params["n"] = "5000";
  lyapunov->add_option("--n", lyap_params["n"],
                       "samples in the Lyapunov average (>= 1000)")
      ->capture_default_str();
  lyapunov->add_option("--workers", workers,
                       "worker threads (default: hardware, or BITRIAL_WORKERS)");
  add_common(lyapunov);

  // orbit ---------------------------------------------------------------
  auto* orbit = app.add_subcommand("orbit", "single orbit trace (CSV)");
  std::map<std::string, std::string> orbit_params;
  add_map_options(orbit, orbit_params);
  orbit_params["x0"] = "auto";
  orbit_params["steps"] = "100";
  orbit_params["transient"] = "0";
  orbit->add_option("--x0", orbit_params["x0"],
                    "initial state ('auto' = policy start)")
      ->capture_default_str();
  orbit->add_option("--steps", orbit_params["steps"], "kept steps")
      ->capture_default_str();
  orbit->add_option("--transient", orbit_params["transient"],
                    "discarded leading steps")->capture_default_str();
  add_common(orbit);

  // gram ----------------------------------------------------------------
  auto* gram = app.add_subcommand(
      "gram", "pairing-integral matrix with measured-vs-claimed deltas (CSV)");
  std::map<std::string, std::string> gram_params{{"convention", "same_sign"},
                                                 {"alpha", "0.3"},
                                                 {"nmin", "-4"},
                                                 {"nmax", "4"},
                                                 {"nodes", "4096"}};
  gram->add_option("--convention", gram_params["convention"],
                   "same_sign or conjugate")->capture_default_str();
  gram->add_option("--alpha", gram_params["alpha"], "deformation alpha")
      ->capture_default_str();
  gram->add_option("--nmin", gram_params["nmin"], "lowest basis index")
      ->capture_default_str();
  gram->add_option("--nmax", gram_params["nmax"], "highest basis index")
      ->capture_default_str();
  gram->add_option("--nodes", gram_params["nodes"], "quadrature nodes")
      ->capture_default_str();
  add_common(gram);

  // fourier -------------------------------------------------------------
  auto* fourier = app.add_subcommand(
      "fourier", "m-Fourier coefficients and reconstruction errors (CSV)");
  std::map<std::string, std::string> fourier_params{
      {"alpha", "0"}, {"f", "cos"}, {"trunc", "8"}, {"nodes", "4096"}};
  fourier->add_option("--alpha", fourier_params["alpha"], "deformation alpha")
      ->capture_default_str();
  fourier->add_option("--f", fourier_params["f"],
                      "test function: one, cos, sin, inv2mcos")
      ->capture_default_str();
  fourier->add_option("--trunc", fourier_params["trunc"],
                      "symmetric truncation index")->capture_default_str();
  fourier->add_option("--nodes", fourier_params["nodes"], "quadrature nodes")
      ->capture_default_str();
  add_common(fourier);

  // residual --------------------------------------------------------------
  auto* residual = app.add_subcommand(
      "residual", "discretized-operator residual reports (JSON)");
  std::map<std::string, std::string> residual_params{
      {"which", "ode1d"}, {"alpha", "0.3"},   {"mu", "1"},
      {"mu0", "1.4142135623730951"},          {"mu1", "1"},
      {"q1", "1"},        {"sign", "1"},      {"useed", "11"},
      {"vseed", "12"},    {"ladder", "auto"}, {"zlo", "0"},
      {"zhi", "6.2831853071795862"},          {"rlo", "0.1"},
      {"rhi", "10"},      {"tlo", "auto"},    {"thi", "auto"},
      {"xlo", "auto"},    {"xhi", "auto"}};
  residual->add_option("--which", residual_params["which"],
                       "ode1d, pde2d, spherical, el, adjoint2, adjoint1w")
      ->capture_default_str();
  residual->add_option("--alpha", residual_params["alpha"], "deformation alpha")
      ->capture_default_str();
  residual->add_option("--mu", residual_params["mu"], "scalar mu (ode1d, spherical)")
      ->capture_default_str();
  residual->add_option("--mu0", residual_params["mu0"], "time component of mu")
      ->capture_default_str();
  residual->add_option("--mu1", residual_params["mu1"], "space component of mu")
      ->capture_default_str();
  residual->add_option("--q1", residual_params["q1"], "source strength (spherical)")
      ->capture_default_str();
  residual->add_option("--sign", residual_params["sign"], "exponent sign (el): 1 or -1")
      ->capture_default_str();
  residual->add_option("--useed", residual_params["useed"], "test-field seed u (adjoint)")
      ->capture_default_str();
  residual->add_option("--vseed", residual_params["vseed"], "test-field seed v (adjoint)")
      ->capture_default_str();
  residual->add_option("--ladder", residual_params["ladder"],
                       "comma-separated node counts ('auto': 129,257,513; "
                       "adjoint: 65,129,257,513)")
      ->capture_default_str();
  residual->add_option("--zlo", residual_params["zlo"], "z interval start (ode1d)")
      ->capture_default_str();
  residual->add_option("--zhi", residual_params["zhi"], "z interval end (ode1d)")
      ->capture_default_str();
  residual->add_option("--rlo", residual_params["rlo"], "r interval start (spherical)")
      ->capture_default_str();
  residual->add_option("--rhi", residual_params["rhi"], "r interval end (spherical)")
      ->capture_default_str();
  residual->add_option("--tlo", residual_params["tlo"],
                       "t extent start ('auto': -1, adjoint -1.5)")
      ->capture_default_str();
  residual->add_option("--thi", residual_params["thi"],
                       "t extent end ('auto': 1, adjoint 1.5)")
      ->capture_default_str();
  residual->add_option("--xlo", residual_params["xlo"],
                       "x extent start ('auto': -1, adjoint -1.5)")
      ->capture_default_str();
  residual->add_option("--xhi", residual_params["xhi"],
                       "x extent end ('auto': 1, adjoint 1.5)")
      ->capture_default_str();
  add_common(residual);

  // axioms --------------------------------------------------------------
  auto* axioms = app.add_subcommand(
      "axioms", "group-axiom fuzz summary and oplus mismatch (JSON)");
  std::map<std::string, std::string> axiom_params{{"alpha", "0.3"},
                                                  {"samples", "10000"}};
  axioms->add_option("--alpha", axiom_params["alpha"], "deformation alpha")
      ->capture_default_str();
  axioms->add_option("--samples", axiom_params["samples"], "fuzz sample count")
      ->capture_default_str();
  add_common(axioms);

  std::vector<const char*> argv;
  argv.push_back("bitrial");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnostics << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  if (config.command == "bifurcate") config.parameters = bif_params;
  if (config.command == "lyapunov") config.parameters = lyap_params;
  if (config.command == "orbit") config.parameters = orbit_params;
  if (config.command == "gram") config.parameters = gram_params;
  if (config.command == "fourier") config.parameters = fourier_params;
  if (config.command == "residual") {
    // resolve the per-which defaults before embedding the config
    const bool adjoint = residual_params["which"] == "adjoint2" ||
                         residual_params["which"] == "adjoint1w";
    if (residual_params["ladder"] == "auto") {
      residual_params["ladder"] = adjoint ? "65,129,257,513" : "129,257,513";
    }
    const std::string box_lo = adjoint ? "-1.5" : "-1";
    const std::string box_hi = adjoint ? "1.5" : "1";
    for (const char* key : {"tlo", "xlo"}) {
      if (residual_params[key] == "auto") residual_params[key] = box_lo;
    }
    for (const char* key : {"thi", "xhi"}) {
      if (residual_params[key] == "auto") residual_params[key] = box_hi;
    }
    config.parameters = residual_params;
  }
  if (config.command == "axioms") config.parameters = axiom_params;

  const CommandSpec& spec = command_table().at(config.command);
  config.format = spec.format;

  try {
    const int worker_count = resolve_workers(workers);
    const std::string content = spec.fn(config, worker_count);
    write_output(config, content, diagnostics);
    return kExitOk;
  } catch (const ConfigError& e) {
    diagnostics << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const conditioning_error& e) {
    diagnostics << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    diagnostics << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cerr);
}

}  // namespace bitrial::cli
