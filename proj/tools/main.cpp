// cvbound: classical fidelity bounds and non-classicality certification for
// coherent-state teleportation benchmarks.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "cvbound/bounds.hpp"
#include "cvbound/curve_io.hpp"
#include "cvbound/dataset.hpp"
#include "cvbound/errors.hpp"
#include "cvbound/optimizer.hpp"
#include "cvbound/quadrature.hpp"
#include "cvbound/simulator.hpp"
#include "cvbound/verdict.hpp"

namespace {

using namespace cvbound;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

double parse_double(std::string_view text, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("bad number '" + std::string(text) + "' in " + what);
  }
  return value;
}

/// gaussian:L | disk:R | truncgauss:L,R
Prior parse_prior(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("prior must look like gaussian:L, disk:R or truncgauss:L,R");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  Prior prior = GaussianIso{1.0};
  if (kind == "gaussian") {
    prior = GaussianIso{parse_double(args, "--prior")};
  } else if (kind == "disk") {
    prior = UniformDisk{parse_double(args, "--prior")};
  } else if (kind == "truncgauss") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw InputError("truncgauss prior needs lambda,radius");
    prior = TruncatedGaussian{parse_double(std::string_view(args).substr(0, comma), "--prior"),
                              parse_double(std::string_view(args).substr(comma + 1), "--prior")};
  } else {
    throw InputError("unknown prior kind '" + kind + "'");
  }
  validate(prior);
  return prior;
}

/// const:c | gain:g
FidelityModel parse_model(const std::string& text) {
  if (text.starts_with("const:")) return ConstantFidelity{parse_double(text.substr(6), "--model")};
  if (text.starts_with("gain:")) return SimulatedGain{parse_double(text.substr(5), "--model")};
  throw InputError("model must look like const:c or gain:g");
}

Strategy strategy_from(const std::optional<double>& gain, const std::string& curve_file) {
  if (gain) {
    Strategy s = Gain{*gain};
    validate(s);
    return s;
  }
  if (!curve_file.empty()) return load_curve(curve_file);
  throw InputError("give either --gain or --curve");
}

json strategy_json(const Strategy& strategy) {
  if (const auto* gain = std::get_if<Gain>(&strategy)) return json{{"gain", gain->g}};
  json nodes = json::array();
  for (const auto& node : std::get<RadialCurve>(strategy).nodes()) nodes.push_back({node.r, node.rho});
  return json{{"curve", nodes}};
}

void print(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    std::cout << std::left << std::setw(20) << key << ' ';
    if (value.is_number_float()) {
      std::cout << std::setprecision(10) << value.get<double>();
    } else if (value.is_string()) {
      std::cout << value.get<std::string>();
    } else {
      std::cout << value.dump();
    }
    std::cout << '\n';
  }
}

struct QuadOptions {
  double tol = 1e-10;
  int radial_nodes = 16;
  int angular_nodes = 32;
  unsigned workers = 1;

  QuadratureSpec spec() const {
    QuadratureSpec s;
    s.truncation_tol = tol;
    s.radial_nodes = radial_nodes;
    s.angular_nodes = angular_nodes;
    s.workers = workers;
    return s;
  }
};

void add_quad_options(CLI::App* cmd, QuadOptions& q) {
  cmd->add_option("--tol", q.tol, "Truncation tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--radial-nodes", q.radial_nodes, "Gauss-Legendre points per radial panel")
      ->check(CLI::Range(8, 1024));
  cmd->add_option("--angular-nodes", q.angular_nodes, "Base angular nodes per ring")->check(CLI::Range(8, 1 << 16));
  cmd->add_option("--workers", q.workers, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical fidelity bounds and non-classicality certification for coherent-state teleportation"};
  app.require_subcommand(1);
  bool as_json = false;

  // bound
  auto* bound = app.add_subcommand("bound", "Classical bound for a Gaussian or uniform-disk prior");
  std::optional<double> bound_lambda;
  std::optional<double> bound_radius;
  auto* lambda_opt = bound->add_option("--lambda", bound_lambda, "Gaussian prior inverse width (>= 0)");
  auto* radius_opt = bound->add_option("--disk-radius", bound_radius, "Uniform disk radius (> 0)");
  lambda_opt->excludes(radius_opt);
  bound->add_flag("--json", as_json, "Emit a single JSON object");

  // quad
  auto* quad = app.add_subcommand("quad", "Average fidelity by polar quadrature");
  std::string quad_prior;
  std::optional<double> quad_gain;
  std::string quad_curve;
  QuadOptions quad_options;
  quad->add_option("--prior", quad_prior, "gaussian:L | disk:R | truncgauss:L,R")->required();
  auto* quad_gain_opt = quad->add_option("--gain", quad_gain, "Gain strategy f = g alpha");
  quad->add_option("--curve", quad_curve, "Radial curve CSV (r,rho)")->check(CLI::ExistingFile)->excludes(quad_gain_opt);
  add_quad_options(quad, quad_options);
  quad->add_flag("--json", as_json, "Emit a single JSON object");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Best classical strategy within a family");
  std::string opt_prior;
  std::string opt_family = "gain";
  int opt_nodes = 8;
  double opt_tol = 0.0;
  std::string opt_output;
  optimize->add_option("--prior", opt_prior, "gaussian:L | disk:R | truncgauss:L,R")->required();
  optimize->add_option("--family", opt_family, "gain | curve")->check(CLI::IsMember({"gain", "curve"}));
  optimize->add_option("--nodes", opt_nodes, "Curve nodes")->check(CLI::Range(4, 256));
  optimize->add_option("--tol", opt_tol, "Search tolerance")->check(CLI::PositiveNumber);
  optimize->add_option("-o,--output", opt_output, "Write the optimized curve as CSV");
  optimize->add_flag("--json", as_json, "Emit a single JSON object");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo of the measure-and-prepare channel");
  std::string sim_prior;
  std::optional<double> sim_gain;
  std::string sim_curve;
  std::int64_t sim_n = 1000000;
  std::uint64_t sim_seed = 0;
  unsigned sim_workers = 0;
  sim->add_option("--prior", sim_prior, "gaussian:L | disk:R | truncgauss:L,R")->required();
  auto* sim_gain_opt = sim->add_option("--gain", sim_gain, "Gain strategy f = g alpha");
  sim->add_option("--curve", sim_curve, "Radial curve CSV (r,rho)")->check(CLI::ExistingFile)->excludes(sim_gain_opt);
  sim->add_option("-n", sim_n, "Samples")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "Seed");
  sim->add_option("--workers", sim_workers, "Worker threads (0 = all cores)");
  sim->add_flag("--json", as_json, "Emit a single JSON object");

  // generate
  auto* gen = app.add_subcommand("generate", "Synthetic dataset on a uniform disk");
  double gen_radius = 1.0;
  std::int64_t gen_n = 10000;
  std::string gen_model;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  gen->add_option("--radius", gen_radius, "Disk radius")->required()->check(CLI::PositiveNumber);
  gen->add_option("-n", gen_n, "Records")->check(CLI::PositiveNumber);
  gen->add_option("--model", gen_model, "const:c | gain:g")->required();
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("-o,--output", gen_output, "Output CSV (stdout if omitted)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Certify a dataset by Gaussian reweighting");
  std::string an_file;
  double an_epsilon = 0.01;
  std::optional<double> an_radius;
  int an_bootstrap = 1000;
  std::uint64_t an_seed = 0;
  double an_level = 0.95;
  unsigned an_workers = 0;
  analyze->add_option("file", an_file, "Dataset CSV (beta_re,beta_im,fidelity)")->required();
  analyze->add_option("--epsilon", an_epsilon, "Allowed Gaussian tail mass outside the sampled disk")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--radius", an_radius, "Sampled-area radius (default: max |beta|)");
  analyze->add_option("--bootstrap", an_bootstrap, "Bootstrap resamples")->check(CLI::Range(100, 10000000));
  analyze->add_option("--seed", an_seed, "Bootstrap seed");
  analyze->add_option("--level", an_level, "Confidence level")->check(CLI::Range(0.5, 0.9999));
  analyze->add_option("--workers", an_workers, "Worker threads (0 = all cores)");
  analyze->add_flag("--json", as_json, "Emit a single JSON object");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*bound) {
      if (bound_lambda) {
        const double lambda = *bound_lambda;
        json out{{"prior", "gaussian"}, {"lambda", lambda}, {"classical_bound", gaussian_bound(lambda)}};
        if (lambda > 0.0) out["optimal_gain"] = optimal_gain_gaussian(lambda);
        print(out, as_json);
      } else if (bound_radius) {
        const Prior prior = UniformDisk{*bound_radius};
        validate(prior);
        const OptimizationReport gain = optimize_gain(prior);
        const BoundResult estimate = classical_bound_estimate(prior);
        json out{{"prior", describe(prior)},
                 {"best_gain", std::get<Gain>(gain.best_strategy).g},
                 {"gain_fidelity", gain.best_value},
                 {"classical_estimate", estimate.value},
                 {"estimate_strategy", estimate.optimal_gain ? "gain" : "curve"},
                 {"note", "lower estimate of the classical bound (heterodyne, coherent guesses)"}};
        print(out, as_json);
      } else {
        throw InputError("bound needs --lambda or --disk-radius");
      }
    } else if (*quad) {
      const Prior prior = parse_prior(quad_prior);
      const Strategy strategy = strategy_from(quad_gain, quad_curve);
      const QuadResult r = average_fidelity_quad(prior, strategy, quad_options.spec());
      json out{{"prior", describe(prior)},
               {"strategy", describe(strategy)},
               {"value", r.value},
               {"error_estimate", r.error_estimate},
               {"outer_cut_radius", r.outer_cut_radius}};
      print(out, as_json);
    } else if (*optimize) {
      const Prior prior = parse_prior(opt_prior);
      OptimizationReport report;
      if (opt_family == "gain") {
        report = optimize_gain(prior, opt_tol > 0.0 ? opt_tol : 1e-9);
      } else {
        report = optimize_guess_curve(prior, opt_nodes, opt_tol > 0.0 ? opt_tol : 1e-7);
      }
      if (!opt_output.empty()) {
        if (const auto* curve = std::get_if<RadialCurve>(&report.best_strategy)) {
          std::ofstream out(opt_output);
          if (!out) throw InputError("cannot write '" + opt_output + "'");
          write_curve(out, *curve);
        } else {
          throw InputError("--output is only meaningful with --family curve");
        }
      }
      json out{{"prior", describe(prior)},
               {"family", opt_family},
               {"best_value", report.best_value},
               {"evaluations", report.evaluations},
               {"convergence_gap", report.convergence_gap},
               {"converged", report.converged},
               {"strategy", strategy_json(report.best_strategy)}};
      print(out, as_json);
      if (!report.converged) {
        std::cerr << "error: search did not converge (best-so-far reported)\n";
        return kExitNumerical;
      }
    } else if (*sim) {
      const Prior prior = parse_prior(sim_prior);
      const Strategy strategy = strategy_from(sim_gain, sim_curve);
      const FidelityEstimate e = simulate(prior, strategy, sim_n, sim_seed, sim_workers);
      json out{{"prior", describe(prior)},
               {"strategy", describe(strategy)},
               {"mean", e.mean},
               {"std_error", e.std_error},
               {"n_samples", e.n_samples},
               {"seed", e.seed}};
      print(out, as_json);
    } else if (*gen) {
      const auto records = generate_dataset(gen_radius, gen_n, parse_model(gen_model), gen_seed);
      if (gen_output.empty()) {
        write_dataset(std::cout, records);
      } else {
        save_dataset(gen_output, records);
      }
    } else if (*analyze) {
      const auto records = load_dataset(an_file);
      VerdictOptions options;
      options.epsilon = an_epsilon;
      options.radius = an_radius;
      options.resamples = an_bootstrap;
      options.seed = an_seed;
      options.level = an_level;
      options.workers = an_workers;
      const Report report = verdict(records, options);
      if (as_json) {
        std::cout << to_json(report).dump() << '\n';
      } else {
        std::cout << format_report(report, options);
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
