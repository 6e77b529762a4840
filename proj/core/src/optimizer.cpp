#include "cvbound/optimizer.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <functional>
#include <numbers>

#include "cvbound/errors.hpp"
#include "quadrature_grid.hpp"

namespace cvbound {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // 1 / golden ratio
constexpr int kGoldenIterationCap = 200;
constexpr int kSweepCap = 100;
constexpr std::uintmax_t kBrentIterationCap = 100;
constexpr double kMinDiskRadius = 1e-6;

struct GoldenResult {
  double x;
  double value;
  double width;
  int evaluations;
  bool converged;
};

// Maximizes f on [lo, hi] assuming unimodality.
GoldenResult golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  int iterations = 0;
  while (b - a > tol && iterations < kGoldenIterationCap) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evaluations;
    ++iterations;
  }
  const bool left = fc >= fd;
  return {left ? c : d, left ? fc : fd, b - a, evaluations, b - a <= tol};
}

// Outcome radii up to which the curve nodes are spread; past the last node
// the curve continues as a gain.
double curve_extent(const Prior& prior) {
  if (const auto* p = std::get_if<GaussianIso>(&prior)) {
    // 99% quantile of |alpha|: |alpha|^2 ~ Exp(mean 1 + 1/lambda).
    return std::sqrt((1.0 + 1.0 / p->lambda) * std::log(100.0));
  }
  return support_radius(prior) + 2.0;
}

}  // namespace

OptimizationReport optimize_gain(const Prior& prior, double tol) {
  validate(prior);
  if (!(tol > 0.0)) throw InputError("optimize_gain needs tol > 0");

  const auto objective = [&](double g) { return gain_fidelity(prior, g); };
  const GoldenResult best = golden_max(objective, 0.0, kMaxGain, tol);

  OptimizationReport report;
  report.best_strategy = Gain{best.x};
  report.best_value = best.value;
  report.evaluations = best.evaluations;
  report.convergence_gap = best.width;
  report.converged = best.converged;
  return report;
}

OptimizationReport optimize_guess_curve(const Prior& prior, int n_nodes, double tol,
                                        const QuadratureSpec& spec) {
  validate(prior);
  if (n_nodes < 4) throw InputError("optimize_guess_curve needs at least 4 nodes");
  if (!(tol > 0.0)) throw InputError("optimize_guess_curve needs tol > 0");
  if (support_radius(prior) < kMinDiskRadius) throw InputError("degenerate prior: radius below 1e-6");

  const OptimizationReport gain = optimize_gain(prior);
  const double g0 = std::get<Gain>(gain.best_strategy).g;

  const double extent = curve_extent(prior);
  std::vector<RadialCurve::Node> nodes;
  std::vector<double> radii;
  for (int j = 0; j < n_nodes; ++j) {
    const double r = extent * j / (n_nodes - 1);
    nodes.push_back({r, g0 * r});
    radii.push_back(r);
  }
  RadialCurve curve(std::move(nodes));

  const detail::BetaDomain domain = detail::prior_domain(prior, spec.truncation_tol);
  const detail::BetaGrid grid(domain, spec.radial_nodes, spec.panel_width);
  const double cut = spec.outer_cut_radius.value_or(domain.hi + std::sqrt(std::log(1.0 / spec.truncation_tol)) + 2.0);
  auto alphas = detail::radial_points(0.0, cut, radii, spec.radial_nodes, spec.panel_width);
  for (auto& p : alphas) p.weight *= 2.0 * std::numbers::pi * p.r;

  const auto contribution = [&](std::size_t i, double guess) {
    return alphas[i].weight * grid.slice(alphas[i].r, guess, spec.angular_nodes, spec.angular_offset);
  };
  std::vector<double> current(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) current[i] = contribution(i, curve.guess_radius(alphas[i].r));

  // Outcome points whose guess depends on node j: (r_{j-1}, r_{j+1}), or
  // everything past r_{n-2} for the last node.
  std::vector<std::pair<std::size_t, std::size_t>> influence(radii.size());
  for (std::size_t j = 1; j < radii.size(); ++j) {
    const double lo = radii[j - 1];
    const double hi = j + 1 < radii.size() ? radii[j + 1] : cut + 1.0;
    std::size_t begin = 0;
    while (begin < alphas.size() && alphas[begin].r <= lo) ++begin;
    std::size_t end = begin;
    while (end < alphas.size() && alphas[end].r < hi) ++end;
    influence[j] = {begin, end};
  }

  OptimizationReport report;
  double last_improvement = 0.0;
  bool converged = false;
  for (int sweep = 0; sweep < kSweepCap && !converged; ++sweep) {
    double improvement = 0.0;
    // Node 0 stays at the origin; ascending radius order.
    for (std::size_t j = 1; j < radii.size(); ++j) {
      const auto [begin, end] = influence[j];
      double baseline = 0.0;
      for (std::size_t i = begin; i < end; ++i) baseline += current[i];

      RadialCurve trial = curve;
      const auto local_value = [&](double rho) {
        trial.set_rho(j, rho);
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) sum += contribution(i, trial.guess_radius(alphas[i].r));
        return sum;
      };
      const double upper = kMaxGain * radii[j] + 0.5;
      std::uintmax_t iterations = kBrentIterationCap;
      const auto [rho, negated] = boost::math::tools::brent_find_minima(
          [&](double x) { return -local_value(x); }, 0.0, upper, std::numeric_limits<double>::digits / 2,
          iterations);
      report.evaluations += static_cast<int>(iterations);
      if (-negated > baseline) {
        improvement += -negated - baseline;
        curve.set_rho(j, rho);
        for (std::size_t i = begin; i < end; ++i) current[i] = contribution(i, curve.guess_radius(alphas[i].r));
      }
    }
    last_improvement = improvement;
    converged = improvement <= tol;
  }

  report.best_value = average_fidelity_quad(prior, curve, spec).value;
  report.best_strategy = std::move(curve);
  report.convergence_gap = last_improvement;
  report.converged = converged;
  return report;
}

BoundResult classical_bound_estimate(const Prior& prior, int curve_nodes) {
  const OptimizationReport gain = optimize_gain(prior);
  if (!gain.converged) throw NumericalError("gain search did not converge");

  BoundResult result;
  result.prior = prior;
  result.value = gain.best_value;
  result.optimal_gain = std::get<Gain>(gain.best_strategy).g;
  result.strategy = gain.best_strategy;

  // Below the quadrature floor only the closed form is available.
  if (const auto* p = std::get_if<GaussianIso>(&prior); p && p->lambda < kMinQuadLambda) return result;

  const OptimizationReport curve = optimize_guess_curve(prior, curve_nodes);
  if (!curve.converged) throw NumericalError("curve search did not converge");
  if (curve.best_value > result.value) {
    result.value = curve.best_value;
    result.optimal_gain.reset();
    result.strategy = curve.best_strategy;
  }
  return result;
}

}  // namespace cvbound
