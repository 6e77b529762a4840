#include "cvbound/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include "cvbound/bounds.hpp"
#include "cvbound/errors.hpp"
#include "parallel.hpp"
#include "quadrature_grid.hpp"

namespace cvbound {

namespace detail {

namespace {

struct GlTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};

// Exponents above this contribute less than e^-60 and are skipped.
constexpr double kNegligibleExponent = 60.0;
// Relative size at which the angular walk stops.
constexpr double kNegligibleTerm = 1e-18;

}  // namespace

std::vector<RadialPoint> radial_points(double lo, double hi, std::span<const double> breakpoints,
                                       int nodes_per_panel, double panel_width) {
  std::vector<RadialPoint> points;
  if (!(hi > lo)) return points;

  std::vector<double> edges{lo, hi};
  for (double b : breakpoints) {
    if (b > lo && b < hi) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());

  std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nodes_per_panel)));
  if (!table) throw NumericalError("failed to build Gauss-Legendre table");

  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e];
    const double b = edges[e + 1];
    const auto panels = static_cast<int>(std::ceil((b - a) / panel_width - 1e-12));
    const double width = (b - a) / std::max(panels, 1);
    for (int p = 0; p < std::max(panels, 1); ++p) {
      const double pa = a + p * width;
      const double pb = (p + 1 == panels) ? b : pa + width;
      for (int i = 0; i < nodes_per_panel; ++i) {
        double x = 0.0;
        double w = 0.0;
        gsl_integration_glfixed_point(pa, pb, static_cast<std::size_t>(i), &x, &w, table.get());
        points.push_back({x, w});
      }
    }
  }
  return points;
}

int angular_count(int base, double kappa) {
  // The trapezoid error for exp(kappa cos t) with N nodes falls like
  // exp(-N^2 / (2 kappa)); 10 sqrt(kappa) extra nodes puts it below e^-50.
  return base + static_cast<int>(std::ceil(10.0 * std::sqrt(std::max(kappa, 0.0))));
}

BetaGrid::BetaGrid(const BetaDomain& domain, int radial_nodes, double panel_width) {
  rings_ = radial_points(domain.lo, domain.hi, {}, radial_nodes, panel_width);
  for (auto& ring : rings_) {
    ring.weight *= ring.r * domain.scale * std::exp(-domain.lambda * ring.r * ring.r);
  }
}

double BetaGrid::slice(double a, double s, int angular_nodes, double angular_offset) const {
  // With beta = r e^{it}: |a - beta|^2 + |s - beta|^2
  //   = (a - r)^2 + (s - r)^2 + 2 r (a + s)(1 - cos t).
  double total = 0.0;
  for (const auto& ring : rings_) {
    const double da = a - ring.r;
    const double ds = s - ring.r;
    const double floor_exponent = da * da + ds * ds;
    if (floor_exponent > kNegligibleExponent) continue;
    const double kappa = 2.0 * ring.r * (a + s);
    const int n = angular_count(angular_nodes, kappa);
    const double step = 2.0 * std::numbers::pi / n;
    const auto term = [&](long k) { return std::exp(-kappa * (1.0 - std::cos(angular_offset + k * step))); };
    // The terms fall off monotonically on both sides of t = 0; walk outwards
    // from the node nearest the peak until they stop mattering.
    const long peak = std::lround(-angular_offset / step);
    double sum = term(peak);
    for (long d = 1; 2 * d <= n; ++d) {
      const double right = term(peak + d);
      if (2 * d == n) {
        sum += right;
        break;
      }
      const double pair = right + term(peak - d);
      sum += pair;
      if (pair < kNegligibleTerm * sum) break;
    }
    // (1/pi) from the outcome density times the trapezoid step 2 pi / n.
    total += ring.weight * std::exp(-floor_exponent) * sum * (2.0 / n);
  }
  return total;
}

void check_quad_lambda(double lambda) {
  if (!(std::isfinite(lambda) && lambda >= kMinQuadLambda)) {
    throw NumericalError("whole-plane quadrature needs lambda >= 1e-6; the outcome integral diverges as lambda -> 0");
  }
}

double gaussian_cut(double lambda, double tol) {
  return std::sqrt(std::log(2.0 / tol) / lambda);
}

BetaDomain prior_domain(const Prior& prior, double tol) {
  validate(prior);
  if (const auto* p = std::get_if<GaussianIso>(&prior)) {
    check_quad_lambda(p->lambda);
    const double hi = gaussian_cut(p->lambda, tol);
    return {p->lambda / std::numbers::pi, p->lambda, 0.0, hi, std::exp(-p->lambda * hi * hi)};
  }
  if (const auto* p = std::get_if<UniformDisk>(&prior)) {
    return {1.0 / (std::numbers::pi * p->radius * p->radius), 0.0, 0.0, p->radius, 0.0};
  }
  const auto& p = std::get<TruncatedGaussian>(prior);
  const double mass = -std::expm1(-p.lambda * p.radius * p.radius);
  if (p.lambda == 0.0 || mass == 0.0) {
    return {1.0 / (std::numbers::pi * p.radius * p.radius), 0.0, 0.0, p.radius, 0.0};
  }
  return {p.lambda / (std::numbers::pi * mass), p.lambda, 0.0, p.radius, 0.0};
}

}  // namespace detail

namespace {

using detail::BetaDomain;

void check_spec(const QuadratureSpec& spec) {
  if (spec.radial_nodes < 8) throw InputError("quadrature needs radial_nodes >= 8");
  if (spec.angular_nodes < 8) throw InputError("quadrature needs angular_nodes >= 8");
  if (!(spec.truncation_tol > 0.0 && spec.truncation_tol < 1.0)) {
    throw InputError("quadrature needs 0 < truncation_tol < 1");
  }
  if (!(spec.panel_width > 0.0 && std::isfinite(spec.panel_width))) {
    throw InputError("quadrature needs a finite panel_width > 0");
  }
  if (spec.outer_cut_radius && !(*spec.outer_cut_radius > 0.0 && std::isfinite(*spec.outer_cut_radius))) {
    throw InputError("outer_cut_radius must be finite and > 0");
  }
}

std::vector<double> strategy_breakpoints(const Strategy& strategy) {
  std::vector<double> points;
  if (const auto* curve = std::get_if<RadialCurve>(&strategy)) {
    for (const auto& node : curve->nodes()) points.push_back(node.r);
  }
  return points;
}

double integrate(const BetaDomain& domain, const Strategy& strategy, double cut, int radial_nodes,
                 int angular_nodes, const QuadratureSpec& spec) {
  const detail::BetaGrid grid(domain, radial_nodes, spec.panel_width);
  if (grid.empty()) return 0.0;
  const auto breakpoints = strategy_breakpoints(strategy);
  const auto alphas = detail::radial_points(0.0, cut, breakpoints, radial_nodes, spec.panel_width);

  // Joint rotation of outcome and input leaves the integrand unchanged for
  // isotropic priors and direction-preserving guesses, so the outcome angle
  // contributes a factor 2 pi and the outcome sits on the real axis.
  std::vector<double> contributions(alphas.size());
  detail::parallel_for(alphas.size(), spec.workers, [&](std::size_t i) {
    const double a = alphas[i].r;
    const double s = std::abs(apply_strategy(strategy, ComplexAmp{a, 0.0}));
    contributions[i] = alphas[i].weight * 2.0 * std::numbers::pi * a *
                       grid.slice(a, s, angular_nodes, spec.angular_offset);
  });
  return std::accumulate(contributions.begin(), contributions.end(), 0.0);
}

QuadResult evaluate(const BetaDomain& domain, const Strategy& strategy, const QuadratureSpec& spec) {
  validate(strategy);
  const double tol = spec.truncation_tol;
  const double cut = spec.outer_cut_radius.value_or(domain.hi + std::sqrt(std::log(1.0 / tol)) + 2.0);
  const double alpha_tail = cut > domain.hi ? std::exp(-(cut - domain.hi) * (cut - domain.hi)) : 1.0;

  QuadResult result;
  result.outer_cut_radius = cut;
  result.truncation_bound = domain.neglected_mass + alpha_tail;

  const double base = integrate(domain, strategy, cut, spec.radial_nodes, spec.angular_nodes, spec);
  if (spec.refine) {
    const double refined =
        integrate(domain, strategy, cut, 2 * spec.radial_nodes, 2 * spec.angular_nodes, spec);
    result.value = refined;
    result.error_estimate = result.truncation_bound + std::abs(refined - base);
  } else {
    result.value = base;
    result.error_estimate = result.truncation_bound;
  }
  if (!std::isfinite(result.value)) throw NumericalError("quadrature produced a non-finite value");
  return result;
}

}  // namespace

QuadResult average_fidelity_quad(const Prior& prior, const Strategy& strategy,
                                 const QuadratureSpec& spec) {
  check_spec(spec);
  return evaluate(detail::prior_domain(prior, spec.truncation_tol), strategy, spec);
}

QuadResult restricted_fidelity_quad(double lambda, double radius, const Strategy& strategy,
                                    Region region, const QuadratureSpec& spec) {
  check_spec(spec);
  detail::check_quad_lambda(lambda);
  if (!(radius > 0.0)) throw InputError("restricted quadrature needs radius > 0");

  const double hi = detail::gaussian_cut(lambda, spec.truncation_tol);
  const double hi_tail = std::exp(-lambda * hi * hi);
  BetaDomain domain{lambda / std::numbers::pi, lambda, 0.0, 0.0, 0.0};
  if (region == Region::Inside) {
    domain.hi = std::min(radius, hi);
    domain.neglected_mass = radius > hi ? hi_tail : 0.0;
  } else {
    domain.lo = std::min(radius, hi);
    domain.hi = hi;
    // Empty grid once radius >= hi; all remaining mass is neglected.
    domain.neglected_mass = radius >= hi ? std::exp(-lambda * radius * radius) : hi_tail;
  }
  return evaluate(domain, strategy, spec);
}

double decomposition_residual(double lambda, double radius, const Strategy& strategy,
                              const QuadratureSpec& spec) {
  double whole = 0.0;
  if (const auto* gain = std::get_if<Gain>(&strategy)) {
    whole = gaussian_gain_fidelity(lambda, gain->g);
  } else {
    whole = average_fidelity_quad(GaussianIso{lambda}, strategy, spec).value;
  }
  const double inside = restricted_fidelity_quad(lambda, radius, strategy, Region::Inside, spec).value;
  const double outside = restricted_fidelity_quad(lambda, radius, strategy, Region::Outside, spec).value;
  return std::abs(whole - inside - outside);
}

}  // namespace cvbound
