#pragma once

#include <optional>

#include "cvbound/coherent.hpp"

namespace cvbound {

/// Polar product rule: Gauss-Legendre panels in radius, equispaced
/// (trapezoid) nodes in angle.
struct QuadratureSpec {
  /// Gauss-Legendre points per radial panel (>= 8).
  int radial_nodes = 16;
  /// Base number of angular nodes per ring (>= 8). Rings where the
  /// integrand is sharply peaked in angle get more; see angular_count().
  int angular_nodes = 32;
  /// Target bound on the neglected (truncated) mass.
  double truncation_tol = 1e-10;
  /// Maximum width of a radial panel.
  double panel_width = 0.5;
  /// Outcome radius where the alpha integral is cut. Derived from the
  /// support and truncation_tol when unset.
  std::optional<double> outer_cut_radius;
  /// Rotates the angular grid; results are invariant to it.
  double angular_offset = 0.0;
  /// Recompute with doubled radial and angular nodes and report the
  /// difference as part of the error estimate.
  bool refine = true;
  /// Worker threads for the outcome-radius loop; 0 means hardware
  /// concurrency. The reduction order is fixed, so results do not depend
  /// on it.
  unsigned workers = 1;
};

struct QuadResult {
  double value = 0.0;
  /// Truncation bound plus the base/refined difference.
  double error_estimate = 0.0;
  /// Truncation bound alone.
  double truncation_bound = 0.0;
  double outer_cut_radius = 0.0;
};

/// Smallest GaussianIso lambda the engine accepts. Below it the alpha
/// integrand flattens out and the grid would need to be enormous.
inline constexpr double kMinQuadLambda = 1e-6;

/// Average fidelity of `strategy` under `prior` with heterodyne outcomes:
///   int p(beta) (1/pi) e^{-|alpha-beta|^2} e^{-|f(alpha)-beta|^2} d2beta d2alpha.
QuadResult average_fidelity_quad(const Prior& prior, const Strategy& strategy,
                                 const QuadratureSpec& spec = {});

enum class Region { Inside, Outside };

/// Same integrand with the unnormalized Gaussian weight (lambda/pi)
/// e^{-lambda |beta|^2}, beta restricted to |beta| <= R (Inside) or
/// |beta| > R (Outside). Inside + Outside is the whole-plane value.
QuadResult restricted_fidelity_quad(double lambda, double radius, const Strategy& strategy,
                                    Region region, const QuadratureSpec& spec = {});

/// |F - F_inside - F_outside| where F is the closed form for Gain
/// strategies and the whole-plane quadrature otherwise.
double decomposition_residual(double lambda, double radius, const Strategy& strategy,
                              const QuadratureSpec& spec = {});

}  // namespace cvbound
