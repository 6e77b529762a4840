#pragma once

// Building blocks shared by the quadrature engine and the curve optimizer.

#include <span>
#include <vector>

#include "cvbound/coherent.hpp"

namespace cvbound::detail {

/// Radial weight c * exp(-lambda r^2) on lo <= |beta| <= hi.
struct BetaDomain {
  double scale = 0.0;
  double lambda = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// Prior mass beyond `hi` that the grid ignores.
  double neglected_mass = 0.0;
};

/// Throws NumericalError below the whole-plane lambda floor.
void check_quad_lambda(double lambda);

/// Radius where the Gaussian tail mass drops to tol / 2.
double gaussian_cut(double lambda, double tol);

/// Normalized prior as a radial domain, Gaussian tails cut by gaussian_cut.
BetaDomain prior_domain(const Prior& prior, double tol);

struct RadialPoint {
  double r;
  double weight;
};

/// Gauss-Legendre points on [lo, hi], with panel edges at every breakpoint
/// and panels no wider than panel_width. Weights are plain GL weights.
std::vector<RadialPoint> radial_points(double lo, double hi, std::span<const double> breakpoints,
                                       int nodes_per_panel, double panel_width);

/// Rings of the beta grid: GL weight * density(r) * r folded into `weight`.
class BetaGrid {
 public:
  BetaGrid(const BetaDomain& domain, int radial_nodes, double panel_width);

  /// int_domain density(beta) (1/pi) exp(-|a - beta|^2 - |s - beta|^2) d2beta
  /// for real a, s >= 0 (outcome and guess on the positive real axis).
  double slice(double a, double s, int angular_nodes, double angular_offset) const;

  bool empty() const { return rings_.empty(); }

 private:
  std::vector<RadialPoint> rings_;
};

/// Trapezoid node count used on a ring where the angular integrand is
/// exp(kappa cos theta): the base count plus enough to resolve the peak.
int angular_count(int base, double kappa);

}  // namespace cvbound::detail
