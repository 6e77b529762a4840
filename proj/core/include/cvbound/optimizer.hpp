#pragma once

#include "cvbound/bounds.hpp"
#include "cvbound/coherent.hpp"
#include "cvbound/quadrature.hpp"

namespace cvbound {

struct OptimizationReport {
  Strategy best_strategy = Gain{1.0};
  double best_value = 0.0;
  int evaluations = 0;
  /// Final bracket width (gain search) or last-sweep improvement (curves).
  double convergence_gap = 0.0;
  bool converged = false;
};

/// Gain search interval. Optima for every implemented prior lie in [0, 1].
inline constexpr double kMaxGain = 1.5;

/// Golden-section search over g in [0, kMaxGain] on the closed-form gain
/// fidelity, until the bracket is narrower than `tol`.
OptimizationReport optimize_gain(const Prior& prior, double tol = 1e-9);

/// Coordinate ascent over the guess radii of an n_nodes RadialCurve, started
/// from the best gain line. Each node is moved by a Brent search of
/// the quadrature objective restricted to the outcome radii it influences;
/// sweeps stop once a sweep improves the objective by at most `tol`.
/// best_value is the refined whole-grid quadrature of the final curve.
OptimizationReport optimize_guess_curve(const Prior& prior, int n_nodes, double tol = 1e-7,
                                        const QuadratureSpec& spec = {});

/// Best of the gain and curve optima: a lower estimate of the classical
/// bound (heterodyne measurement, coherent guesses). Throws NumericalError
/// if either search fails to converge.
BoundResult classical_bound_estimate(const Prior& prior, int curve_nodes = 8);

}  // namespace cvbound
