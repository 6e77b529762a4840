#pragma once

#include <optional>

#include "cvbound/coherent.hpp"

namespace cvbound {

/// Fidelity value for a prior, with the gain that attains it when the value
/// is an optimum.
struct BoundResult {
  double value = 0.0;
  std::optional<double> optimal_gain;
  Prior prior = GaussianIso{1.0};
  /// Strategy attaining `value`, when known.
  std::optional<Strategy> strategy;
};

/// Classical measure-and-prepare bound for GaussianIso(lambda):
/// (1 + lambda) / (2 + lambda). lambda = 0 is the uniform-plane limit 1/2.
double gaussian_bound(double lambda);

/// Average fidelity of the gain strategy g under GaussianIso(lambda) with
/// heterodyne outcomes: lambda / ((lambda + 1)(1 + g^2) - 2g).
double gaussian_gain_fidelity(double lambda, double g);

/// Maximizer of gaussian_gain_fidelity: 1 / (1 + lambda).
double optimal_gain_gaussian(double lambda);

/// Average fidelity of the gain strategy g under UniformDisk(R):
/// (1 - exp(-k R^2)) / (R^2 (1 - g)^2) with k = (1 - g)^2 / (1 + g^2).
/// Exactly 1/2 at g = 1.
double disk_gain_fidelity(double radius, double g);

/// Gain-strategy fidelity under TruncatedGaussian(lambda, R). Reduces to
/// disk_gain_fidelity at lambda = 0.
double truncated_gain_fidelity(double lambda, double radius, double g);

/// Closed-form gain-strategy fidelity for any prior variant.
double gain_fidelity(const Prior& prior, double g);

/// Smallest lambda whose Gaussian tail outside radius R is at most epsilon:
/// ln(1/epsilon) / R^2.
double select_lambda(double radius, double epsilon);

}  // namespace cvbound
