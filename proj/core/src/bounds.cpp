#include "cvbound/bounds.hpp"

#include <cmath>
#include <limits>

#include "cvbound/errors.hpp"
#include "overloaded.hpp"

namespace cvbound {

namespace {

// (1 - exp(-x)) / x, continuous at 0.
double one_minus_exp_over_x(double x) {
  if (x == 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

void require_gain(double g) {
  if (!(std::isfinite(g) && g >= 0.0)) throw InputError("gain must be finite and >= 0");
}

}  // namespace

double gaussian_bound(double lambda) {
  if (!(lambda >= 0.0)) throw InputError("gaussian_bound needs lambda >= 0");
  if (std::isinf(lambda)) return 1.0;
  return (1.0 + lambda) / (2.0 + lambda);
}

double gaussian_gain_fidelity(double lambda, double g) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("gaussian_gain_fidelity needs finite lambda > 0");
  }
  require_gain(g);
  // (lambda + 1)(1 + g^2) - 2g written as lambda (1 + g^2) + (1 - g)^2 to
  // avoid cancellation near g = 1.
  const double one_minus_g = 1.0 - g;
  return lambda / (lambda * (1.0 + g * g) + one_minus_g * one_minus_g);
}

double optimal_gain_gaussian(double lambda) {
  if (!(lambda > 0.0)) throw InputError("optimal_gain_gaussian needs lambda > 0");
  return 1.0 / (1.0 + lambda);
}

double truncated_gain_fidelity(double lambda, double radius, double g) {
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw InputError("truncated_gain_fidelity needs finite lambda >= 0");
  }
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw InputError("disk radius must be finite and > 0");
  }
  require_gain(g);
  // Heterodyne noise w: E_w exp(-|(g-1)beta + g w|^2) = exp(-k|beta|^2)/(1+g^2).
  // The remaining radial average over the truncated Gaussian is a ratio of
  // (1 - e^{-x})/x factors.
  const double one_minus_g = 1.0 - g;
  const double spread = 1.0 + g * g;
  const double k = one_minus_g * one_minus_g / spread;
  const double r2 = radius * radius;
  return one_minus_exp_over_x((lambda + k) * r2) / (one_minus_exp_over_x(lambda * r2) * spread);
}

double disk_gain_fidelity(double radius, double g) {
  return truncated_gain_fidelity(0.0, radius, g);
}

double gain_fidelity(const Prior& prior, double g) {
  validate(prior);
  return std::visit(detail::overloaded{
                        [&](const GaussianIso& p) { return gaussian_gain_fidelity(p.lambda, g); },
                        [&](const UniformDisk& p) { return disk_gain_fidelity(p.radius, g); },
                        [&](const TruncatedGaussian& p) {
                          return truncated_gain_fidelity(p.lambda, p.radius, g);
                        },
                    },
                    prior);
}

double select_lambda(double radius, double epsilon) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InputError("select_lambda needs finite radius > 0");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError("select_lambda needs 0 < epsilon < 1");
  }
  return -std::log(epsilon) / (radius * radius);
}

}  // namespace cvbound
