#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cvbound {

/// Coherent-state amplitude. Both quadratures are dimensionless.
using ComplexAmp = std::complex<double>;

// ---------------------------------------------------------------------------
// Priors over input amplitudes. All variants are isotropic about the origin.

/// (lambda/pi) exp(-lambda |beta|^2) over the whole plane.
struct GaussianIso {
  double lambda;
};

/// 1/(pi R^2) on |beta| <= R.
struct UniformDisk {
  double radius;
};

/// Gaussian restricted to |beta| <= R and renormalized. lambda = 0 is the
/// uniform disk.
struct TruncatedGaussian {
  double lambda;
  double radius;
};

using Prior = std::variant<GaussianIso, UniformDisk, TruncatedGaussian>;

/// Throws InputError if parameters are out of range or non-finite.
void validate(const Prior& prior);

/// Radius beyond which the prior has no mass; infinity for GaussianIso.
double support_radius(const Prior& prior);

std::string describe(const Prior& prior);

// ---------------------------------------------------------------------------
// Guess maps alpha -> f(alpha). Every strategy keeps the direction of alpha.

/// f(alpha) = g * alpha.
struct Gain {
  double g;
};

/// Tabulated guess radius as a function of the outcome radius.
///
/// Nodes start at r = 0 with strictly increasing radii. Between nodes the
/// guess radius is interpolated linearly; past the last node the last
/// rho/r ratio is kept, so the curve behaves like a gain far out.
class RadialCurve {
 public:
  struct Node {
    double r;
    double rho;
  };

  explicit RadialCurve(std::vector<Node> nodes);

  /// Guess radius for an outcome of modulus `r` (r >= 0).
  double guess_radius(double r) const;

  std::span<const Node> nodes() const { return nodes_; }

  /// Same radii, new guess values. Used by the optimizer.
  void set_rho(std::size_t index, double rho);

 private:
  std::vector<Node> nodes_;
};

using Strategy = std::variant<Gain, RadialCurve>;

void validate(const Strategy& strategy);

std::string describe(const Strategy& strategy);

// ---------------------------------------------------------------------------

/// |<alpha|beta>|^2 = exp(-|alpha - beta|^2).
double fidelity_kernel(ComplexAmp alpha, ComplexAmp beta);

/// Normalized prior density at beta.
double prior_density(const Prior& prior, ComplexAmp beta);

/// Mass of GaussianIso(lambda) outside the disk of radius R: exp(-lambda R^2).
double tail_mass(double lambda, double radius);

ComplexAmp apply_strategy(const Strategy& strategy, ComplexAmp alpha);

}  // namespace cvbound
