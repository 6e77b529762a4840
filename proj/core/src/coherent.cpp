#include "cvbound/coherent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cvbound/errors.hpp"
#include "overloaded.hpp"

namespace cvbound {

namespace {

using detail::overloaded;

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

double uniform_disk_density(double radius) {
  return 1.0 / (std::numbers::pi * radius * radius);
}

}  // namespace

void validate(const Prior& prior) {
  std::visit(overloaded{
                 [](const GaussianIso& p) {
                   require(std::isfinite(p.lambda) && p.lambda > 0.0,
                           "gaussian prior needs finite lambda > 0");
                 },
                 [](const UniformDisk& p) {
                   require(std::isfinite(p.radius) && p.radius > 0.0,
                           "disk prior needs finite radius > 0");
                 },
                 [](const TruncatedGaussian& p) {
                   require(std::isfinite(p.lambda) && p.lambda >= 0.0,
                           "truncated gaussian needs finite lambda >= 0");
                   require(std::isfinite(p.radius) && p.radius > 0.0,
                           "truncated gaussian needs finite radius > 0");
                 },
             },
             prior);
}

double support_radius(const Prior& prior) {
  return std::visit(
      overloaded{
          [](const GaussianIso&) { return std::numeric_limits<double>::infinity(); },
          [](const UniformDisk& p) { return p.radius; },
          [](const TruncatedGaussian& p) { return p.radius; },
      },
      prior);
}

std::string describe(const Prior& prior) {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const GaussianIso& p) { out << "gaussian:" << p.lambda; },
                 [&](const UniformDisk& p) { out << "disk:" << p.radius; },
                 [&](const TruncatedGaussian& p) {
                   out << "truncgauss:" << p.lambda << ',' << p.radius;
                 },
             },
             prior);
  return out.str();
}

RadialCurve::RadialCurve(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  require(nodes_.size() >= 2, "radial curve needs at least two nodes");
  require(nodes_.front().r == 0.0, "radial curve must start at r = 0");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    require(std::isfinite(n.r) && std::isfinite(n.rho) && n.rho >= 0.0,
            "radial curve nodes must be finite with rho >= 0");
    if (i > 0) {
      require(n.r > nodes_[i - 1].r, "radial curve radii must be strictly increasing");
    }
  }
}

double RadialCurve::guess_radius(double r) const {
  const auto& last = nodes_.back();
  if (r >= last.r) return r * (last.rho / last.r);
  // First node with radius > r; r >= 0 = nodes_[0].r so hi >= 1.
  std::size_t hi = 1;
  while (nodes_[hi].r <= r) ++hi;
  const auto& a = nodes_[hi - 1];
  const auto& b = nodes_[hi];
  const double t = (r - a.r) / (b.r - a.r);
  return a.rho + t * (b.rho - a.rho);
}

void RadialCurve::set_rho(std::size_t index, double rho) {
  require(index < nodes_.size(), "radial curve node index out of range");
  require(std::isfinite(rho) && rho >= 0.0, "radial curve rho must be finite and >= 0");
  nodes_[index].rho = rho;
}

void validate(const Strategy& strategy) {
  if (const auto* gain = std::get_if<Gain>(&strategy)) {
    require(std::isfinite(gain->g) && gain->g >= 0.0, "gain must be finite and >= 0");
  }
  // RadialCurve validates on construction.
}

std::string describe(const Strategy& strategy) {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const Gain& s) { out << "gain:" << s.g; },
                 [&](const RadialCurve& s) { out << "curve:" << s.nodes().size() << " nodes"; },
             },
             strategy);
  return out.str();
}

double fidelity_kernel(ComplexAmp alpha, ComplexAmp beta) {
  return std::exp(-std::norm(alpha - beta));
}

double prior_density(const Prior& prior, ComplexAmp beta) {
  const double r2 = std::norm(beta);
  return std::visit(
      overloaded{
          [&](const GaussianIso& p) {
            return p.lambda / std::numbers::pi * std::exp(-p.lambda * r2);
          },
          [&](const UniformDisk& p) {
            return r2 <= p.radius * p.radius ? uniform_disk_density(p.radius) : 0.0;
          },
          [&](const TruncatedGaussian& p) {
            if (r2 > p.radius * p.radius) return 0.0;
            const double mass = -std::expm1(-p.lambda * p.radius * p.radius);
            if (p.lambda == 0.0 || mass == 0.0) return uniform_disk_density(p.radius);
            // lambda * R^2 tiny: mass ~ lambda R^2 and the ratio is smooth.
            return p.lambda / std::numbers::pi * std::exp(-p.lambda * r2) / mass;
          },
      },
      prior);
}

double tail_mass(double lambda, double radius) {
  require(lambda > 0.0 && std::isfinite(lambda), "tail_mass needs finite lambda > 0");
  require(radius > 0.0, "tail_mass needs radius > 0");
  return std::exp(-lambda * radius * radius);
}

ComplexAmp apply_strategy(const Strategy& strategy, ComplexAmp alpha) {
  return std::visit(overloaded{
                        [&](const Gain& s) { return s.g * alpha; },
                        [&](const RadialCurve& s) {
                          const double r = std::abs(alpha);
                          if (r == 0.0) return ComplexAmp{0.0, 0.0};
                          return (s.guess_radius(r) / r) * alpha;
                        },
                    },
                    strategy);
}

}  // namespace cvbound
