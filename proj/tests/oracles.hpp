#pragma once

// Brute-force references for the closed forms and the polar engine. They use
// Cartesian and Gauss-Legendre-in-angle rules from Boost.Math so they share
// no code path with the library.

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace cvbound::oracle {

struct Point {
  double x;
  double y;
  double w;
};

/// Composite 10-point Gauss-Legendre nodes on [a, b] with `panels` panels.
inline std::vector<std::pair<double, double>> line_nodes(double a, double b, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  std::vector<std::pair<double, double>> nodes;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double x = abscissa[i];
      const double w = weights[i] * half;
      nodes.emplace_back(mid + half * x, w);
      if (x != 0.0) nodes.emplace_back(mid - half * x, w);
    }
  }
  return nodes;
}

/// Square [-L, L]^2, unit-ish panels.
inline std::vector<Point> square(double half_side, int panels) {
  const auto line = line_nodes(-half_side, half_side, panels);
  std::vector<Point> points;
  points.reserve(line.size() * line.size());
  for (const auto& [x, wx] : line) {
    for (const auto& [y, wy] : line) points.push_back({x, y, wx * wy});
  }
  return points;
}

/// Disk of radius R in polar form, Gauss-Legendre in both radius and angle.
inline std::vector<Point> disk(double radius, int radial_panels, int angular_panels) {
  const auto radial = line_nodes(0.0, radius, radial_panels);
  const auto angular = line_nodes(0.0, 2.0 * std::numbers::pi, angular_panels);
  std::vector<Point> points;
  for (const auto& [r, wr] : radial) {
    for (const auto& [t, wt] : angular) points.push_back({r * std::cos(t), r * std::sin(t), r * wr * wt});
  }
  return points;
}

/// int density(beta) (1/pi) e^{-|alpha-beta|^2} e^{-|g alpha - beta|^2} over
/// the given beta points and a Cartesian alpha square.
inline double gain_fidelity(const std::vector<Point>& betas, const std::function<double(double, double)>& density,
                            double g, double alpha_half_side, int alpha_panels) {
  const auto alphas = square(alpha_half_side, alpha_panels);
  std::vector<double> beta_weight(betas.size());
  for (std::size_t j = 0; j < betas.size(); ++j) beta_weight[j] = betas[j].w * density(betas[j].x, betas[j].y);
  double total = 0.0;
  for (const auto& a : alphas) {
    double inner = 0.0;
    for (std::size_t j = 0; j < betas.size(); ++j) {
      const double dx = a.x - betas[j].x;
      const double dy = a.y - betas[j].y;
      const double d1 = dx * dx + dy * dy;
      if (d1 > 40.0) continue;
      const double ex = g * a.x - betas[j].x;
      const double ey = g * a.y - betas[j].y;
      inner += beta_weight[j] * std::exp(-d1 - ex * ex - ey * ey);
    }
    total += a.w * inner;
  }
  return total / std::numbers::pi;
}

/// Same integral for a radial guess alpha -> guess_radius(|alpha|) alpha / |alpha|.
inline double radial_map_fidelity(const std::vector<Point>& betas,
                                  const std::function<double(double, double)>& density,
                                  const std::function<double(double)>& guess_radius, double alpha_half_side,
                                  int alpha_panels) {
  const auto alphas = square(alpha_half_side, alpha_panels);
  double total = 0.0;
  for (const auto& a : alphas) {
    const double r = std::hypot(a.x, a.y);
    const double scale = r > 0.0 ? guess_radius(r) / r : 0.0;
    const double gx = scale * a.x;
    const double gy = scale * a.y;
    double inner = 0.0;
    for (const auto& b : betas) {
      const double dx = a.x - b.x;
      const double dy = a.y - b.y;
      const double d1 = dx * dx + dy * dy;
      if (d1 > 40.0) continue;
      const double ex = gx - b.x;
      const double ey = gy - b.y;
      inner += b.w * density(b.x, b.y) * std::exp(-d1 - ex * ex - ey * ey);
    }
    total += a.w * inner;
  }
  return total / std::numbers::pi;
}

inline double gaussian_gain_fidelity(double lambda, double g) {
  const double half = std::sqrt(36.0 / lambda);
  const auto betas = square(half, static_cast<int>(std::ceil(2.0 * half)));
  const auto density = [lambda](double x, double y) {
    return lambda / std::numbers::pi * std::exp(-lambda * (x * x + y * y));
  };
  const double alpha_half = half + 6.0;
  return gain_fidelity(betas, density, g, alpha_half, static_cast<int>(std::ceil(2.0 * alpha_half)));
}

/// Truncated Gaussian on the disk (lambda = 0: uniform disk).
inline double truncated_gain_fidelity(double lambda, double radius, double g) {
  const auto betas = disk(radius, std::max(2, static_cast<int>(std::ceil(2.0 * radius))), 12);
  double mass = 0.0;
  for (const auto& b : betas) mass += b.w * std::exp(-lambda * (b.x * b.x + b.y * b.y));
  const auto density = [lambda, mass](double x, double y) { return std::exp(-lambda * (x * x + y * y)) / mass; };
  const double alpha_half = radius + 6.0;
  return gain_fidelity(betas, density, g, alpha_half, static_cast<int>(std::ceil(2.0 * alpha_half)));
}

/// Integral of the normalized density of `prior_density` over a disk.
inline double disk_mass(const std::function<double(double, double)>& density, double radius) {
  double total = 0.0;
  for (const auto& p : disk(radius, std::max(4, static_cast<int>(std::ceil(4.0 * radius))), 12)) {
    total += p.w * density(p.x, p.y);
  }
  return total;
}

/// Argmax of f on an evenly spaced grid.
inline std::pair<double, double> grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                                             int points) {
  double best_x = lo;
  double best = f(lo);
  for (int i = 1; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

}  // namespace cvbound::oracle
