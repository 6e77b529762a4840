#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cvbound/bounds.hpp"
#include "cvbound/errors.hpp"
#include "cvbound/quadrature.hpp"
#include "oracles.hpp"

namespace cvbound {
namespace {

TEST(Quadrature, GaussianOptimalGain) {
  const auto r = average_fidelity_quad(GaussianIso{1.0}, Gain{0.5});
  EXPECT_NEAR(r.value, 2.0 / 3.0, r.error_estimate + 1e-12);
  EXPECT_LT(r.error_estimate, 1e-8);
}

TEST(Quadrature, DiskExample) {
  const auto r = average_fidelity_quad(UniformDisk{1.0}, Gain{0.36});
  EXPECT_NEAR(r.value, 0.742528352279, 1e-11);
}

TEST(Quadrature, UnitGainGivesOneHalf) {
  for (const Prior& p : {Prior{GaussianIso{0.3}}, Prior{UniformDisk{2.5}}, Prior{TruncatedGaussian{1.0, 2.0}}}) {
    const auto r = average_fidelity_quad(p, Gain{1.0});
    EXPECT_NEAR(r.value, 0.5, r.error_estimate + 1e-12) << describe(p);
  }
}

TEST(Quadrature, TinyDiskWithZeroGain) {
  const double radius = 1e-4;
  const auto r = average_fidelity_quad(UniformDisk{radius}, Gain{0.0});
  EXPECT_NEAR(r.value, 1.0, radius * radius);
  EXPECT_LT(r.value, 1.0);
}

TEST(Quadrature, MatchesClosedFormsOnGrid) {
  const std::vector<Prior> priors{GaussianIso{0.2}, GaussianIso{1.0}, GaussianIso{5.0}, UniformDisk{0.5},
                                  UniformDisk{1.0}, UniformDisk{3.0}, TruncatedGaussian{1.0, 3.0},
                                  TruncatedGaussian{0.3, 2.0}};
  for (const auto& prior : priors) {
    for (double g : {0.0, 0.3, 0.7, 1.2}) {
      const auto r = average_fidelity_quad(prior, Gain{g});
      EXPECT_NEAR(r.value, gain_fidelity(prior, g), r.error_estimate + 1e-12) << describe(prior) << " g=" << g;
    }
  }
}

TEST(Quadrature, MatchesBruteForceOracleForGains) {
  EXPECT_NEAR(average_fidelity_quad(GaussianIso{1.0}, Gain{0.3}).value, oracle::gaussian_gain_fidelity(1.0, 0.3),
              1e-9);
  EXPECT_NEAR(average_fidelity_quad(UniformDisk{2.0}, Gain{0.7}).value,
              oracle::truncated_gain_fidelity(0.0, 2.0, 0.7), 1e-9);
  EXPECT_NEAR(average_fidelity_quad(TruncatedGaussian{0.3, 2.0}, Gain{0.7}).value,
              oracle::truncated_gain_fidelity(0.3, 2.0, 0.7), 1e-9);
}

TEST(Quadrature, MatchesBruteForceOracleForCurve) {
  const RadialCurve curve({{0.0, 0.0}, {0.5, 0.1}, {1.0, 0.45}, {2.0, 1.4}, {3.0, 2.6}});
  const double radius = 1.5;
  const auto betas = oracle::disk(radius, 3, 12);
  const auto density = [radius](double, double) { return 1.0 / (std::numbers::pi * radius * radius); };
  const double expected = oracle::radial_map_fidelity(
      betas, density, [&](double r) { return curve.guess_radius(r); }, radius + 6.0, 60);
  const auto r = average_fidelity_quad(UniformDisk{radius}, curve);
  EXPECT_NEAR(r.value, expected, 1e-6);
  EXPECT_LT(r.error_estimate, 1e-8);
}

TEST(Quadrature, RestrictedRegionsAddUp) {
  for (double radius : {0.5, 1.0, 3.0}) {
    for (double g : {0.2, 0.5, 0.9}) {
      EXPECT_LT(decomposition_residual(1.0, radius, Gain{g}), 1e-10) << radius << ' ' << g;
    }
  }
  EXPECT_LT(decomposition_residual(2.0, 0.5, Gain{1.0 / 3.0}), 1e-10);
  EXPECT_LT(decomposition_residual(1.0, 1.0, Gain{0.0}), 1e-10);
  const RadialCurve curve({{0.0, 0.0}, {1.0, 0.5}, {2.0, 1.2}, {4.0, 3.0}});
  EXPECT_LT(decomposition_residual(0.5, 1.5, curve), 1e-10);
}

TEST(Quadrature, RestrictedEdgeCases) {
  const auto inside = restricted_fidelity_quad(1.0, 100.0, Gain{0.5}, Region::Inside);
  EXPECT_NEAR(inside.value, 2.0 / 3.0, 1e-10);
  const auto outside = restricted_fidelity_quad(1.0, 100.0, Gain{0.5}, Region::Outside);
  EXPECT_EQ(outside.value, 0.0);
  EXPECT_LE(outside.truncation_bound, 1.0);
  EXPECT_THROW(restricted_fidelity_quad(1.0, 0.0, Gain{0.5}, Region::Inside), InputError);
  EXPECT_THROW(restricted_fidelity_quad(0.0, 1.0, Gain{0.5}, Region::Inside), NumericalError);
}

TEST(Quadrature, RefinementReducesError) {
  // Deliberately coarse base rule so the discretization error is visible.
  QuadratureSpec coarse;
  coarse.radial_nodes = 8;
  coarse.angular_nodes = 8;
  coarse.panel_width = 4.0;
  coarse.refine = false;
  const double exact = gaussian_gain_fidelity(0.2, 0.3);
  const double base_error = std::abs(average_fidelity_quad(GaussianIso{0.2}, Gain{0.3}, coarse).value - exact);
  QuadratureSpec fine = coarse;
  fine.radial_nodes *= 2;
  fine.angular_nodes *= 2;
  const double fine_error = std::abs(average_fidelity_quad(GaussianIso{0.2}, Gain{0.3}, fine).value - exact);
  ASSERT_GT(base_error, 1e-13);
  EXPECT_GE(base_error / std::max(fine_error, 1e-300), 4.0);
}

TEST(Quadrature, AngularOffsetInvariance) {
  const RadialCurve curve({{0.0, 0.0}, {1.0, 0.5}, {2.0, 1.5}, {3.0, 2.7}});
  for (const Prior& p : {Prior{GaussianIso{0.5}}, Prior{UniformDisk{2.0}}}) {
    QuadratureSpec spec;
    const double reference = average_fidelity_quad(p, curve, spec).value;
    for (double offset : {0.01, 0.1, 0.37, 1.0}) {
      spec.angular_offset = offset;
      EXPECT_NEAR(average_fidelity_quad(p, curve, spec).value, reference, 1e-10) << offset;
    }
  }
}

TEST(Quadrature, OuterCutIsFarEnough) {
  for (const Prior& p : {Prior{GaussianIso{0.5}}, Prior{UniformDisk{2.0}}}) {
    QuadratureSpec spec;
    const auto r = average_fidelity_quad(p, Gain{0.6}, spec);
    spec.outer_cut_radius = 1.5 * r.outer_cut_radius;
    const auto wider = average_fidelity_quad(p, Gain{0.6}, spec);
    EXPECT_LT(std::abs(wider.value - r.value), QuadratureSpec{}.truncation_tol);
  }
}

TEST(Quadrature, WorkerCountDoesNotChangeResult) {
  const RadialCurve curve({{0.0, 0.0}, {1.0, 0.5}, {2.0, 1.5}, {3.0, 2.7}});
  QuadratureSpec spec;
  spec.workers = 1;
  const double one = average_fidelity_quad(GaussianIso{0.3}, curve, spec).value;
  for (unsigned w : {2u, 3u, 8u}) {
    spec.workers = w;
    EXPECT_EQ(average_fidelity_quad(GaussianIso{0.3}, curve, spec).value, one) << w;
  }
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(average_fidelity_quad(GaussianIso{1e-7}, Gain{0.5}), NumericalError);
  EXPECT_THROW(average_fidelity_quad(GaussianIso{-1.0}, Gain{0.5}), InputError);
  EXPECT_THROW(average_fidelity_quad(UniformDisk{1.0}, Gain{-0.5}), InputError);
  QuadratureSpec bad;
  bad.radial_nodes = 4;
  EXPECT_THROW(average_fidelity_quad(UniformDisk{1.0}, Gain{0.5}, bad), InputError);
  bad = {};
  bad.truncation_tol = 0.0;
  EXPECT_THROW(average_fidelity_quad(UniformDisk{1.0}, Gain{0.5}, bad), InputError);
  bad = {};
  bad.outer_cut_radius = -1.0;
  EXPECT_THROW(average_fidelity_quad(UniformDisk{1.0}, Gain{0.5}, bad), InputError);
}

}  // namespace
}  // namespace cvbound
