#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cvbound/coherent.hpp"
#include "cvbound/dataset.hpp"
#include "cvbound/rng.hpp"

namespace cvbound {

struct FidelityEstimate {
  double mean = 0.0;
  /// Sample standard deviation / sqrt(n).
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Samples per generator stream. Fixed, so results do not depend on the
/// worker count.
inline constexpr std::int64_t kChunkSize = 1 << 16;

/// Heterodyne outcome for input beta: alpha = beta + w with w circular
/// Gaussian, variance 1/2 per quadrature, i.e. density (1/pi) e^{-|alpha-beta|^2}.
ComplexAmp sample_heterodyne(ComplexAmp beta, Xoshiro256pp& rng);

/// Draws one input amplitude from the prior.
ComplexAmp sample_prior(const Prior& prior, Xoshiro256pp& rng);

/// Monte Carlo estimate of the measure-and-prepare average fidelity.
FidelityEstimate simulate(const Prior& prior, const Strategy& strategy, std::int64_t n,
                          std::uint64_t seed, unsigned workers = 0);

/// Per-record fidelity written into generated datasets.
struct ConstantFidelity {
  double value;
};
/// One measure-and-prepare round with f(alpha) = g alpha.
struct SimulatedGain {
  double g;
};
using FidelityModel = std::variant<ConstantFidelity, SimulatedGain>;

/// Inputs uniform on the disk of radius R with fidelities from `model`.
std::vector<DatasetRecord> generate_dataset(double radius, std::int64_t n, const FidelityModel& model,
                                            std::uint64_t seed, unsigned workers = 0);

}  // namespace cvbound
