#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "cvbound/dataset.hpp"

namespace cvbound {

enum class Verdict { Nonclassical, Inconclusive };

std::string to_string(Verdict verdict);

/// Outcome of the Gaussian-reweighting certification of a dataset.
struct Report {
  double lambda = 0.0;
  /// Gaussian mass outside the sample radius, exp(-lambda R^2).
  double tail_mass = 0.0;
  double sample_radius = 0.0;
  double weighted_fidelity = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// (1 + lambda) / (2 + lambda).
  double classical_bound = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::int64_t n_records = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Self-normalized mean sum_i w_i F_i / sum_i w_i with w_i = exp(-lambda |beta_i|^2).
/// Reweights uniform-area samples to the Gaussian restricted to the sampled
/// area. lambda = 0 is the plain mean; constant fidelities come back exactly.
double weighted_fidelity(std::span<const DatasetRecord> records, double lambda);

/// Percentile bootstrap interval of weighted_fidelity. Resample b draws its
/// indices from generator stream b of `seed`. The interval is widened to
/// include the point estimate if needed.
std::pair<double, double> bootstrap_ci(std::span<const DatasetRecord> records, double lambda, int resamples,
                                       std::uint64_t seed, double level = 0.95, unsigned workers = 0);

struct VerdictOptions {
  /// Allowed Gaussian tail mass outside the sampled disk.
  double epsilon = 0.01;
  int resamples = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
  /// Sampled-area radius; max |beta| of the data when unset.
  std::optional<double> radius;
  unsigned workers = 0;
};

/// Threshold the CI lower bound must beat: classical_bound / (1 - tail_mass).
/// Any measure-and-prepare strategy with Gaussian average F <= B has
/// F_inside <= B / (1 - tail) on the sampled disk, since F_outside >= 0.
double certification_threshold(const Report& report);

/// Picks lambda so the Gaussian tail outside the sampled radius is epsilon,
/// reweights, bootstraps, and certifies NONCLASSICAL only if the CI lower
/// bound exceeds certification_threshold().
Report verdict(std::span<const DatasetRecord> records, const VerdictOptions& options);

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& json);

/// Human-readable table, including the inputs that produced the report.
std::string format_report(const Report& report, const VerdictOptions& options);

}  // namespace cvbound
