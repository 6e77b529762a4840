#include "cvbound/simulator.hpp"

#include <cmath>
#include <numbers>

#include "cvbound/errors.hpp"
#include "overloaded.hpp"
#include "parallel.hpp"

namespace cvbound {

namespace {

ComplexAmp uniform_disk_point(double radius, Xoshiro256pp& rng) {
  const double r = radius * std::sqrt(rng.uniform());
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, angle);
}

std::size_t chunk_count(std::int64_t n) {
  return static_cast<std::size_t>((n + kChunkSize - 1) / kChunkSize);
}

std::int64_t chunk_begin(std::size_t chunk) { return static_cast<std::int64_t>(chunk) * kChunkSize; }

std::int64_t chunk_end(std::size_t chunk, std::int64_t n) {
  return std::min(n, chunk_begin(chunk) + kChunkSize);
}

// Welford accumulator, merged with Chan's formula.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const auto total = count + other.count;
    const double delta = other.mean - mean;
    const double weight = static_cast<double>(other.count) / static_cast<double>(total);
    mean += delta * weight;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * weight;
    count = total;
  }
};

}  // namespace

ComplexAmp sample_heterodyne(ComplexAmp beta, Xoshiro256pp& rng) {
  return beta + circular_gaussian(rng, 1.0);
}

ComplexAmp sample_prior(const Prior& prior, Xoshiro256pp& rng) {
  return std::visit(
      detail::overloaded{
          [&](const GaussianIso& p) { return circular_gaussian(rng, 1.0 / p.lambda); },
          [&](const UniformDisk& p) { return uniform_disk_point(p.radius, rng); },
          [&](const TruncatedGaussian& p) {
            const double r2max = p.radius * p.radius;
            const double mass = std::expm1(-p.lambda * r2max);
            if (p.lambda == 0.0 || mass == 0.0) return uniform_disk_point(p.radius, rng);
            // Inverse CDF of |beta|^2 ~ Exp(lambda) truncated to [0, R^2].
            const double r2 = -std::log1p(rng.uniform() * mass) / p.lambda;
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            return std::polar(std::sqrt(std::min(r2, r2max)), angle);
          },
      },
      prior);
}

FidelityEstimate simulate(const Prior& prior, const Strategy& strategy, std::int64_t n,
                          std::uint64_t seed, unsigned workers) {
  validate(prior);
  validate(strategy);
  if (n < 1) throw InputError("simulate needs n >= 1");

  const std::size_t chunks = chunk_count(n);
  std::vector<Moments> partial(chunks);
  detail::parallel_for(chunks, workers, [&](std::size_t c) {
    Xoshiro256pp rng(seed, c);
    Moments m;
    for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
      const ComplexAmp beta = sample_prior(prior, rng);
      const ComplexAmp alpha = sample_heterodyne(beta, rng);
      m.add(fidelity_kernel(apply_strategy(strategy, alpha), beta));
    }
    partial[c] = m;
  });

  Moments total;
  for (const auto& m : partial) total.merge(m);

  FidelityEstimate estimate;
  estimate.mean = total.mean;
  estimate.n_samples = n;
  estimate.seed = seed;
  if (n > 1) {
    const double variance = total.m2 / static_cast<double>(n - 1);
    estimate.std_error = std::sqrt(variance / static_cast<double>(n));
  }
  return estimate;
}

std::vector<DatasetRecord> generate_dataset(double radius, std::int64_t n, const FidelityModel& model,
                                            std::uint64_t seed, unsigned workers) {
  if (!(radius > 0.0 && std::isfinite(radius))) throw InputError("dataset radius must be finite and > 0");
  if (n < 1) throw InputError("dataset size must be >= 1");
  if (const auto* c = std::get_if<ConstantFidelity>(&model)) {
    if (!(c->value >= 0.0 && c->value <= 1.0)) throw InputError("constant fidelity must lie in [0, 1]");
  } else {
    validate(Strategy{Gain{std::get<SimulatedGain>(model).g}});
  }

  std::vector<DatasetRecord> records(static_cast<std::size_t>(n));
  detail::parallel_for(chunk_count(n), workers, [&](std::size_t c) {
    Xoshiro256pp rng(seed, c);
    for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
      const ComplexAmp beta = uniform_disk_point(radius, rng);
      double fidelity = 0.0;
      if (const auto* constant = std::get_if<ConstantFidelity>(&model)) {
        fidelity = constant->value;
      } else {
        const double g = std::get<SimulatedGain>(model).g;
        fidelity = fidelity_kernel(g * sample_heterodyne(beta, rng), beta);
      }
      records[static_cast<std::size_t>(i)] = {beta.real(), beta.imag(), fidelity};
    }
  });
  return records;
}

}  // namespace cvbound
