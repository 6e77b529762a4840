#include "cvbound/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "cvbound/bounds.hpp"
#include "cvbound/coherent.hpp"
#include "cvbound/errors.hpp"
#include "cvbound/rng.hpp"
#include "parallel.hpp"

namespace cvbound {

namespace {

// Relative slack on the tail check; exp(log(eps)) can land one ulp above eps.
constexpr double kTailSlack = 1e-12;

struct Weighted {
  std::vector<double> weight;
  std::vector<double> excess;  // F_i - min F
  double floor = 0.0;          // min F
};

Weighted prepare(std::span<const DatasetRecord> records, double lambda) {
  if (records.empty()) throw InputError("weighted fidelity needs at least one record");
  if (!(lambda >= 0.0 && std::isfinite(lambda))) throw InputError("weighting lambda must be finite and >= 0");

  double min_norm = std::numeric_limits<double>::infinity();
  double min_fidelity = 1.0;
  for (const auto& r : records) {
    min_norm = std::min(min_norm, r.beta_re * r.beta_re + r.beta_im * r.beta_im);
    min_fidelity = std::min(min_fidelity, r.fidelity);
  }
  Weighted w;
  w.floor = min_fidelity;
  w.weight.reserve(records.size());
  w.excess.reserve(records.size());
  for (const auto& r : records) {
    // Shifted by the smallest |beta|^2 so the largest weight is 1.
    const double norm = r.beta_re * r.beta_re + r.beta_im * r.beta_im;
    w.weight.push_back(std::exp(-lambda * (norm - min_norm)));
    w.excess.push_back(r.fidelity - min_fidelity);
  }
  return w;
}

// Linear interpolation between order statistics (type 7).
double quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string to_string(Verdict verdict) {
  return verdict == Verdict::Nonclassical ? "NONCLASSICAL" : "INCONCLUSIVE";
}

double weighted_fidelity(std::span<const DatasetRecord> records, double lambda) {
  const Weighted w = prepare(records, lambda);
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < w.weight.size(); ++i) {
    numerator += w.weight[i] * w.excess[i];
    denominator += w.weight[i];
  }
  return w.floor + numerator / denominator;
}

std::pair<double, double> bootstrap_ci(std::span<const DatasetRecord> records, double lambda, int resamples,
                                       std::uint64_t seed, double level, unsigned workers) {
  if (records.size() < 2) throw InputError("bootstrap needs at least two records");
  if (resamples < 100) throw InputError("bootstrap needs at least 100 resamples");
  if (!(level > 0.0 && level < 1.0)) throw InputError("confidence level must lie in (0, 1)");

  const Weighted w = prepare(records, lambda);
  const double point = weighted_fidelity(records, lambda);
  const bool constant = std::all_of(w.excess.begin(), w.excess.end(), [](double e) { return e == 0.0; });
  if (constant) return {point, point};

  const auto n = static_cast<std::uint64_t>(records.size());
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  detail::parallel_for(stats.size(), workers, [&](std::size_t b) {
    Xoshiro256pp rng(seed, b);
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(rng.index(n));
      numerator += w.weight[i] * w.excess[i];
      denominator += w.weight[i];
    }
    stats[b] = w.floor + numerator / denominator;
  });
  std::sort(stats.begin(), stats.end());

  const double tail = (1.0 - level) / 2.0;
  const double low = quantile(stats, tail);
  const double high = quantile(stats, 1.0 - tail);
  return {std::min(low, point), std::max(high, point)};
}

double certification_threshold(const Report& report) {
  return report.classical_bound / (1.0 - report.tail_mass);
}

Report verdict(std::span<const DatasetRecord> records, const VerdictOptions& options) {
  if (records.empty()) throw InputError("verdict needs a nonempty dataset");
  if (options.radius && !(*options.radius > 0.0 && std::isfinite(*options.radius))) {
    throw InputError("radius override must be finite and > 0");
  }

  Report report;
  report.n_records = static_cast<std::int64_t>(records.size());
  report.seed = options.seed;
  report.sample_radius = options.radius.value_or(sample_radius(records));
  if (!(report.sample_radius > 0.0)) {
    throw InputError("sample radius is zero; all inputs sit at the origin");
  }
  report.lambda = select_lambda(report.sample_radius, options.epsilon);
  report.tail_mass = tail_mass(report.lambda, report.sample_radius);
  report.classical_bound = gaussian_bound(report.lambda);
  report.weighted_fidelity = weighted_fidelity(records, report.lambda);
  if (records.size() == 1) {
    report.ci_low = report.ci_high = report.weighted_fidelity;
  } else {
    std::tie(report.ci_low, report.ci_high) = bootstrap_ci(records, report.lambda, options.resamples,
                                                           options.seed, options.level, options.workers);
  }

  const bool tail_ok = report.tail_mass <= options.epsilon * (1.0 + kTailSlack);
  const bool above = report.ci_low > certification_threshold(report);
  report.verdict = tail_ok && above ? Verdict::Nonclassical : Verdict::Inconclusive;
  return report;
}

nlohmann::json to_json(const Report& report) {
  return nlohmann::json{
      {"lambda", report.lambda},
      {"tail_mass", report.tail_mass},
      {"sample_radius", report.sample_radius},
      {"weighted_fidelity", report.weighted_fidelity},
      {"ci_low", report.ci_low},
      {"ci_high", report.ci_high},
      {"classical_bound", report.classical_bound},
      {"verdict", to_string(report.verdict)},
      {"n_records", report.n_records},
      {"seed", report.seed},
  };
}

Report report_from_json(const nlohmann::json& json) {
  try {
    Report report;
    report.lambda = json.at("lambda").get<double>();
    report.tail_mass = json.at("tail_mass").get<double>();
    report.sample_radius = json.at("sample_radius").get<double>();
    report.weighted_fidelity = json.at("weighted_fidelity").get<double>();
    report.ci_low = json.at("ci_low").get<double>();
    report.ci_high = json.at("ci_high").get<double>();
    report.classical_bound = json.at("classical_bound").get<double>();
    const auto verdict = json.at("verdict").get<std::string>();
    if (verdict == "NONCLASSICAL") {
      report.verdict = Verdict::Nonclassical;
    } else if (verdict == "INCONCLUSIVE") {
      report.verdict = Verdict::Inconclusive;
    } else {
      throw InputError("unknown verdict '" + verdict + "'");
    }
    report.n_records = json.at("n_records").get<std::int64_t>();
    report.seed = json.at("seed").get<std::uint64_t>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string format_report(const Report& report, const VerdictOptions& options) {
  std::ostringstream out;
  out << std::setprecision(6) << std::fixed;
  const auto row = [&](const char* name, auto value) { out << "  " << std::left << std::setw(26) << name << value << '\n'; };
  out << "Gaussian-reweighting certification\n";
  row("records", report.n_records);
  row("sample radius", report.sample_radius);
  row("radius source", options.radius ? std::string("--radius") : std::string("max |beta| of data"));
  row("epsilon (requested tail)", options.epsilon);
  row("lambda", report.lambda);
  row("tail mass", report.tail_mass);
  row("weighted fidelity", report.weighted_fidelity);
  std::ostringstream ci;
  ci << std::setprecision(6) << std::fixed << '[' << report.ci_low << ", " << report.ci_high << ']';
  row("bootstrap CI", ci.str());
  row("confidence level", options.level);
  row("bootstrap resamples", options.resamples);
  row("seed", report.seed);
  row("classical bound", report.classical_bound);
  row("certification threshold", certification_threshold(report));
  row("verdict", to_string(report.verdict));
  out << "\nNONCLASSICAL requires the CI lower bound to exceed bound / (1 - tail mass);\n"
         "the uncertainty and tail guards are additions to the plain fidelity comparison.\n";
  return out.str();
}

}  // namespace cvbound
