#include "covkit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include "covkit/errors.hpp"
#include "internal/parallel.hpp"

namespace covkit {

namespace {

void check_outcomes(const SampleOutcomes& o) {
  if (o.total < 1 || o.correct < 0 || o.correct > o.total)
    throw MalformedRecord("sample outcomes require 0 <= C <= N with N >= 1");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Stream keyed by (seed, problem_id) so parallel scheduling and problem
// order cannot change Monte-Carlo results.
std::mt19937_64 problem_stream(std::uint64_t seed, std::string_view problem_id) {
  std::uint64_t state = seed ^ fnv1a(problem_id);
  const std::uint64_t a = splitmix64(state);
  const std::uint64_t b = splitmix64(state);
  return std::mt19937_64(a ^ (b << 1) ^ (b >> 63));
}

// Unbiased uniform draw from [0, n); rejection keeps it independent of
// the standard library's distribution implementation.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

// One draw of `m` distinct sample indices from [0, n); returns whether
// any drawn index falls among the first `c` (the correct samples).
bool draw_hits_correct(std::mt19937_64& rng, std::int64_t n, std::int64_t m, std::int64_t c,
                       std::vector<std::int64_t>& scratch) {
  if (m >= n) return c > 0;
  bool hit = false;
  if (m <= 64) {
    // Floyd's algorithm; the scratch scan is cheap at this size.
    scratch.clear();
    for (std::int64_t j = n - m; j < n; ++j) {
      const auto t = static_cast<std::int64_t>(
          bounded_uniform(rng, static_cast<std::uint64_t>(j) + 1));
      const bool seen = std::find(scratch.begin(), scratch.end(), t) != scratch.end();
      const std::int64_t pick = seen ? j : t;
      scratch.push_back(pick);
      if (pick < c) hit = true;
    }
    return hit;
  }
  // Partial Fisher-Yates for large m.
  scratch.resize(static_cast<std::size_t>(n));
  std::iota(scratch.begin(), scratch.end(), std::int64_t{0});
  for (std::int64_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::int64_t>(
                           bounded_uniform(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(scratch[static_cast<std::size_t>(i)], scratch[static_cast<std::size_t>(j)]);
    if (scratch[static_cast<std::size_t>(i)] < c) hit = true;
  }
  return hit;
}

void check_mixture_inputs(std::span<const MixtureProblem> problems, std::int64_t model_samples,
                          const KGrid& grid) {
  if (problems.empty()) throw EmptyInput("mixture over an empty problem list is undefined");
  if (model_samples < 1) throw Error("mixture requires M >= 1");
  for (const std::int64_t k : grid.values())
    if (k < model_samples)
      throw MLargerThanK("mixture M=" + std::to_string(model_samples) +
                         " exceeds grid point k=" + std::to_string(k));
  for (const MixtureProblem& p : problems) {
    check_outcomes(p.outcomes);
    if (model_samples > p.outcomes.total)
      throw KExceedsN("mixture M=" + std::to_string(model_samples) + " exceeds N=" +
                      std::to_string(p.outcomes.total) + " for problem '" + p.problem_id + "'");
  }
}

CoverageCurve mean_over_problems(std::span<const MixtureProblem> problems,
                                 std::span<const double> sample_term,
                                 std::int64_t model_samples, const KGrid& grid) {
  CoverageCurve curve;
  curve.strategy = Strategy::Mixture;
  curve.mixture_m = model_samples;
  curve.points.reserve(grid.size());
  for (const std::int64_t k : grid.values()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < problems.size(); ++i)
      sum += problems[i].gold_in_top(k - model_samples) ? 1.0 : sample_term[i];
    curve.points.push_back({k, sum / static_cast<double>(problems.size())});
  }
  return curve;
}

}  // namespace

double pass_at_k(const SampleOutcomes& outcomes, std::int64_t k) {
  check_outcomes(outcomes);
  if (k < 1 || k > outcomes.total)
    throw KExceedsN("pass@k requires 1 <= k <= N, got k=" + std::to_string(k) +
                    ", N=" + std::to_string(outcomes.total));
  const std::int64_t incorrect = outcomes.total - outcomes.correct;
  if (k > incorrect) return 1.0;  // every k-subset contains a correct sample
  double ratio = 1.0;
  for (std::int64_t i = 0; i < k; ++i) {
    ratio *= static_cast<double>(incorrect - i) / static_cast<double>(outcomes.total - i);
    if (ratio == 0.0) break;
  }
  return std::clamp(1.0 - ratio, 0.0, 1.0);
}

CoverageCurve model_sampling_curve(std::span<const SampleOutcomes> problems, const KGrid& grid) {
  if (problems.empty()) throw EmptyInput("coverage over an empty problem list is undefined");
  for (const SampleOutcomes& o : problems) {
    check_outcomes(o);
    if (grid.max() > o.total)
      throw KExceedsN("grid max k=" + std::to_string(grid.max()) + " exceeds N=" +
                      std::to_string(o.total));
  }
  CoverageCurve curve;
  curve.strategy = Strategy::ModelSampling;
  curve.points.reserve(grid.size());
  for (const std::int64_t k : grid.values()) {
    double sum = 0.0;
    for (const SampleOutcomes& o : problems) sum += pass_at_k(o, k);
    curve.points.push_back({k, sum / static_cast<double>(problems.size())});
  }
  return curve;
}

MixtureProblem MixtureProblem::from_rank(std::string problem_id, SampleOutcomes outcomes,
                                         std::optional<std::size_t> rank) {
  GuessPredicate in_top;
  if (rank) {
    const std::size_t r = *rank;
    in_top = [r](std::int64_t k) { return k >= 1 && static_cast<std::uint64_t>(k) >= r; };
  } else {
    in_top = [](std::int64_t) { return false; };
  }
  return MixtureProblem{std::move(problem_id), outcomes, std::move(in_top)};
}

CoverageCurve mixture_exact(std::span<const MixtureProblem> problems,
                            std::int64_t model_samples, const KGrid& grid) {
  check_mixture_inputs(problems, model_samples, grid);
  std::vector<double> pass_at_m(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i)
    pass_at_m[i] = pass_at_k(problems[i].outcomes, model_samples);
  return mean_over_problems(problems, pass_at_m, model_samples, grid);
}

CoverageCurve mixture_montecarlo(std::span<const MixtureProblem> problems,
                                 const MixtureConfig& config, const KGrid& grid) {
  if (config.mode != MixtureMode::MonteCarlo)
    throw ConfigError("mixture_montecarlo requires mode = MonteCarlo");
  if (config.draws < 1) throw ConfigError("mixture requires T >= 1 draws");
  check_mixture_inputs(problems, config.model_samples, grid);

  // Fraction of the T draws whose M samples include a correct one.
  std::vector<double> hit_rate(problems.size());
  internal::parallel_for(problems.size(), [&](std::size_t i) {
    const MixtureProblem& p = problems[i];
    std::mt19937_64 rng = problem_stream(config.seed, p.problem_id);
    std::vector<std::int64_t> scratch;
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < config.draws; ++t)
      if (draw_hits_correct(rng, p.outcomes.total, config.model_samples, p.outcomes.correct,
                            scratch))
        ++hits;
    hit_rate[i] = static_cast<double>(hits) / static_cast<double>(config.draws);
  });
  return mean_over_problems(problems, hit_rate, config.model_samples, grid);
}

namespace {

void check_same_grid(const CoverageCurve& a, const CoverageCurve& b) {
  if (a.points.size() != b.points.size())
    throw GridMismatch("curves span different k-grids");
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].k != b.points[i].k)
      throw GridMismatch("curves span different k-grids at index " + std::to_string(i));
}

}  // namespace

CoverageCurve normalized_coverage(const CoverageCurve& model, const CoverageCurve& baseline) {
  check_same_grid(model, baseline);
  CoverageCurve curve;
  curve.strategy = Strategy::Normalized;
  curve.points.reserve(model.points.size());
  for (std::size_t i = 0; i < model.points.size(); ++i) {
    const double b = baseline.points[i].value;
    if (b == 1.0)
      throw BaselineSaturated("baseline coverage is 1 at k=" +
                              std::to_string(baseline.points[i].k));
    curve.points.push_back({model.points[i].k, (model.points[i].value - b) / (1.0 - b)});
  }
  return curve;
}

CoverageCurve recovered_gain_ratio(const CoverageCurve& mixture, const CoverageCurve& model) {
  check_same_grid(mixture, model);
  CoverageCurve curve;
  curve.strategy = Strategy::RecoveredGain;
  curve.mixture_m = mixture.mixture_m;
  curve.points.reserve(mixture.points.size());
  for (std::size_t i = 0; i < mixture.points.size(); ++i) {
    const double m = model.points[i].value;
    if (m == 0.0)
      throw DivisionByZeroCoverage("model coverage is 0 at k=" +
                                   std::to_string(model.points[i].k));
    curve.points.push_back({mixture.points[i].k, mixture.points[i].value / m});
  }
  return curve;
}

KGrid default_k_grid(std::int64_t n) {
  if (n < 1) throw Error("k grid upper bound must be positive");
  std::set<std::int64_t> ks{1, n};
  constexpr int kPoints = 25;
  for (int i = 1; i + 1 < kPoints; ++i) {
    const double t = std::exp(std::log(static_cast<double>(n)) * i / (kPoints - 1));
    ks.insert(std::clamp<std::int64_t>(std::llround(t), 1, n));
  }
  for (const std::int64_t anchor : {std::int64_t{10}, std::int64_t{100}})
    if (anchor <= n) ks.insert(anchor);
  return KGrid(std::vector<std::int64_t>(ks.begin(), ks.end()));
}

}  // namespace covkit
