#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "covkit/curve.hpp"
#include "covkit/problem.hpp"

namespace covkit {

// Probability that at least one of k samples drawn without replacement
// from N samples with C correct is correct: 1 - C(N-C,k)/C(N,k).
// Evaluated in product form so no intermediate overflows; the result is
// clamped to [0, 1]. Throws KExceedsN unless 1 <= k <= N.
double pass_at_k(const SampleOutcomes& outcomes, std::int64_t k);

// Mean pass@k over problems at each grid point. Requires
// grid max <= min N.
CoverageCurve model_sampling_curve(std::span<const SampleOutcomes> problems,
                                   const KGrid& grid);

// Monotone predicate: is the gold answer among the top-k enumerated
// guesses? k = 0 must yield false.
using GuessPredicate = std::function<bool(std::int64_t)>;

struct MixtureProblem {
  std::string problem_id;
  SampleOutcomes outcomes;
  GuessPredicate gold_in_top;

  static MixtureProblem from_rank(std::string problem_id, SampleOutcomes outcomes,
                                  std::optional<std::size_t> rank);
};

enum class MixtureMode { Exact, MonteCarlo };

struct MixtureConfig {
  std::int64_t model_samples = 10;  // M
  MixtureMode mode = MixtureMode::Exact;
  std::int64_t draws = 100;  // T, MonteCarlo only
  std::uint64_t seed = 0;
};

// Coverage of M model samples plus the top k-M guesses. Closed-form
// expectation of the randomized procedure: a problem counts fully when
// its gold is among the guesses, else with probability pass@M.
CoverageCurve mixture_exact(std::span<const MixtureProblem> problems,
                            std::int64_t model_samples, const KGrid& grid);

// Seeded simulation of the same procedure averaged over config.draws
// draws of M samples without replacement. Per-problem RNG streams derive
// from (seed, problem_id) only, so results are independent of problem
// order and scheduling.
CoverageCurve mixture_montecarlo(std::span<const MixtureProblem> problems,
                                 const MixtureConfig& config, const KGrid& grid);

// Pointwise (model - baseline) / (1 - baseline); negative when the
// baseline beats the model. Curves must share the grid and the baseline
// must stay below 1.
CoverageCurve normalized_coverage(const CoverageCurve& model, const CoverageCurve& baseline);

// Pointwise mixture / model: the fraction of model-sampling coverage the
// mixture strategy retains.
CoverageCurve recovered_gain_ratio(const CoverageCurve& mixture, const CoverageCurve& model);

// ~25 geometrically spaced points over [1, n], always including 1, 10,
// 100 and n where they fit.
KGrid default_k_grid(std::int64_t n);

}  // namespace covkit
