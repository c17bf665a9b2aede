#pragma once

#include <cstdint>

namespace covkit {

// Largest N the exhaustive oracles accept.
inline constexpr std::int64_t kMaxOracleSamples = 12;

// Brute-force pass@k: enumerates every k-subset of an N-sample vector
// holding C correct entries and returns the fraction containing at least
// one correct sample. Independent validation target for the product-form
// estimator; throws NTooLarge above kMaxOracleSamples.
double pass_at_k_exhaustive(std::int64_t total, std::int64_t correct, std::int64_t k);

// Brute-force mixture coverage for a single problem: 1 when the gold
// answer is among the enumerated guesses, else the exhaustive pass@M.
double mixture_exhaustive(std::int64_t total, std::int64_t correct,
                          std::int64_t model_samples, bool gold_in_top);

}  // namespace covkit
