#include "covkit/oracle.hpp"

#include <string>
#include <vector>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

void check_range(std::int64_t total, std::int64_t correct, std::int64_t k) {
  if (total < 1 || total > kMaxOracleSamples)
    throw NTooLarge("exhaustive oracle requires 1 <= N <= " +
                    std::to_string(kMaxOracleSamples) + ", got N=" + std::to_string(total));
  if (correct < 0 || correct > total)
    throw MalformedRecord("oracle requires 0 <= C <= N");
  if (k < 1 || k > total)
    throw KExceedsN("oracle requires 1 <= k <= N, got k=" + std::to_string(k));
}

}  // namespace

double pass_at_k_exhaustive(std::int64_t total, std::int64_t correct, std::int64_t k) {
  check_range(total, correct, k);
  // Enumerate k-subsets of {0..N-1} in lexicographic order; the first
  // `correct` indices are the correct samples. Subsets are sorted, so a
  // subset contains a correct sample iff its smallest index is < correct.
  std::vector<std::int64_t> subset(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;

  std::int64_t subsets = 0;
  std::int64_t covered = 0;
  for (;;) {
    ++subsets;
    if (subset[0] < correct) ++covered;

    // advance to the next combination
    std::int64_t pos = k - 1;
    while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == total - k + pos) --pos;
    if (pos < 0) break;
    ++subset[static_cast<std::size_t>(pos)];
    for (std::int64_t i = pos + 1; i < k; ++i)
      subset[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i - 1)] + 1;
  }
  return static_cast<double>(covered) / static_cast<double>(subsets);
}

double mixture_exhaustive(std::int64_t total, std::int64_t correct,
                          std::int64_t model_samples, bool gold_in_top) {
  check_range(total, correct, model_samples);
  if (gold_in_top) return 1.0;
  return pass_at_k_exhaustive(total, correct, model_samples);
}

}  // namespace covkit
