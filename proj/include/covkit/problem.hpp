#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covkit {

// Per-problem verification result: N samples drawn, C of them correct.
struct SampleOutcomes {
  std::int64_t total = 0;
  std::int64_t correct = 0;

  bool operator==(const SampleOutcomes&) const = default;
};

// One evaluation problem. Carries either raw samples awaiting
// verification or a precomputed (total, correct) pair, never both.
struct ProblemRecord {
  std::string problem_id;
  std::string gold;
  std::optional<std::string> relation;
  std::optional<std::vector<std::string>> samples;
  std::optional<SampleOutcomes> precomputed;

  bool operator==(const ProblemRecord&) const = default;
};

// Returns the record iff all invariants hold, else throws MalformedRecord
// naming the violated invariant and the problem id.
ProblemRecord validate_problem(ProblemRecord record);

}  // namespace covkit
