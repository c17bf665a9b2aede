#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covkit/curve.hpp"
#include "covkit/frequency.hpp"
#include "covkit/problem.hpp"
#include "covkit/verify.hpp"

namespace covkit {

struct TrainAnswer {
  std::string answer;
  std::optional<std::string> relation;

  bool operator==(const TrainAnswer&) const = default;
};

// Canonicalizes, groups and counts training answers, ordered by
// (count desc, canonical text asc). Throws EmptyTrainingSet when nothing
// survives the optional relation filter.
FrequencyTable build_frequency_table(std::span<const TrainAnswer> train_answers,
                                     const std::optional<std::string>& relation_filter,
                                     const VerifierConfig& config);

// Always builds the pooled global table; with per_relation additionally
// builds one table per relation tag present in the data.
FrequencyTableSet build_frequency_tables(std::span<const TrainAnswer> train_answers,
                                         bool per_relation,
                                         const VerifierConfig& config);

// First min(k, table size) answers in rank order.
std::vector<CanonicalAnswer> top_k(const FrequencyTable& table, std::int64_t k);

// 1-based rank of the first table entry matching the problem's gold
// answer under the verifier's equivalence predicate; nullopt when none
// matches.
std::optional<std::size_t> guess_rank(const ProblemRecord& problem,
                                      const FrequencyTable& table,
                                      const VerifierConfig& config);

std::vector<std::optional<std::size_t>> guess_ranks(std::span<const ProblemRecord> problems,
                                                    const FrequencyTableSet& tables,
                                                    const VerifierConfig& config);

// Fraction of problems with rank <= k at each grid point.
CoverageCurve coverage_from_ranks(std::span<const std::optional<std::size_t>> ranks,
                                  const KGrid& grid, Strategy strategy);

CoverageCurve traincounts_coverage(std::span<const ProblemRecord> problems,
                                   const FrequencyTableSet& tables,
                                   const KGrid& grid, const VerifierConfig& config);
CoverageCurve traincounts_coverage(std::span<const ProblemRecord> problems,
                                   const FrequencyTable& table,
                                   const KGrid& grid, const VerifierConfig& config);

// Coverage of guessing 1..k; requires the MathEquiv protocol.
CoverageCurve positive_ints_coverage(std::span<const ProblemRecord> problems,
                                     const KGrid& grid, const VerifierConfig& config);

}  // namespace covkit
