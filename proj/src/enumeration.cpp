#include "covkit/enumeration.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "covkit/errors.hpp"
#include "internal/parallel.hpp"

namespace covkit {

namespace {

std::vector<std::optional<std::size_t>> positive_integer_ranks(
    std::span<const ProblemRecord> problems, const VerifierConfig& config) {
  std::vector<std::optional<std::size_t>> ranks(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const CanonicalAnswer gold = canonicalize_math(problems[i].gold, config.strip_units);
    if (!gold.is_integer()) continue;
    const mpz_class& n = gold.value().get_num();
    if (n <= 0 || !n.fits_ulong_p()) continue;
    ranks[i] = static_cast<std::size_t>(n.get_ui());
  }
  return ranks;
}

}  // namespace

FrequencyTable build_frequency_table(std::span<const TrainAnswer> train_answers,
                                     const std::optional<std::string>& relation_filter,
                                     const VerifierConfig& config) {
  std::unordered_map<CanonicalAnswer, std::int64_t, AnswerHash> counts;
  for (const TrainAnswer& entry : train_answers) {
    if (relation_filter && entry.relation != relation_filter) continue;
    ++counts[canonicalize_answer(entry.answer, config)];
  }
  if (counts.empty())
    throw EmptyTrainingSet(relation_filter
                               ? "no training answers for relation '" + *relation_filter + "'"
                               : "training answer list is empty");

  struct Ranked {
    FrequencyEntry entry;
    std::string rendering;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(counts.size());
  for (auto& [answer, count] : counts)
    ranked.push_back({{answer, count}, answer.render()});
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.entry.count != b.entry.count) return a.entry.count > b.entry.count;
    return a.rendering < b.rendering;
  });

  FrequencyTable table;
  table.relation = relation_filter;
  table.entries.reserve(ranked.size());
  for (auto& r : ranked) table.entries.push_back(std::move(r.entry));
  return table;
}

FrequencyTableSet build_frequency_tables(std::span<const TrainAnswer> train_answers,
                                         bool per_relation, const VerifierConfig& config) {
  FrequencyTableSet set;
  set.global = build_frequency_table(train_answers, std::nullopt, config);
  if (per_relation) {
    std::set<std::string> relations;
    for (const TrainAnswer& entry : train_answers)
      if (entry.relation) relations.insert(*entry.relation);
    for (const std::string& relation : relations)
      set.by_relation.emplace(relation,
                              build_frequency_table(train_answers, relation, config));
  }
  return set;
}

std::vector<CanonicalAnswer> top_k(const FrequencyTable& table, std::int64_t k) {
  if (k < 1) throw Error("top_k requires k >= 1");
  const std::size_t take = std::min<std::size_t>(static_cast<std::uint64_t>(k), table.size());
  std::vector<CanonicalAnswer> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(table.entries[i].answer);
  return out;
}

std::optional<std::size_t> guess_rank(const ProblemRecord& problem,
                                      const FrequencyTable& table,
                                      const VerifierConfig& config) {
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    if (answer_matches(problem.gold, table.entries[i].answer, config)) return i + 1;
  return std::nullopt;
}

std::vector<std::optional<std::size_t>> guess_ranks(std::span<const ProblemRecord> problems,
                                                    const FrequencyTableSet& tables,
                                                    const VerifierConfig& config) {
  // Resolve every problem's table up front so a missing relation fails
  // before any work is spent.
  std::vector<const FrequencyTable*> resolved(problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i)
    resolved[i] = &tables.table_for(problems[i].relation);

  // Under MathEquiv the predicate is canonical equality, so a rank lookup
  // per table replaces the linear scan.
  std::unordered_map<const FrequencyTable*, std::unordered_map<std::string, std::size_t>> index;
  if (config.protocol == Protocol::MathEquiv) {
    for (const FrequencyTable* table : resolved) {
      if (index.contains(table)) continue;
      auto& by_rendering = index[table];
      by_rendering.reserve(table->size());
      for (std::size_t i = 0; i < table->entries.size(); ++i)
        by_rendering.emplace(table->entries[i].answer.render(), i + 1);
    }
  }

  std::vector<std::optional<std::size_t>> ranks(problems.size());
  internal::parallel_for(problems.size(), [&](std::size_t i) {
    if (config.protocol == Protocol::MathEquiv) {
      const CanonicalAnswer gold = canonicalize_math(problems[i].gold, config.strip_units);
      const auto& by_rendering = index.at(resolved[i]);
      const auto it = by_rendering.find(gold.render());
      if (it != by_rendering.end()) ranks[i] = it->second;
    } else {
      ranks[i] = guess_rank(problems[i], *resolved[i], config);
    }
  });
  return ranks;
}

CoverageCurve coverage_from_ranks(std::span<const std::optional<std::size_t>> ranks,
                                  const KGrid& grid, Strategy strategy) {
  if (ranks.empty()) throw EmptyInput("coverage over an empty problem list is undefined");
  CoverageCurve curve;
  curve.strategy = strategy;
  curve.points.reserve(grid.size());
  for (const std::int64_t k : grid.values()) {
    std::size_t covered = 0;
    for (const auto& rank : ranks)
      if (rank && *rank <= static_cast<std::uint64_t>(k)) ++covered;
    curve.points.push_back({k, static_cast<double>(covered) / static_cast<double>(ranks.size())});
  }
  return curve;
}

CoverageCurve traincounts_coverage(std::span<const ProblemRecord> problems,
                                   const FrequencyTableSet& tables, const KGrid& grid,
                                   const VerifierConfig& config) {
  if (problems.empty()) throw EmptyInput("coverage over an empty problem list is undefined");
  const auto ranks = guess_ranks(problems, tables, config);
  return coverage_from_ranks(ranks, grid, Strategy::TrainCounts);
}

CoverageCurve traincounts_coverage(std::span<const ProblemRecord> problems,
                                   const FrequencyTable& table, const KGrid& grid,
                                   const VerifierConfig& config) {
  return traincounts_coverage(problems, FrequencyTableSet::global_only(table), grid, config);
}

CoverageCurve positive_ints_coverage(std::span<const ProblemRecord> problems,
                                     const KGrid& grid, const VerifierConfig& config) {
  if (config.protocol != Protocol::MathEquiv)
    throw Error("PositiveIntegers baseline requires the math protocol");
  if (problems.empty()) throw EmptyInput("coverage over an empty problem list is undefined");
  const auto ranks = positive_integer_ranks(problems, config);
  return coverage_from_ranks(ranks, grid, Strategy::PositiveIntegers);
}

}  // namespace covkit
