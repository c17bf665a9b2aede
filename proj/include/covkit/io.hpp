#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covkit/curve.hpp"
#include "covkit/enumeration.hpp"
#include "covkit/estimators.hpp"
#include "covkit/frequency.hpp"
#include "covkit/problem.hpp"
#include "covkit/verify.hpp"

namespace covkit {

// JSONL, one object per line:
//   {"problem_id": str, "gold": str, "relation"?: str,
//    "samples"?: [str], "N"?: int, "C"?: int}
// Unknown fields and duplicate problem ids are rejected. Every record is
// validated.
std::vector<ProblemRecord> load_problems(const std::filesystem::path& path);
void save_problems(const std::filesystem::path& path,
                   std::span<const ProblemRecord> problems);

// JSONL {"answer": str, "relation"?: str}; empty answers are rejected.
std::vector<TrainAnswer> load_train_answers(const std::filesystem::path& path);

struct RunConfig {
  VerifierConfig verifier;
  std::vector<std::int64_t> mixture_m{10};
  MixtureMode mixture_mode = MixtureMode::Exact;
  std::int64_t mixture_draws = 100;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> k_grid;  // empty: derive from the data
  bool per_relation = false;
  std::optional<std::string> out_dir;
};

// Flat "key = value" file, '#' starts a comment line. Unknown keys and
// out-of-range values raise ConfigError naming the key.
RunConfig load_config(const std::filesystem::path& path);

// JSONL {"problem_id": str, "N": int, "C": int}, input order preserved.
void write_outcomes(const std::filesystem::path& path,
                    std::span<const ProblemRecord> problems,
                    std::span<const SampleOutcomes> outcomes);

// CSV with header "strategy,k,value" and a JSON mirror
// {strategy, points: [{k, value}]}; values carry 6 decimal digits.
void write_curve_csv(const std::filesystem::path& path, const CoverageCurve& curve);
void write_curve_json(const std::filesystem::path& path, const CoverageCurve& curve);

// Ordered JSON array of {"answer": canonical text, "count": int}.
void write_frequency_table_json(const std::filesystem::path& path,
                                const FrequencyTable& table);
FrequencyTable load_frequency_table_json(const std::filesystem::path& path,
                                         const VerifierConfig& config);

struct NamedCurve {
  std::string label;
  std::vector<CurvePoint> points;
};

// Reads back "strategy,k,value" CSV; one curve per distinct label in
// first-appearance order. A file without data rows is a ParseError.
std::vector<NamedCurve> load_curves_csv(const std::filesystem::path& path);

}  // namespace covkit
