#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "covkit/answer.hpp"
#include "covkit/problem.hpp"

namespace covkit {

enum class Protocol { MathEquiv, TokenF1 };

struct VerifierConfig {
  Protocol protocol = Protocol::MathEquiv;
  double f1_threshold = 0.5;
  bool strip_units = false;
};

// Parses a raw answer into canonical form. Accepted grammar: integers,
// decimals, fractions ("a/b", "\frac{a}{b}") and radicals ("\sqrt{n}",
// "c\sqrt{n}", "sqrt(n)", "c*sqrt(n)"). "$", "\left", "\right" and
// "\text{...}" wrappers are stripped, as are trailing periods. With
// strip_units, one trailing purely-alphabetic token is dropped when the
// remaining prefix parses numerically. Anything else falls back to
// normalized text. Throws EmptyAnswer when raw trims to nothing.
CanonicalAnswer canonicalize_math(std::string_view raw, bool strip_units = false);

// Exact equality of canonical values; never true across kinds.
bool math_equivalent(const CanonicalAnswer& a, const CanonicalAnswer& b);

// Token-level F1 over normalized token multisets (lowercase, punctuation
// stripped, articles "a"/"an"/"the" dropped, whitespace split). Returns 1
// when both sides normalize to nothing, 0 when exactly one does.
double token_f1(std::string_view pred, std::string_view gold);

// True iff token_f1 strictly exceeds the threshold.
bool f1_match(std::string_view pred, std::string_view gold, double threshold);

// Reduces a problem's raw samples to (N, C) under the configured
// protocol. Blank samples count as incorrect. Throws NoSamples for
// precomputed-only records.
SampleOutcomes verify_samples(const ProblemRecord& problem, const VerifierConfig& config);

// Batch form; precomputed records pass through untouched. Runs problems
// in parallel, result order matches input order.
std::vector<SampleOutcomes> verify_all(std::span<const ProblemRecord> problems,
                                       const VerifierConfig& config);

// Protocol-generic canonicalization: the math grammar for MathEquiv,
// normalized text for TokenF1.
CanonicalAnswer canonicalize_answer(std::string_view raw, const VerifierConfig& config);

// The verifier's equivalence predicate. Baselines reuse it for
// gold-vs-guess matching so guessed and sampled answers are judged
// identically.
bool answer_matches(std::string_view gold_raw, const CanonicalAnswer& candidate,
                    const VerifierConfig& config);

}  // namespace covkit
