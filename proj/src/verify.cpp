#include "covkit/verify.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <unordered_map>
#include <vector>

#include "covkit/errors.hpp"
#include "internal/parallel.hpp"

namespace covkit {

namespace {

// Radicands above this would make the square-free reduction crawl.
constexpr std::uint64_t kMaxRadicand = 1'000'000'000'000ULL;

const std::regex kIntegerRe(R"(^[+-]?\d+$)");
const std::regex kDecimalRe(R"(^[+-]?(\d+\.\d*|\.\d+)$)");
const std::regex kSlashFractionRe(R"(^([+-]?\d+)/([+-]?\d+)$)");
const std::regex kLatexFractionRe(R"(^([+-]?)\\frac\{([+-]?\d+)\}\{([+-]?\d+)\}$)");

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(c));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string remove_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s)
    if (!std::isspace(c)) out.push_back(static_cast<char>(c));
  return out;
}

mpz_class mpz_from_digits(std::string_view digits) {
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  return mpz_class(std::string(digits), 10);
}

// Removes "$", "\left", "\right", unwraps "\text{...}", then strips
// trailing periods and outer whitespace.
std::string strip_math_markup(std::string_view raw) {
  std::string s;
  s.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    const std::string_view rest = raw.substr(i);
    if (rest.front() == '$') {
      ++i;
      continue;
    }
    if (rest.starts_with("\\left")) {
      i += 5;
      continue;
    }
    if (rest.starts_with("\\right")) {
      i += 6;
      continue;
    }
    if (rest.starts_with("\\text{")) {
      std::size_t j = i + 6;
      int depth = 1;
      std::string inner;
      while (j < raw.size()) {
        const char c = raw[j];
        if (c == '{') ++depth;
        if (c == '}') {
          --depth;
          if (depth == 0) break;
        }
        inner.push_back(c);
        ++j;
      }
      if (depth == 0) {
        s += inner;
        i = j + 1;
        continue;
      }
    }
    s.push_back(raw[i]);
    ++i;
  }
  std::string_view v = trim(s);
  while (!v.empty() && v.back() == '.') v.remove_suffix(1);
  return std::string(trim(v));
}

std::optional<mpq_class> parse_rational(const std::string& s) {
  std::smatch m;
  if (std::regex_match(s, kIntegerRe)) {
    return mpq_class(mpz_from_digits(s));
  }
  if (std::regex_match(s, m, kDecimalRe)) {
    const bool negative = s.front() == '-';
    std::string_view body = s;
    if (body.front() == '+' || body.front() == '-') body.remove_prefix(1);
    const std::size_t dot = body.find('.');
    const std::string_view int_part = body.substr(0, dot);
    const std::string_view frac_part = body.substr(dot + 1);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    mpz_class numerator = (int_part.empty() ? mpz_class(0) : mpz_from_digits(int_part)) * scale +
                          (frac_part.empty() ? mpz_class(0) : mpz_from_digits(frac_part));
    if (negative) numerator = -numerator;
    mpq_class q(numerator, scale);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, kSlashFractionRe)) {
    const mpz_class den = mpz_from_digits(m[2].str());
    if (den == 0) return std::nullopt;
    mpq_class q(mpz_from_digits(m[1].str()), den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, kLatexFractionRe)) {
    const mpz_class den = mpz_from_digits(m[3].str());
    if (den == 0) return std::nullopt;
    mpq_class q(mpz_from_digits(m[2].str()), den);
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  return std::nullopt;
}

std::optional<CanonicalAnswer> parse_radical(const std::string& s) {
  std::size_t pos;
  std::size_t head;
  char close;
  if ((pos = s.find("\\sqrt{")) != std::string::npos) {
    head = 6;
    close = '}';
  } else if ((pos = s.find("sqrt(")) != std::string::npos) {
    head = 5;
    close = ')';
  } else {
    return std::nullopt;
  }
  const std::size_t digits_begin = pos + head;
  const std::size_t digits_end = s.find(close, digits_begin);
  if (digits_end == std::string::npos || digits_end + 1 != s.size()) return std::nullopt;
  const std::string digits = s.substr(digits_begin, digits_end - digits_begin);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    return std::nullopt;
  if (digits.size() > 13) return std::nullopt;
  const std::uint64_t radicand = std::stoull(digits);
  if (radicand > kMaxRadicand) return std::nullopt;

  std::string prefix = s.substr(0, pos);
  if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
  mpq_class coefficient;
  if (prefix.empty() || prefix == "+") {
    coefficient = 1;
  } else if (prefix == "-") {
    coefficient = -1;
  } else {
    const auto q = parse_rational(prefix);
    if (!q) return std::nullopt;
    coefficient = *q;
  }
  return CanonicalAnswer::radical(std::move(coefficient), radicand);
}

std::optional<CanonicalAnswer> parse_numeric(const std::string& compact) {
  if (compact.empty()) return std::nullopt;
  if (auto radical = parse_radical(compact)) return radical;
  if (auto q = parse_rational(compact)) return CanonicalAnswer::rational(std::move(*q));
  return std::nullopt;
}

bool purely_alphabetic(const std::string& token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](unsigned char c) {
    return std::isalpha(c);
  });
}

std::vector<std::string> f1_tokens(std::string_view s) {
  std::string cleaned;
  cleaned.reserve(s.size());
  for (unsigned char c : s) {
    if (std::ispunct(c)) continue;
    cleaned.push_back(static_cast<char>(std::tolower(c)));
  }
  std::vector<std::string> tokens = split_whitespace(cleaned);
  std::erase_if(tokens, [](const std::string& t) { return t == "a" || t == "an" || t == "the"; });
  return tokens;
}

}  // namespace

namespace {

CanonicalAnswer canonicalize_once(const std::string& raw, bool strip_units) {
  const std::string stripped = strip_math_markup(raw);

  if (strip_units) {
    const std::vector<std::string> tokens = split_whitespace(stripped);
    if (tokens.size() >= 2 && purely_alphabetic(tokens.back())) {
      std::string head;
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) head += tokens[i];
      if (auto parsed = parse_numeric(head)) return *parsed;
    }
  }

  if (auto parsed = parse_numeric(remove_whitespace(stripped))) return *parsed;

  const std::string fallback = normalize_text(stripped);
  return CanonicalAnswer::text(fallback.empty() ? normalize_text(raw) : fallback);
}

}  // namespace

CanonicalAnswer canonicalize_math(std::string_view raw, bool strip_units) {
  if (trim(raw).empty()) throw EmptyAnswer("answer string is empty");
  // The text fallback lowercases its input, which can expose wrappers or
  // grammar tokens that were spelled in upper case. Iterate to a fixed
  // point so canonical forms re-parse to themselves. Each pass shortens
  // the string or only lowercases it, so this terminates.
  std::string current(raw);
  for (;;) {
    const CanonicalAnswer result = canonicalize_once(current, strip_units);
    if (result.kind() != AnswerKind::Text || result.text() == current) return result;
    current = result.text();
  }
}

bool math_equivalent(const CanonicalAnswer& a, const CanonicalAnswer& b) {
  return a == b;
}

double token_f1(std::string_view pred, std::string_view gold) {
  const std::vector<std::string> pred_tokens = f1_tokens(pred);
  const std::vector<std::string> gold_tokens = f1_tokens(gold);
  if (pred_tokens.empty() && gold_tokens.empty()) return 1.0;
  if (pred_tokens.empty() || gold_tokens.empty()) return 0.0;

  std::unordered_map<std::string, std::int64_t> gold_counts;
  for (const auto& t : gold_tokens) ++gold_counts[t];
  std::int64_t common = 0;
  for (const auto& t : pred_tokens) {
    const auto it = gold_counts.find(t);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  // Algebraically 2pr/(p+r); this form divides exactly once.
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(pred_tokens.size() + gold_tokens.size());
}

bool f1_match(std::string_view pred, std::string_view gold, double threshold) {
  return token_f1(pred, gold) > threshold;
}

SampleOutcomes verify_samples(const ProblemRecord& problem, const VerifierConfig& config) {
  if (!problem.samples)
    throw NoSamples("problem '" + problem.problem_id + "' carries no raw samples");
  const std::vector<std::string>& samples = *problem.samples;
  SampleOutcomes outcomes{static_cast<std::int64_t>(samples.size()), 0};

  if (config.protocol == Protocol::MathEquiv) {
    const CanonicalAnswer gold = canonicalize_math(problem.gold, config.strip_units);
    for (const std::string& sample : samples) {
      if (trim(sample).empty()) continue;  // blank sample: incorrect
      if (math_equivalent(canonicalize_math(sample, config.strip_units), gold))
        ++outcomes.correct;
    }
  } else {
    for (const std::string& sample : samples)
      if (f1_match(sample, problem.gold, config.f1_threshold)) ++outcomes.correct;
  }
  return outcomes;
}

std::vector<SampleOutcomes> verify_all(std::span<const ProblemRecord> problems,
                                       const VerifierConfig& config) {
  std::vector<SampleOutcomes> outcomes(problems.size());
  internal::parallel_for(problems.size(), [&](std::size_t i) {
    outcomes[i] = problems[i].precomputed ? *problems[i].precomputed
                                          : verify_samples(problems[i], config);
  });
  return outcomes;
}

CanonicalAnswer canonicalize_answer(std::string_view raw, const VerifierConfig& config) {
  if (config.protocol == Protocol::MathEquiv) return canonicalize_math(raw, config.strip_units);
  if (trim(raw).empty()) throw EmptyAnswer("answer string is empty");
  return CanonicalAnswer::text(raw);
}

bool answer_matches(std::string_view gold_raw, const CanonicalAnswer& candidate,
                    const VerifierConfig& config) {
  if (config.protocol == Protocol::MathEquiv)
    return math_equivalent(canonicalize_math(gold_raw, config.strip_units), candidate);
  return f1_match(candidate.render(), gold_raw, config.f1_threshold);
}

}  // namespace covkit
