#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace covkit {

enum class AnswerKind { Rational, Radical, Text };

// Normalized, comparable form of a free-text answer: an exact rational,
// an exact rational multiple of a square root, or a normalized string.
//
// Invariants: rationals are in lowest terms with positive denominator
// (gmp keeps them canonical); radical radicands are square-free and > 1
// (square content is folded into the coefficient, radicand 1 collapses
// to a plain rational); text is non-empty, lowercase, with collapsed
// internal whitespace.
class CanonicalAnswer {
 public:
  static CanonicalAnswer rational(mpq_class value);
  static CanonicalAnswer radical(mpq_class coefficient, std::uint64_t radicand);
  static CanonicalAnswer text(std::string_view raw);

  AnswerKind kind() const { return kind_; }
  bool is_integer() const;

  const mpq_class& value() const { return value_; }        // Rational
  const mpq_class& coefficient() const { return value_; }  // Radical
  std::uint64_t radicand() const { return radicand_; }     // Radical
  const std::string& text() const { return text_; }        // Text

  // Canonical rendering: "n/d" or "n" for rationals, "c*sqrt(r)" with the
  // coefficient omitted when it is 1, the string itself for text. This
  // rendering defines the lexicographic tie-break order of frequency
  // tables and re-parses to an equal value.
  std::string render() const;

  bool operator==(const CanonicalAnswer& other) const;

 private:
  CanonicalAnswer() = default;

  AnswerKind kind_ = AnswerKind::Text;
  mpq_class value_;
  std::uint64_t radicand_ = 0;
  std::string text_;
};

struct AnswerHash {
  std::size_t operator()(const CanonicalAnswer& answer) const;
};

// Lowercase ASCII, collapse whitespace runs to single spaces, trim ends.
std::string normalize_text(std::string_view raw);

}  // namespace covkit
