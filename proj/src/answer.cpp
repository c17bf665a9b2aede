#include "covkit/answer.hpp"

#include <cctype>
#include <functional>
#include <utility>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

// n = outer^2 * squarefree
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
  std::uint64_t outer = 1;
  std::uint64_t rem = n;
  for (std::uint64_t f = 2; f * f <= rem; ++f) {
    const std::uint64_t sq = f * f;
    while (rem % sq == 0) {
      rem /= sq;
      outer *= f;
    }
  }
  return {outer, rem};
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

CanonicalAnswer CanonicalAnswer::rational(mpq_class value) {
  value.canonicalize();
  CanonicalAnswer a;
  a.kind_ = AnswerKind::Rational;
  a.value_ = std::move(value);
  return a;
}

CanonicalAnswer CanonicalAnswer::radical(mpq_class coefficient, std::uint64_t radicand) {
  coefficient.canonicalize();
  if (radicand == 0 || coefficient == 0) return rational(0);
  const auto [outer, squarefree] = split_square(radicand);
  coefficient *= static_cast<unsigned long>(outer);
  if (squarefree == 1) return rational(std::move(coefficient));
  CanonicalAnswer a;
  a.kind_ = AnswerKind::Radical;
  a.value_ = std::move(coefficient);
  a.radicand_ = squarefree;
  return a;
}

CanonicalAnswer CanonicalAnswer::text(std::string_view raw) {
  std::string normalized = normalize_text(raw);
  if (normalized.empty()) throw EmptyAnswer("text answer is empty after normalization");
  CanonicalAnswer a;
  a.kind_ = AnswerKind::Text;
  a.text_ = std::move(normalized);
  return a;
}

bool CanonicalAnswer::is_integer() const {
  return kind_ == AnswerKind::Rational && value_.get_den() == 1;
}

std::string CanonicalAnswer::render() const {
  switch (kind_) {
    case AnswerKind::Rational:
      return value_.get_str();
    case AnswerKind::Radical: {
      const std::string root = "sqrt(" + std::to_string(radicand_) + ")";
      if (value_ == 1) return root;
      if (value_ == -1) return "-" + root;
      return value_.get_str() + "*" + root;
    }
    case AnswerKind::Text:
      return text_;
  }
  return text_;
}

bool CanonicalAnswer::operator==(const CanonicalAnswer& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case AnswerKind::Rational:
      return value_ == other.value_;
    case AnswerKind::Radical:
      return radicand_ == other.radicand_ && value_ == other.value_;
    case AnswerKind::Text:
      return text_ == other.text_;
  }
  return false;
}

std::size_t AnswerHash::operator()(const CanonicalAnswer& answer) const {
  const std::size_t h = std::hash<std::string>{}(answer.render());
  return h ^ (static_cast<std::size_t>(answer.kind()) << 1);
}

}  // namespace covkit
