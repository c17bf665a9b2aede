#include "covkit/problem.hpp"

#include <string>

#include "covkit/answer.hpp"
#include "covkit/errors.hpp"

namespace covkit {

namespace {

[[noreturn]] void reject(const std::string& problem_id, const std::string& why) {
  throw MalformedRecord("problem '" + problem_id + "': " + why);
}

}  // namespace

ProblemRecord validate_problem(ProblemRecord record) {
  if (record.problem_id.empty()) reject("<unnamed>", "problem_id is empty");
  if (normalize_text(record.gold).empty()) reject(record.problem_id, "gold answer is empty");
  if (record.samples && record.precomputed)
    reject(record.problem_id, "samples and precomputed counts are mutually exclusive");
  if (!record.samples && !record.precomputed)
    reject(record.problem_id, "record carries neither samples nor precomputed counts");
  if (record.samples && record.samples->empty())
    reject(record.problem_id, "sample list is empty");
  if (record.relation && record.relation->empty())
    reject(record.problem_id, "relation tag is empty");
  if (record.precomputed) {
    if (record.precomputed->total < 1)
      reject(record.problem_id, "N must be positive");
    if (record.precomputed->correct < 0)
      reject(record.problem_id, "C must be non-negative");
    if (record.precomputed->correct > record.precomputed->total)
      reject(record.problem_id, "C exceeds N");
  }
  return record;
}

}  // namespace covkit
