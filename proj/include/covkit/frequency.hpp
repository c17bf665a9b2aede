#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covkit/answer.hpp"

namespace covkit {

struct FrequencyEntry {
  CanonicalAnswer answer;
  std::int64_t count = 0;
};

// Training-set answers ranked by count (descending); equal counts are
// ordered by canonical text rendering (ascending). Answers are unique.
struct FrequencyTable {
  std::vector<FrequencyEntry> entries;
  std::optional<std::string> relation;

  std::size_t size() const { return entries.size(); }
};

// A global table plus optional per-relation tables. Relation-tagged
// problems consult only their relation's table when per-relation tables
// exist; untagged problems fall back to the global table.
struct FrequencyTableSet {
  std::optional<FrequencyTable> global;
  std::map<std::string, FrequencyTable> by_relation;

  static FrequencyTableSet global_only(FrequencyTable table);

  // Throws MissingRelationTable when no table covers the tag.
  const FrequencyTable& table_for(const std::optional<std::string>& relation) const;
};

}  // namespace covkit
