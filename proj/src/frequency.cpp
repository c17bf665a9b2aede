#include "covkit/frequency.hpp"

#include <utility>

#include "covkit/errors.hpp"

namespace covkit {

FrequencyTableSet FrequencyTableSet::global_only(FrequencyTable table) {
  FrequencyTableSet set;
  set.global = std::move(table);
  return set;
}

const FrequencyTable& FrequencyTableSet::table_for(
    const std::optional<std::string>& relation) const {
  if (relation && !by_relation.empty()) {
    const auto it = by_relation.find(*relation);
    if (it == by_relation.end())
      throw MissingRelationTable("no frequency table for relation '" + *relation + "'");
    return it->second;
  }
  if (!global)
    throw MissingRelationTable(relation
                                   ? "no table for relation '" + *relation + "' and no global table"
                                   : "no global frequency table");
  return *global;
}

}  // namespace covkit
