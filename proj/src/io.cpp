#include "covkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "covkit/errors.hpp"

namespace covkit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& why) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + why);
}

ordered_json parse_json_line(const std::string& line, const std::filesystem::path& path,
                             std::size_t lineno) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path, lineno, e.what());
  }
  if (!j.is_object()) parse_fail(path, lineno, "expected a JSON object");
  return j;
}

void reject_unknown_keys(const ordered_json& j, std::initializer_list<std::string_view> allowed,
                         const std::filesystem::path& path, std::size_t lineno) {
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](std::string_view k) { return k == item.key(); });
    if (!known) parse_fail(path, lineno, "unknown field '" + item.key() + "'");
  }
}

std::string fmt_value(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", v);
  return buffer;
}

std::vector<std::int64_t> parse_int_list(const std::string& value, const std::string& key) {
  std::vector<std::int64_t> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim_copy(item);
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': '" + t + "' is not an integer");
    }
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + value + "'");
}

}  // namespace

std::vector<ProblemRecord> load_problems(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<ProblemRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_copy(line).empty()) continue;
    const ordered_json j = parse_json_line(line, path, lineno);
    reject_unknown_keys(j, {"problem_id", "gold", "relation", "samples", "N", "C"}, path, lineno);

    ProblemRecord record;
    try {
      record.problem_id = j.at("problem_id").get<std::string>();
      record.gold = j.at("gold").get<std::string>();
      if (j.contains("relation")) record.relation = j.at("relation").get<std::string>();
      if (j.contains("samples"))
        record.samples = j.at("samples").get<std::vector<std::string>>();
      if (j.contains("N") != j.contains("C"))
        parse_fail(path, lineno, "N and C must appear together");
      if (j.contains("N")) {
        if (!j.at("N").is_number_integer() || !j.at("C").is_number_integer())
          parse_fail(path, lineno, "N and C must be integers");
        record.precomputed =
            SampleOutcomes{j.at("N").get<std::int64_t>(), j.at("C").get<std::int64_t>()};
      }
    } catch (const nlohmann::json::exception& e) {
      parse_fail(path, lineno, e.what());
    }

    if (!seen_ids.insert(record.problem_id).second)
      throw MalformedRecord("duplicate problem_id '" + record.problem_id + "' at " +
                            path.string() + ":" + std::to_string(lineno));
    records.push_back(validate_problem(std::move(record)));
  }
  return records;
}

void save_problems(const std::filesystem::path& path, std::span<const ProblemRecord> problems) {
  std::ofstream out = open_output(path);
  for (const ProblemRecord& record : problems) {
    ordered_json j;
    j["problem_id"] = record.problem_id;
    j["gold"] = record.gold;
    if (record.relation) j["relation"] = *record.relation;
    if (record.samples) j["samples"] = *record.samples;
    if (record.precomputed) {
      j["N"] = record.precomputed->total;
      j["C"] = record.precomputed->correct;
    }
    out << j.dump() << "\n";
  }
}

std::vector<TrainAnswer> load_train_answers(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<TrainAnswer> answers;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_copy(line).empty()) continue;
    const ordered_json j = parse_json_line(line, path, lineno);
    reject_unknown_keys(j, {"answer", "relation"}, path, lineno);
    TrainAnswer entry;
    try {
      entry.answer = j.at("answer").get<std::string>();
      if (j.contains("relation")) entry.relation = j.at("relation").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      parse_fail(path, lineno, e.what());
    }
    if (trim_copy(entry.answer).empty())
      throw EmptyAnswer("empty training answer at " + path.string() + ":" +
                        std::to_string(lineno));
    answers.push_back(std::move(entry));
  }
  return answers;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  RunConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim_copy(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim_copy(stripped.substr(0, eq));
    const std::string value = trim_copy(stripped.substr(eq + 1));

    try {
      if (key == "protocol") {
        if (value == "math")
          config.verifier.protocol = Protocol::MathEquiv;
        else if (value == "f1")
          config.verifier.protocol = Protocol::TokenF1;
        else
          throw ConfigError("config key 'protocol': expected math or f1, got '" + value + "'");
      } else if (key == "f1_threshold") {
        config.verifier.f1_threshold = std::stod(value);
        if (config.verifier.f1_threshold < 0.0 || config.verifier.f1_threshold > 1.0)
          throw ConfigError("config key 'f1_threshold': " + value + " is outside [0, 1]");
      } else if (key == "strip_units") {
        config.verifier.strip_units = parse_bool(value, key);
      } else if (key == "mixture_m") {
        config.mixture_m = parse_int_list(value, key);
        for (const std::int64_t m : config.mixture_m)
          if (m < 1) throw ConfigError("config key 'mixture_m': M must be positive");
      } else if (key == "mixture_mode") {
        if (value == "exact")
          config.mixture_mode = MixtureMode::Exact;
        else if (value == "montecarlo")
          config.mixture_mode = MixtureMode::MonteCarlo;
        else
          throw ConfigError("config key 'mixture_mode': expected exact or montecarlo");
      } else if (key == "mixture_t") {
        config.mixture_draws = std::stoll(value);
        if (config.mixture_draws < 1)
          throw ConfigError("config key 'mixture_t': T must be positive");
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "k_grid") {
        if (value == "auto") {
          config.k_grid.clear();
        } else {
          config.k_grid = parse_int_list(value, key);
          KGrid probe(config.k_grid);  // validates ordering
        }
      } else if (key == "per_relation") {
        config.per_relation = parse_bool(value, key);
      } else if (key == "out_dir") {
        config.out_dir = value;
      } else {
        throw ConfigError("unknown config key '" + key + "' at " + path.string() + ":" +
                          std::to_string(lineno));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  return config;
}

void write_outcomes(const std::filesystem::path& path,
                    std::span<const ProblemRecord> problems,
                    std::span<const SampleOutcomes> outcomes) {
  if (problems.size() != outcomes.size())
    throw Error("problem and outcome lists differ in length");
  std::ofstream out = open_output(path);
  for (std::size_t i = 0; i < problems.size(); ++i) {
    ordered_json j;
    j["problem_id"] = problems[i].problem_id;
    j["N"] = outcomes[i].total;
    j["C"] = outcomes[i].correct;
    out << j.dump() << "\n";
  }
}

void write_curve_csv(const std::filesystem::path& path, const CoverageCurve& curve) {
  std::ofstream out = open_output(path);
  out << "strategy,k,value\n";
  const std::string label = curve.label();
  for (const CurvePoint& p : curve.points)
    out << label << "," << p.k << "," << fmt_value(p.value) << "\n";
}

void write_curve_json(const std::filesystem::path& path, const CoverageCurve& curve) {
  std::ofstream out = open_output(path);
  out << "{\"strategy\": \"" << curve.label() << "\", \"points\": [";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    if (i > 0) out << ", ";
    out << "{\"k\": " << curve.points[i].k << ", \"value\": " << fmt_value(curve.points[i].value)
        << "}";
  }
  out << "]}\n";
}

void write_frequency_table_json(const std::filesystem::path& path, const FrequencyTable& table) {
  std::ofstream out = open_output(path);
  out << "[\n";
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    ordered_json j;
    j["answer"] = table.entries[i].answer.render();
    j["count"] = table.entries[i].count;
    out << "  " << j.dump() << (i + 1 < table.entries.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

FrequencyTable load_frequency_table_json(const std::filesystem::path& path,
                                         const VerifierConfig& config) {
  std::ifstream in = open_input(path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw ParseError(path.string() + ": expected a JSON array");

  FrequencyTable table;
  table.entries.reserve(j.size());
  std::unordered_set<std::string> seen;
  std::int64_t previous_count = std::numeric_limits<std::int64_t>::max();
  std::string previous_rendering;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& item = j[i];
    if (!item.is_object() || !item.contains("answer") || !item.contains("count"))
      throw ParseError(path.string() + ": entry " + std::to_string(i) +
                       " must be {answer, count}");
    FrequencyEntry entry{canonicalize_answer(item.at("answer").get<std::string>(), config),
                         item.at("count").get<std::int64_t>()};
    if (entry.count < 1)
      throw ParseError(path.string() + ": entry " + std::to_string(i) + " has count < 1");
    const std::string rendering = entry.answer.render();
    if (!seen.insert(rendering).second)
      throw ParseError(path.string() + ": duplicate answer '" + rendering + "'");
    if (entry.count > previous_count ||
        (entry.count == previous_count && rendering < previous_rendering))
      throw ParseError(path.string() + ": entries out of rank order at index " +
                       std::to_string(i));
    previous_count = entry.count;
    previous_rendering = rendering;
    table.entries.push_back(std::move(entry));
  }
  return table;
}

std::vector<NamedCurve> load_curves_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || trim_copy(line) != "strategy,k,value")
    throw ParseError(path.string() + ": expected header 'strategy,k,value'");

  std::vector<NamedCurve> curves;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_copy(line).empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) parse_fail(path, lineno, "expected 'strategy,k,value'");
    const std::string label = line.substr(0, c1);
    CurvePoint point;
    try {
      point.k = std::stoll(line.substr(c1 + 1, c2 - c1 - 1));
      point.value = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      parse_fail(path, lineno, "malformed number");
    }
    auto it = std::find_if(curves.begin(), curves.end(),
                           [&](const NamedCurve& c) { return c.label == label; });
    if (it == curves.end()) {
      curves.push_back({label, {}});
      it = std::prev(curves.end());
    }
    it->points.push_back(point);
  }
  if (curves.empty()) throw ParseError(path.string() + ": no curve data rows");
  return curves;
}

}  // namespace covkit
