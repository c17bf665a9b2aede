#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "covkit/enumeration.hpp"
#include "covkit/errors.hpp"
#include "covkit/io.hpp"
#include "testutil.hpp"

using namespace covkit;

namespace {

std::vector<TrainAnswer> plain_answers(std::initializer_list<const char*> raws) {
  std::vector<TrainAnswer> out;
  for (const char* raw : raws) out.push_back({raw, std::nullopt});
  return out;
}

ProblemRecord gold_only(std::string id, std::string gold,
                        std::optional<std::string> relation = std::nullopt) {
  return {std::move(id), std::move(gold), std::move(relation), std::nullopt,
          SampleOutcomes{1000, 0}};
}

std::vector<std::string> renderings(const FrequencyTable& table) {
  std::vector<std::string> out;
  for (const auto& e : table.entries) out.push_back(e.answer.render());
  return out;
}

}  // namespace

TEST_CASE("build_frequency_table counts and orders answers") {
  const VerifierConfig config;
  const auto table =
      build_frequency_table(plain_answers({"2", "1", "2", "3", "2", "1"}), std::nullopt, config);
  REQUIRE(table.size() == 3);
  CHECK(renderings(table) == std::vector<std::string>{"2", "1", "3"});
  CHECK(table.entries[0].count == 3);
  CHECK(table.entries[1].count == 2);
  CHECK(table.entries[2].count == 1);
}

TEST_CASE("equal counts break ties by canonical text") {
  const VerifierConfig config;
  const auto table = build_frequency_table(plain_answers({"7", "5"}), std::nullopt, config);
  CHECK(renderings(table) == std::vector<std::string>{"5", "7"});

  // equivalent spellings collapse into one entry before ranking
  const auto merged =
      build_frequency_table(plain_answers({"0.5", "\\frac{1}{2}", "2/4", "9"}), std::nullopt,
                            config);
  REQUIRE(merged.size() == 2);
  CHECK(merged.entries[0].answer.render() == "1/2");
  CHECK(merged.entries[0].count == 3);
}

TEST_CASE("empty training sets are rejected") {
  const VerifierConfig config;
  CHECK_THROWS_AS(build_frequency_table({}, std::nullopt, config), EmptyTrainingSet);
  const auto tagged = std::vector<TrainAnswer>{{"2", std::string("P36")}};
  CHECK_THROWS_AS(build_frequency_table(tagged, std::string("P413"), config), EmptyTrainingSet);
}

TEST_CASE("relation filter keeps only matching answers") {
  const VerifierConfig config;
  std::vector<TrainAnswer> answers{{"madrid", std::string("P36")},
                                   {"midfielder", std::string("P413")},
                                   {"madrid", std::string("P36")},
                                   {"untagged", std::nullopt}};
  const auto table = build_frequency_table(answers, std::string("P36"), config);
  REQUIRE(table.size() == 1);
  CHECK(table.entries[0].count == 2);
  CHECK(table.relation == "P36");
}

TEST_CASE("table construction is order-independent") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 30; ++round) {
    std::vector<TrainAnswer> answers;
    for (int i = 0; i < 200; ++i)
      answers.push_back({std::to_string(testutil::rand_int(rng, 1, 30)), std::nullopt});
    const VerifierConfig config;
    const auto base = build_frequency_table(answers, std::nullopt, config);
    std::shuffle(answers.begin(), answers.end(), rng);
    const auto shuffled = build_frequency_table(answers, std::nullopt, config);
    REQUIRE(base.size() == shuffled.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(base.entries[i].answer == shuffled.entries[i].answer);
      CHECK(base.entries[i].count == shuffled.entries[i].count);
    }
  }
}

TEST_CASE("the bundled MATH table fixture rebuilds identically from raw answers") {
  const VerifierConfig config;
  const auto fixture = load_frequency_table_json(
      testutil::data_dir() / "math_top100_answers.json", config);
  REQUIRE(fixture.size() == 100);

  std::vector<TrainAnswer> expanded;
  for (const auto& entry : fixture.entries)
    for (std::int64_t i = 0; i < entry.count; ++i)
      expanded.push_back({entry.answer.render(), std::nullopt});
  std::mt19937_64 rng(41);
  std::shuffle(expanded.begin(), expanded.end(), rng);

  const auto rebuilt = build_frequency_table(expanded, std::nullopt, config);
  REQUIRE(rebuilt.size() == 100);
  const std::vector<std::string> first_ten{"2", "1", "3", "6", "5", "4", "8", "0", "12", "10"};
  for (std::size_t i = 0; i < first_ten.size(); ++i)
    CHECK(rebuilt.entries[i].answer.render() == first_ten[i]);
  for (std::size_t i = 0; i < 100; ++i)
    CHECK(rebuilt.entries[i].answer == fixture.entries[i].answer);

  std::size_t integers = 0;
  for (const auto& entry : fixture.entries)
    if (entry.answer.is_integer()) ++integers;
  CHECK(integers == 85);
}

TEST_CASE("top_k returns a rank-order prefix and saturates") {
  const VerifierConfig config;
  const auto fixture = load_frequency_table_json(
      testutil::data_dir() / "math_top100_answers.json", config);
  const auto first = top_k(fixture, 1);
  REQUIRE(first.size() == 1);
  CHECK(first[0].render() == "2");

  const auto table = build_frequency_table(plain_answers({"2", "2", "1", "3"}), std::nullopt,
                                           VerifierConfig{});
  CHECK(top_k(table, 2).size() == 2);
  CHECK(top_k(table, 99).size() == table.size());
  CHECK_THROWS_AS(top_k(table, 0), Error);
}

TEST_CASE("traincounts coverage counts gold answers inside the top-k prefix") {
  const VerifierConfig config;
  const auto fixture = load_frequency_table_json(
      testutil::data_dir() / "math_top100_answers.json", config);
  const std::vector<ProblemRecord> problems{gold_only("a", "2"), gold_only("b", "999999")};
  const auto curve =
      traincounts_coverage(problems, fixture, KGrid({1, 100}), config);
  CHECK(curve.points[0].value == 0.5);  // "2" is rank 1, "999999" absent
  CHECK(curve.points[1].value == 0.5);
  CHECK(curve.strategy == Strategy::TrainCounts);
}

TEST_CASE("coverage saturates at the table size when every gold is present") {
  const VerifierConfig config;
  const auto table =
      build_frequency_table(plain_answers({"2", "2", "7", "9"}), std::nullopt, config);
  const std::vector<ProblemRecord> problems{gold_only("a", "2"), gold_only("b", "7"),
                                            gold_only("c", "9")};
  const auto curve = traincounts_coverage(
      problems, table, KGrid({static_cast<std::int64_t>(table.size()), 50}), config);
  CHECK(curve.points[0].value == 1.0);
  CHECK(curve.points[1].value == 1.0);
}

TEST_CASE("traincounts coverage at the full table equals the fraction present anywhere") {
  std::mt19937_64 rng(43);
  const VerifierConfig config;
  for (int round = 0; round < 20; ++round) {
    std::vector<TrainAnswer> answers;
    for (int i = 0; i < 100; ++i)
      answers.push_back({std::to_string(testutil::rand_int(rng, 1, 25)), std::nullopt});
    const auto table = build_frequency_table(answers, std::nullopt, config);

    std::vector<ProblemRecord> problems;
    std::size_t present = 0;
    for (int i = 0; i < 40; ++i) {
      const std::string gold = std::to_string(testutil::rand_int(rng, 1, 40));
      problems.push_back(gold_only("p" + std::to_string(i), gold));
      if (std::any_of(table.entries.begin(), table.entries.end(),
                      [&](const FrequencyEntry& e) { return e.answer.render() == gold; }))
        ++present;
    }
    const auto curve = traincounts_coverage(
        problems, table, KGrid({static_cast<std::int64_t>(table.size())}), config);
    CHECK(curve.points[0].value ==
          doctest::Approx(static_cast<double>(present) / problems.size()));
  }
}

TEST_CASE("coverage curves are non-decreasing and permutation-invariant") {
  std::mt19937_64 rng(47);
  const VerifierConfig config;
  for (int round = 0; round < 20; ++round) {
    std::vector<TrainAnswer> answers;
    for (int i = 0; i < 150; ++i)
      answers.push_back({std::to_string(testutil::rand_int(rng, 1, 40)), std::nullopt});
    const auto table = build_frequency_table(answers, std::nullopt, config);

    std::vector<ProblemRecord> problems;
    for (int i = 0; i < 30; ++i)
      problems.push_back(gold_only("p" + std::to_string(i),
                                   std::to_string(testutil::rand_int(rng, 1, 60))));
    const KGrid grid({1, 2, 5, 10, 20, 40});
    const auto curve = traincounts_coverage(problems, table, grid, config);
    for (std::size_t i = 1; i < curve.points.size(); ++i)
      CHECK(curve.points[i].value >= curve.points[i - 1].value);

    std::shuffle(problems.begin(), problems.end(), rng);
    const auto shuffled = traincounts_coverage(problems, table, grid, config);
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      CHECK(curve.points[i].value == shuffled.points[i].value);
  }
}

TEST_CASE("per-relation mode dispatches each problem to its own table") {
  VerifierConfig config;
  config.protocol = Protocol::TokenF1;
  std::vector<TrainAnswer> answers{{"midfielder", std::string("P413")},
                                   {"midfielder", std::string("P413")},
                                   {"goalkeeper", std::string("P413")},
                                   {"france", std::string("P495")},
                                   {"france", std::string("P495")},
                                   {"midfielder", std::string("P495")}};
  const auto tables = build_frequency_tables(answers, true, config);
  REQUIRE(tables.by_relation.size() == 2);

  // "midfielder" is rank 1 for P413 but rank 2 for P495
  const auto p413 = gold_only("a", "midfielder", std::string("P413"));
  const auto p495 = gold_only("b", "midfielder", std::string("P495"));
  const auto ranks = guess_ranks(std::vector<ProblemRecord>{p413, p495}, tables, config);
  CHECK(ranks[0] == 1);
  CHECK(ranks[1] == 2);

  const auto missing = gold_only("c", "paris", std::string("P36"));
  CHECK_THROWS_AS(guess_ranks(std::vector<ProblemRecord>{missing}, tables, config),
                  MissingRelationTable);
}

TEST_CASE("positive integer enumeration covers exactly the golds in 1..k") {
  const VerifierConfig config;
  const std::vector<ProblemRecord> problems{
      gold_only("a", "5"), gold_only("b", "\\frac{1}{2}"), gold_only("c", "-3"),
      gold_only("d", "0"), gold_only("e", "1")};
  const auto curve = positive_ints_coverage(problems, KGrid({1, 4, 5, 1000}), config);
  CHECK(curve.points[0].value == doctest::Approx(0.2));  // only "1"
  CHECK(curve.points[1].value == doctest::Approx(0.2));  // "5" not yet covered at k=4
  CHECK(curve.points[2].value == doctest::Approx(0.4));  // "5" enters at k=5
  CHECK(curve.points[3].value == doctest::Approx(0.4));  // 1/2, -3, 0 never covered
  CHECK(curve.strategy == Strategy::PositiveIntegers);

  VerifierConfig f1;
  f1.protocol = Protocol::TokenF1;
  CHECK_THROWS_AS(positive_ints_coverage(problems, KGrid({1}), f1), Error);
}

TEST_CASE("coverage over an empty problem list is rejected") {
  const VerifierConfig config;
  const auto table = build_frequency_table(plain_answers({"1"}), std::nullopt, config);
  CHECK_THROWS_AS(
      traincounts_coverage(std::vector<ProblemRecord>{}, table, KGrid({1}), config),
      EmptyInput);
}
