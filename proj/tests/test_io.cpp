#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "covkit/errors.hpp"
#include "covkit/io.hpp"
#include "testutil.hpp"

using namespace covkit;
using covkit::testutil::make_temp_dir;
using covkit::testutil::read_file;
using covkit::testutil::write_file;

TEST_CASE("load_problems accepts sample and precomputed records") {
  const auto dir = make_temp_dir("io");
  write_file(dir / "p.jsonl",
             R"({"problem_id":"p1","gold":"1/2","samples":["0.5","3"]})"
             "\n"
             R"({"problem_id":"p2","gold":"x","N":1000,"C":12})"
             "\n\n");
  const auto records = load_problems(dir / "p.jsonl");
  REQUIRE(records.size() == 2);
  CHECK(records[0].problem_id == "p1");
  CHECK(records[0].samples == std::vector<std::string>{"0.5", "3"});
  CHECK_FALSE(records[0].precomputed.has_value());
  CHECK(records[1].precomputed == SampleOutcomes{1000, 12});
}

TEST_CASE("load_problems rejects malformed lines with their line number") {
  const auto dir = make_temp_dir("io");

  write_file(dir / "missing.jsonl", R"({"problem_id":"ok","gold":"1","N":2,"C":1})"
                                    "\n"
                                    R"({"problem_id":"p2","samples":["1"]})"
                                    "\n");
  CHECK_THROWS_WITH_AS(load_problems(dir / "missing.jsonl"),
                       doctest::Contains(":2:"), ParseError);

  write_file(dir / "unknown.jsonl", R"({"problem_id":"p","gold":"1","N":2,"C":1,"extra":0})"
                                    "\n");
  CHECK_THROWS_WITH_AS(load_problems(dir / "unknown.jsonl"),
                       doctest::Contains("unknown field 'extra'"), ParseError);

  write_file(dir / "half.jsonl", R"({"problem_id":"p","gold":"1","N":2})"
                                 "\n");
  CHECK_THROWS_AS(load_problems(dir / "half.jsonl"), ParseError);

  write_file(dir / "badjson.jsonl", "{not json\n");
  CHECK_THROWS_AS(load_problems(dir / "badjson.jsonl"), ParseError);

  write_file(dir / "dup.jsonl", R"({"problem_id":"p","gold":"1","N":2,"C":1})"
                                "\n"
                                R"({"problem_id":"p","gold":"2","N":2,"C":1})"
                                "\n");
  CHECK_THROWS_AS(load_problems(dir / "dup.jsonl"), MalformedRecord);

  write_file(dir / "both.jsonl", R"({"problem_id":"p","gold":"1","samples":["1"],"N":2,"C":1})"
                                 "\n");
  CHECK_THROWS_AS(load_problems(dir / "both.jsonl"), MalformedRecord);

  write_file(dir / "cgtn.jsonl", R"({"problem_id":"p","gold":"1","N":10,"C":11})"
                                 "\n");
  CHECK_THROWS_AS(load_problems(dir / "cgtn.jsonl"), MalformedRecord);

  write_file(dir / "float.jsonl", R"({"problem_id":"p","gold":"1","N":4.5,"C":1})"
                                  "\n");
  CHECK_THROWS_AS(load_problems(dir / "float.jsonl"), ParseError);

  CHECK_THROWS_AS(load_problems(dir / "does_not_exist.jsonl"), IoError);
}

TEST_CASE("problems round-trip through save and load") {
  const auto dir = make_temp_dir("io");
  std::vector<ProblemRecord> records{
      {"p1", "\\frac{1}{2}", std::nullopt, std::vector<std::string>{"0.5", "x", ""},
       std::nullopt},
      {"p2", "midfielder", std::string("P413"), std::nullopt, SampleOutcomes{1000, 40}},
  };
  save_problems(dir / "round.jsonl", records);
  CHECK(load_problems(dir / "round.jsonl") == records);
}

TEST_CASE("load_train_answers parses tagged and untagged answers") {
  const auto dir = make_temp_dir("io");
  write_file(dir / "t.jsonl", R"({"answer":"2"})"
                              "\n"
                              R"({"answer":"midfielder","relation":"P413"})"
                              "\n");
  const auto answers = load_train_answers(dir / "t.jsonl");
  REQUIRE(answers.size() == 2);
  CHECK(answers[0] == TrainAnswer{"2", std::nullopt});
  CHECK(answers[1] == TrainAnswer{"midfielder", std::string("P413")});

  write_file(dir / "empty.jsonl", R"({"answer":""})"
                                  "\n");
  CHECK_THROWS_AS(load_train_answers(dir / "empty.jsonl"), EmptyAnswer);

  write_file(dir / "extra.jsonl", R"({"answer":"2","count":3})"
                                  "\n");
  CHECK_THROWS_AS(load_train_answers(dir / "extra.jsonl"), ParseError);
}

TEST_CASE("load_config resolves every supported key") {
  const auto dir = make_temp_dir("io");
  write_file(dir / "run.cfg", R"(# comment
protocol = f1
f1_threshold = 0.5
strip_units = true
mixture_m = 1,5,10
mixture_mode = montecarlo
mixture_t = 250
seed = 42
k_grid = 1,10,100,1000
per_relation = true
out_dir = /tmp/somewhere
)");
  const RunConfig config = load_config(dir / "run.cfg");
  CHECK(config.verifier.protocol == Protocol::TokenF1);
  CHECK(config.verifier.f1_threshold == 0.5);
  CHECK(config.verifier.strip_units);
  CHECK(config.mixture_m == std::vector<std::int64_t>{1, 5, 10});
  CHECK(config.mixture_mode == MixtureMode::MonteCarlo);
  CHECK(config.mixture_draws == 250);
  CHECK(config.seed == 42);
  CHECK(config.k_grid == std::vector<std::int64_t>{1, 10, 100, 1000});
  CHECK(config.per_relation);
  CHECK(config.out_dir == "/tmp/somewhere");
}

TEST_CASE("load_config applies defaults and rejects bad values") {
  const auto dir = make_temp_dir("io");
  write_file(dir / "min.cfg", "protocol = math\nk_grid = auto\n");
  const RunConfig config = load_config(dir / "min.cfg");
  CHECK(config.verifier.protocol == Protocol::MathEquiv);
  CHECK(config.verifier.f1_threshold == 0.5);
  CHECK_FALSE(config.verifier.strip_units);
  CHECK(config.mixture_m == std::vector<std::int64_t>{10});
  CHECK(config.mixture_mode == MixtureMode::Exact);
  CHECK(config.mixture_draws == 100);
  CHECK(config.k_grid.empty());

  write_file(dir / "bad1.cfg", "f1_threshold = 1.5\n");
  CHECK_THROWS_AS(load_config(dir / "bad1.cfg"), ConfigError);
  write_file(dir / "bad2.cfg", "no_such_key = 1\n");
  CHECK_THROWS_WITH_AS(load_config(dir / "bad2.cfg"),
                       doctest::Contains("no_such_key"), ConfigError);
  write_file(dir / "bad3.cfg", "k_grid = 5,2\n");
  CHECK_THROWS_AS(load_config(dir / "bad3.cfg"), ConfigError);
  write_file(dir / "bad4.cfg", "strip_units = yes\n");
  CHECK_THROWS_AS(load_config(dir / "bad4.cfg"), ConfigError);
  write_file(dir / "bad5.cfg", "mixture_m = 0\n");
  CHECK_THROWS_AS(load_config(dir / "bad5.cfg"), ConfigError);
  write_file(dir / "bad6.cfg", "protocol math\n");
  CHECK_THROWS_AS(load_config(dir / "bad6.cfg"), ConfigError);
}

TEST_CASE("curves round-trip through CSV with 6 decimal digits") {
  const auto dir = make_temp_dir("io");
  CoverageCurve curve{Strategy::Mixture, 10, {{1, 8.0 / 15.0}, {10, 0.9}, {100, 1.0}}};
  write_curve_csv(dir / "c.csv", curve);

  const std::string text = read_file(dir / "c.csv");
  CHECK(text.find("strategy,k,value\n") == 0);
  CHECK(text.find("Mixture(M=10),1,0.533333\n") != std::string::npos);
  CHECK(text.find("Mixture(M=10),100,1.000000\n") != std::string::npos);

  const auto curves = load_curves_csv(dir / "c.csv");
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].label == "Mixture(M=10)");
  REQUIRE(curves[0].points.size() == 3);
  CHECK(curves[0].points[1].k == 10);
  CHECK(curves[0].points[1].value == doctest::Approx(0.9));

  write_curve_json(dir / "c.json", curve);
  const std::string json_text = read_file(dir / "c.json");
  CHECK(json_text.find("\"strategy\": \"Mixture(M=10)\"") != std::string::npos);
  CHECK(json_text.find("\"value\": 0.533333") != std::string::npos);
}

TEST_CASE("load_curves_csv rejects empty or malformed files") {
  const auto dir = make_temp_dir("io");
  write_file(dir / "empty.csv", "strategy,k,value\n");
  CHECK_THROWS_AS(load_curves_csv(dir / "empty.csv"), ParseError);
  write_file(dir / "header.csv", "foo,bar\n");
  CHECK_THROWS_AS(load_curves_csv(dir / "header.csv"), ParseError);
  write_file(dir / "row.csv", "strategy,k,value\nModelSampling,abc,0.5\n");
  CHECK_THROWS_AS(load_curves_csv(dir / "row.csv"), ParseError);
  CHECK_THROWS_AS(load_curves_csv(dir / "missing.csv"), IoError);
}

TEST_CASE("frequency tables round-trip through JSON and stay rank-ordered") {
  const auto dir = make_temp_dir("io");
  const VerifierConfig config;
  std::vector<TrainAnswer> answers;
  for (const char* a : {"2", "2", "2", "\\frac{1}{2}", "\\frac{1}{2}", "7"})
    answers.push_back({a, std::nullopt});
  const auto table = build_frequency_table(answers, std::nullopt, config);
  write_frequency_table_json(dir / "t.json", table);
  const auto loaded = load_frequency_table_json(dir / "t.json", config);
  REQUIRE(loaded.size() == table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(loaded.entries[i].answer == table.entries[i].answer);
    CHECK(loaded.entries[i].count == table.entries[i].count);
  }

  write_file(dir / "bad_order.json", R"([{"answer":"1","count":1},{"answer":"2","count":5}])");
  CHECK_THROWS_AS(load_frequency_table_json(dir / "bad_order.json", config), ParseError);
  write_file(dir / "dup.json", R"([{"answer":"0.5","count":3},{"answer":"1/2","count":3}])");
  CHECK_THROWS_AS(load_frequency_table_json(dir / "dup.json", config), ParseError);
}

TEST_CASE("writers surface I/O failures") {
  CoverageCurve curve{Strategy::ModelSampling, std::nullopt, {{1, 0.5}}};
  CHECK_THROWS_AS(write_curve_csv("/no_such_dir/x.csv", curve), IoError);
  CHECK_THROWS_AS(load_config("/no_such_dir/x.cfg"), IoError);
}
