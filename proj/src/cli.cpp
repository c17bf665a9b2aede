#include "covkit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covkit/chart.hpp"
#include "covkit/enumeration.hpp"
#include "covkit/errors.hpp"
#include "covkit/estimators.hpp"
#include "covkit/io.hpp"
#include "covkit/oracle.hpp"
#include "covkit/verify.hpp"

namespace covkit {

namespace {

namespace fs = std::filesystem;

std::string sanitize_component(std::string_view s) {
  std::string out;
  for (const char c : s)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out.empty() ? "_" : out;
}

std::string normalize_strategy_token(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c == '_' || c == '-' || std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::set<Strategy> parse_strategies(const std::string& csv) {
  std::set<Strategy> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string token = normalize_strategy_token(item);
    if (token == "modelsampling") out.insert(Strategy::ModelSampling);
    else if (token == "traincounts") out.insert(Strategy::TrainCounts);
    else if (token == "positiveintegers") out.insert(Strategy::PositiveIntegers);
    else if (token == "mixture") out.insert(Strategy::Mixture);
    else if (token == "normalized") out.insert(Strategy::Normalized);
    else if (token == "recoveredgain") out.insert(Strategy::RecoveredGain);
    else throw ConfigError("unknown strategy '" + item + "'");
  }
  if (out.empty()) throw ConfigError("no strategies requested");
  return out;
}

std::set<Strategy> default_strategies(const RunConfig& config) {
  std::set<Strategy> out{Strategy::ModelSampling, Strategy::TrainCounts, Strategy::Mixture,
                         Strategy::Normalized, Strategy::RecoveredGain};
  if (config.verifier.protocol == Protocol::MathEquiv) out.insert(Strategy::PositiveIntegers);
  return out;
}

std::string curve_basename(const CoverageCurve& curve) {
  switch (curve.strategy) {
    case Strategy::ModelSampling: return "model_sampling";
    case Strategy::TrainCounts: return "train_counts";
    case Strategy::PositiveIntegers: return "positive_integers";
    case Strategy::Mixture: return "mixture_m" + std::to_string(curve.mixture_m.value_or(0));
    case Strategy::Normalized: return "normalized";
    case Strategy::RecoveredGain:
      return "recovered_gain_m" + std::to_string(curve.mixture_m.value_or(0));
  }
  return "curve";
}

std::vector<CoverageCurve> compute_curve_set(std::span<const ProblemRecord> problems,
                                             std::span<const SampleOutcomes> outcomes,
                                             const FrequencyTableSet* tables,
                                             const std::set<Strategy>& wanted,
                                             const RunConfig& config, const KGrid& grid) {
  const bool need_model = wanted.contains(Strategy::ModelSampling) ||
                          wanted.contains(Strategy::Normalized) ||
                          wanted.contains(Strategy::RecoveredGain);
  const bool need_ranks = wanted.contains(Strategy::TrainCounts) ||
                          wanted.contains(Strategy::Mixture) ||
                          wanted.contains(Strategy::Normalized) ||
                          wanted.contains(Strategy::RecoveredGain);

  std::optional<CoverageCurve> model;
  std::optional<CoverageCurve> traincounts;
  std::vector<std::optional<std::size_t>> ranks;
  if (need_model) model = model_sampling_curve(outcomes, grid);
  if (need_ranks) {
    ranks = guess_ranks(problems, *tables, config.verifier);
    traincounts = coverage_from_ranks(ranks, grid, Strategy::TrainCounts);
  }

  std::vector<CoverageCurve> mixtures;
  if (wanted.contains(Strategy::Mixture) || wanted.contains(Strategy::RecoveredGain)) {
    std::vector<MixtureProblem> mixture_problems;
    mixture_problems.reserve(problems.size());
    for (std::size_t i = 0; i < problems.size(); ++i)
      mixture_problems.push_back(
          MixtureProblem::from_rank(problems[i].problem_id, outcomes[i], ranks[i]));
    for (const std::int64_t m : config.mixture_m) {
      if (config.mixture_mode == MixtureMode::Exact) {
        mixtures.push_back(mixture_exact(mixture_problems, m, grid));
      } else {
        MixtureConfig mc{m, MixtureMode::MonteCarlo, config.mixture_draws, config.seed};
        mixtures.push_back(mixture_montecarlo(mixture_problems, mc, grid));
      }
    }
  }

  std::vector<CoverageCurve> out;
  if (wanted.contains(Strategy::ModelSampling)) out.push_back(*model);
  if (wanted.contains(Strategy::TrainCounts)) out.push_back(*traincounts);
  if (wanted.contains(Strategy::PositiveIntegers))
    out.push_back(positive_ints_coverage(problems, grid, config.verifier));
  if (wanted.contains(Strategy::Mixture))
    for (const CoverageCurve& c : mixtures) out.push_back(c);
  if (wanted.contains(Strategy::Normalized))
    out.push_back(normalized_coverage(*model, *traincounts));
  if (wanted.contains(Strategy::RecoveredGain))
    for (const CoverageCurve& c : mixtures) out.push_back(recovered_gain_ratio(c, *model));
  return out;
}

void write_curve_files(const fs::path& dir, std::span<const CoverageCurve> curves,
                       std::vector<std::string>& written) {
  fs::create_directories(dir);
  for (const CoverageCurve& curve : curves) {
    const std::string base = curve_basename(curve);
    write_curve_csv(dir / (base + ".csv"), curve);
    write_curve_json(dir / (base + ".json"), curve);
    written.push_back((dir / (base + ".csv")).string());
  }
}

// Per strategy and anchor k, coverage plus its gain over TrainCounts
// rescaled by the remaining headroom.
void write_summary(const fs::path& dir, std::span<const CoverageCurve> curves) {
  const CoverageCurve* traincounts = nullptr;
  for (const CoverageCurve& c : curves)
    if (c.strategy == Strategy::TrainCounts) traincounts = &c;

  std::ofstream out(dir / "summary.csv");
  if (!out) throw IoError("cannot open '" + (dir / "summary.csv").string() + "' for writing");
  out << "strategy,k,coverage,normalized\n";
  for (const CoverageCurve& curve : curves) {
    if (curve.strategy == Strategy::Normalized || curve.strategy == Strategy::RecoveredGain)
      continue;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const std::int64_t k = curve.points[i].k;
      const bool anchor = k == 1 || k == 10 || k == 100 || k == 1000 ||
                          i + 1 == curve.points.size();
      if (!anchor) continue;
      char value[32];
      std::snprintf(value, sizeof(value), "%.6f", curve.points[i].value);
      out << curve.label() << "," << k << "," << value << ",";
      if (traincounts && traincounts->points[i].value < 1.0) {
        const double b = traincounts->points[i].value;
        std::snprintf(value, sizeof(value), "%.6f", (curve.points[i].value - b) / (1.0 - b));
        out << value;
      }
      out << "\n";
    }
  }
}

int run_verify(const std::string& problems_path, const std::string& config_path,
               const std::string& out_path) {
  const RunConfig config = load_config(config_path);
  const std::vector<ProblemRecord> problems = load_problems(problems_path);
  const std::vector<SampleOutcomes> outcomes = verify_all(problems, config.verifier);
  write_outcomes(out_path, problems, outcomes);
  std::cout << "wrote " << outcomes.size() << " outcome records to " << out_path << "\n";
  return 0;
}

int run_counts(const std::string& train_path, const std::string& config_path,
               const std::string& out_path, const std::string& relations_arg) {
  const RunConfig config = load_config(config_path);
  const std::vector<TrainAnswer> train = load_train_answers(train_path);
  const bool per_relation = config.per_relation || !relations_arg.empty();
  if (!per_relation) {
    const FrequencyTable table = build_frequency_table(train, std::nullopt, config.verifier);
    write_frequency_table_json(out_path, table);
    std::cout << "wrote " << table.size() << " table entries to " << out_path << "\n";
    return 0;
  }

  const FrequencyTableSet tables = build_frequency_tables(train, true, config.verifier);
  std::vector<std::string> relations;
  if (relations_arg.empty() || relations_arg == "all") {
    for (const auto& [relation, _] : tables.by_relation) relations.push_back(relation);
  } else {
    std::stringstream ss(relations_arg);
    std::string item;
    while (std::getline(ss, item, ',')) relations.push_back(item);
  }
  fs::create_directories(out_path);
  write_frequency_table_json(fs::path(out_path) / "pooled.json", *tables.global);
  for (const std::string& relation : relations) {
    const auto it = tables.by_relation.find(relation);
    if (it == tables.by_relation.end())
      throw MissingRelationTable("no frequency table for relation '" + relation + "'");
    write_frequency_table_json(
        fs::path(out_path) / (sanitize_component(relation) + ".json"), it->second);
  }
  std::cout << "wrote pooled + " << relations.size() << " relation tables to " << out_path
            << "\n";
  return 0;
}

int run_curves(const std::string& problems_path, const std::string& train_path,
               const std::string& config_path, const std::string& out_dir,
               const std::string& strategies_arg, const std::string& relations_arg,
               const std::optional<std::uint64_t>& seed_override) {
  RunConfig config = load_config(config_path);
  if (seed_override) config.seed = *seed_override;

  const std::set<Strategy> wanted =
      strategies_arg.empty() ? default_strategies(config) : parse_strategies(strategies_arg);
  if (wanted.contains(Strategy::PositiveIntegers) &&
      config.verifier.protocol != Protocol::MathEquiv)
    throw ConfigError("PositiveIntegers requires protocol = math");

  std::vector<ProblemRecord> problems = load_problems(problems_path);
  if (problems.empty()) throw EmptyInput("problem file contains no records");
  // Canonical processing order; makes outputs independent of input order.
  std::sort(problems.begin(), problems.end(),
            [](const ProblemRecord& a, const ProblemRecord& b) {
              return a.problem_id < b.problem_id;
            });
  const std::vector<SampleOutcomes> outcomes = verify_all(problems, config.verifier);

  std::int64_t min_n = outcomes.front().total;
  for (const SampleOutcomes& o : outcomes) min_n = std::min(min_n, o.total);
  const KGrid grid = config.k_grid.empty() ? default_k_grid(min_n) : KGrid(config.k_grid);
  if (grid.max() > min_n)
    throw KExceedsN("grid max k=" + std::to_string(grid.max()) +
                    " exceeds the smallest sample count N=" + std::to_string(min_n));

  const bool need_tables = wanted.contains(Strategy::TrainCounts) ||
                           wanted.contains(Strategy::Mixture) ||
                           wanted.contains(Strategy::Normalized) ||
                           wanted.contains(Strategy::RecoveredGain);
  const bool per_relation = config.per_relation || !relations_arg.empty();
  FrequencyTableSet tables;
  if (need_tables) {
    if (train_path.empty())
      throw ConfigError("--train is required for the requested strategies");
    tables = build_frequency_tables(load_train_answers(train_path), per_relation,
                                    config.verifier);
  }

  const std::string resolved_out = !out_dir.empty() ? out_dir : config.out_dir.value_or("");
  if (resolved_out.empty()) throw ConfigError("no output directory: pass --out or set out_dir");

  std::vector<std::string> written;
  const std::vector<CoverageCurve> pooled = compute_curve_set(
      problems, outcomes, need_tables ? &tables : nullptr, wanted, config, grid);
  write_curve_files(resolved_out, pooled, written);
  write_summary(resolved_out, pooled);

  if (per_relation) {
    std::vector<std::string> relations;
    if (relations_arg.empty() || relations_arg == "all") {
      for (const auto& [relation, _] : tables.by_relation) relations.push_back(relation);
    } else {
      std::stringstream ss(relations_arg);
      std::string item;
      while (std::getline(ss, item, ',')) relations.push_back(item);
    }
    for (const std::string& relation : relations) {
      std::vector<ProblemRecord> subset;
      std::vector<SampleOutcomes> subset_outcomes;
      for (std::size_t i = 0; i < problems.size(); ++i) {
        if (problems[i].relation == relation) {
          subset.push_back(problems[i]);
          subset_outcomes.push_back(outcomes[i]);
        }
      }
      if (subset.empty()) {
        std::cerr << "note: no problems tagged with relation '" << relation << "', skipped\n";
        continue;
      }
      const std::vector<CoverageCurve> curves = compute_curve_set(
          subset, subset_outcomes, need_tables ? &tables : nullptr, wanted, config, grid);
      const fs::path dir = fs::path(resolved_out) / "relations" / sanitize_component(relation);
      write_curve_files(dir, curves, written);
      write_summary(dir, curves);
    }
  }

  for (const std::string& file : written) std::cout << "wrote " << file << "\n";
  return 0;
}

int run_chart(const std::vector<std::string>& curve_files, const std::string& out_path) {
  std::vector<NamedCurve> curves;
  for (const std::string& file : curve_files)
    for (NamedCurve& curve : load_curves_csv(file)) curves.push_back(std::move(curve));
  const std::string svg = render_chart_svg(curves);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << svg;
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_oracle(std::int64_t n, std::int64_t c, std::int64_t k,
               const std::optional<std::int64_t>& m, bool gold_in_top) {
  const SampleOutcomes outcomes{n, c};
  char line[160];
  if (m) {
    const double brute = mixture_exhaustive(n, c, *m, gold_in_top);
    const double closed = gold_in_top ? 1.0 : pass_at_k(outcomes, *m);
    std::snprintf(line, sizeof(line),
                  "mixture(M=%lld, gold_in_top=%s)  exhaustive=%.12f  estimator=%.12f\n",
                  static_cast<long long>(*m), gold_in_top ? "true" : "false", brute, closed);
  } else {
    const double brute = pass_at_k_exhaustive(n, c, k);
    const double closed = pass_at_k(outcomes, k);
    std::snprintf(line, sizeof(line), "pass@%lld  exhaustive=%.12f  estimator=%.12f\n",
                  static_cast<long long>(k), brute, closed);
  }
  std::cout << line;
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"coverage curves for repeated model sampling vs answer-enumeration baselines"};
  app.require_subcommand(1);

  std::string problems_path, train_path, config_path, out_path;
  std::string strategies_arg, relations_arg;
  std::optional<std::uint64_t> seed_override;

  CLI::App* verify = app.add_subcommand("verify", "verify samples and emit (N, C) outcomes");
  verify->add_option("--problems", problems_path, "problems JSONL")->required();
  verify->add_option("--config", config_path, "run configuration")->required();
  verify->add_option("--out", out_path, "output outcomes JSONL")->required();

  CLI::App* counts = app.add_subcommand("counts", "build training-answer frequency tables");
  counts->add_option("--train", train_path, "training answers JSONL")->required();
  counts->add_option("--config", config_path, "run configuration")->required();
  counts->add_option("--out", out_path, "output JSON file (directory in per-relation mode)")
      ->required();
  counts->add_option("--relations", relations_arg,
                     "comma list of relations, or 'all' (enables per-relation mode)");

  CLI::App* curves = app.add_subcommand("curves", "compute coverage curves and summary");
  curves->add_option("--problems", problems_path, "problems JSONL")->required();
  curves->add_option("--train", train_path, "training answers JSONL");
  curves->add_option("--config", config_path, "run configuration")->required();
  curves->add_option("--out", out_path, "output directory");
  curves->add_option("--strategies", strategies_arg,
                     "comma list: ModelSampling,TrainCounts,PositiveIntegers,Mixture,"
                     "Normalized,RecoveredGain");
  curves->add_option("--relations", relations_arg,
                     "comma list of relations, or 'all' (enables per-relation mode)");
  curves->add_option("--seed", seed_override, "override the config seed");

  std::vector<std::string> chart_files;
  CLI::App* chart = app.add_subcommand("chart", "render curve CSV files to an SVG chart");
  chart->add_option("files", chart_files, "curve CSV files")->required()->expected(-1);
  chart->add_option("--out", out_path, "output SVG path")->required();

  std::int64_t oracle_n = 0, oracle_c = 0, oracle_k = 1;
  std::optional<std::int64_t> oracle_m;
  bool oracle_gold_in_top = false;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force estimator audit");
  oracle->group("");  // hidden
  oracle->add_option("--n", oracle_n, "total samples (<= 12)")->required();
  oracle->add_option("--c", oracle_c, "correct samples")->required();
  oracle->add_option("--k", oracle_k, "subset size");
  oracle->add_option("--m", oracle_m, "mixture model samples");
  oracle->add_flag("--gold-in-top", oracle_gold_in_top, "gold answer is among the guesses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (verify->parsed()) return run_verify(problems_path, config_path, out_path);
    if (counts->parsed()) return run_counts(train_path, config_path, out_path, relations_arg);
    if (curves->parsed())
      return run_curves(problems_path, train_path, config_path, out_path, strategies_arg,
                        relations_arg, seed_override);
    if (chart->parsed()) return run_chart(chart_files, out_path);
    if (oracle->parsed())
      return run_oracle(oracle_n, oracle_c, oracle_k, oracle_m, oracle_gold_in_top);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace covkit
