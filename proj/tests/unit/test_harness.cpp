#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cubelab/harness.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/stats.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cubelab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig phase_config(uint32_t threads) {
  ExperimentConfig c = parse_config(R"({
    "kind": "phase_portrait",
    "d": [5, 6],
    "epsilon": [0.5, 1.0],
    "trials": 3,
    "seed": "42"
  })");
  c.threads = threads;
  return c;
}

// column lookup by name; the test fails loudly on a renamed column
size_t col(const ResultTable& t, const std::string& name) {
  auto it = std::find(t.columns.begin(), t.columns.end(), name);
  REQUIRE(it != t.columns.end());
  return size_t(it - t.columns.begin());
}

}  // namespace

TEST_CASE("kind names and tags are stable and distinct") {
  CHECK(std::string(kind_name(ExperimentKind::kPhasePortrait)) ==
        "phase_portrait");
  CHECK(std::string(kind_name(ExperimentKind::kSprinkleCheck)) ==
        "sprinkle_check");
  CHECK(kind_tag(ExperimentKind::kPhasePortrait) == 1);
  CHECK(kind_tag(ExperimentKind::kSprinkleCheck) == 7);
}

TEST_CASE("parse_config: defaults and echoes") {
  auto c = parse_config(R"({"kind":"expansion","d":4,"epsilon":1.0})");
  CHECK(c.kind == ExperimentKind::kExpansion);
  CHECK(c.dims == std::vector<uint32_t>{4});
  CHECK(c.epsilons == std::vector<double>{1.0});
  CHECK(c.probabilities.empty());
  CHECK(c.trials == 1);
  CHECK(c.master_seed == 0);
  CHECK(c.out_base == "result");
  CHECK(c.format == "both");
  CHECK(c.threads == 1);
  CHECK(c.alpha == 0.1);
}

TEST_CASE("parse_config: seeds parse as strings to full range") {
  auto c = parse_config(
      R"({"kind":"cycles","d":4,"p":0.3,"seed":"18446744073709551615"})");
  CHECK(c.master_seed == UINT64_MAX);
  CHECK(parse_seed_string("0", "seed") == 0);
  CHECK_THROWS_AS(parse_seed_string("", "seed"), ConfigError);
  CHECK_THROWS_AS(parse_seed_string("12x", "seed"), ConfigError);
  CHECK_THROWS_AS(parse_seed_string("-1", "seed"), ConfigError);
  CHECK_THROWS_AS(parse_seed_string("18446744073709551616", "seed"),
                  ConfigError);
  try {
    parse_seed_string("bad", "config.seed");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "config.seed");
  }
}

TEST_CASE("parse_config: field errors carry dotted paths") {
  auto path_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.path();
    }
    return std::string("NO ERROR");
  };

  CHECK(path_of(R"({"d":4,"epsilon":1})") == "kind");
  CHECK(path_of(R"({"kind":"nope","d":4,"epsilon":1})") == "kind");
  CHECK(path_of(R"({"kind":"cycles","epsilon":1})") == "d");
  CHECK(path_of(R"({"kind":"cycles","d":4})") == "p");
  CHECK(path_of(R"({"kind":"cycles","d":4,"epsilon":1,"p":0.5})") ==
        "epsilon");
  CHECK(path_of(R"({"kind":"cycles","d":4,"p":0.5,"bogus":1})") == "bogus");
  CHECK(path_of(R"({"kind":"cycles","d":1,"p":0.5})") == "d");
  CHECK(path_of(R"({"kind":"cycles","d":4,"p":1.5})") == "p");
  CHECK(path_of(R"({"kind":"cycles","d":4,"p":0.5,"trials":0})") == "trials");
  CHECK(path_of(R"({"kind":"cycles","d":4,"p":0.5,"format":"xml"})") ==
        "format");
  CHECK(path_of(R"({"kind":"cycles","d":4,"p":0.5,"params":{"alpha":0.2}})") ==
        "params.alpha");
  CHECK(path_of(R"({"kind":"cycles","d":[4,4],"p":0.5})") == "d");
  CHECK(path_of("[]") == "");
  CHECK(path_of("{nope") == "");
  // a (d, epsilon) pair that would push p past 1
  CHECK(path_of(R"({"kind":"cycles","d":2,"epsilon":1.5})") != "NO ERROR");
}

TEST_CASE("run_experiment: cross product order and per-row seeds") {
  auto table = run_experiment(phase_config(1));
  REQUIRE(table.trials.size() == 12);  // 2 dims x 2 epsilons x 3 trials
  const size_t d_col = col(table, "d");
  const size_t eps_col = col(table, "epsilon");
  const size_t seed_col = col(table, "seed");

  const uint64_t tag = kind_tag(ExperimentKind::kPhasePortrait);
  uint64_t row = 0;
  for (uint32_t d : {5, 6})
    for (double eps : {0.5, 1.0})
      for (uint32_t t = 0; t < 3; ++t, ++row) {
        const auto& cells = table.trials[row];
        CHECK(cells[d_col].num == double(d));
        CHECK(cells[eps_col].num == eps);
        CHECK(cells[seed_col].is_text);
        CHECK(cells[seed_col].text == std::to_string(trial_seed(42, row, tag)));
      }
}

TEST_CASE("run_experiment: identical output for 1 and 4 workers") {
  auto serial = run_experiment(phase_config(1));
  auto pooled = run_experiment(phase_config(4));
  CHECK(render_csv(serial) == render_csv(pooled));
  CHECK(render_json(serial) == render_json(pooled));
}

TEST_CASE("aggregates: nine stats per axis group, over rounded trials") {
  auto table = run_experiment(phase_config(1));
  REQUIRE(table.aggregates.size() == 4 * 9);  // 4 groups, 9 stats each

  const char* order[] = {"mean", "stddev", "min", "max", "q10",
                         "q25",  "q50",    "q75", "q90"};
  for (size_t g = 0; g < 4; ++g)
    for (size_t k = 0; k < 9; ++k)
      CHECK(table.aggregates[g * 9 + k].stat == order[k]);

  // recompute one stat cell from the trial cells it aggregates
  const size_t frac_col = col(table, "largest_frac");
  const size_t seed_col = col(table, "seed");
  std::vector<double> group;
  for (size_t row = 0; row < 3; ++row)
    group.push_back(table.trials[row][frac_col].num);
  auto s = summarize(group);
  const auto& mean_row = table.aggregates[0];
  CHECK(mean_row.stat == "mean");
  CHECK(mean_row.cells[frac_col].num == doctest::Approx(s.mean).epsilon(1e-12));
  // group-key cells are carried, seed stays blank
  CHECK(mean_row.cells[col(table, "d")].num == 5.0);
  CHECK(mean_row.cells[seed_col].is_text);
  CHECK(mean_row.cells[seed_col].text.empty());
}

TEST_CASE("render_csv: header, record tags, stat column") {
  auto table = run_experiment(phase_config(1));
  auto csv = render_csv(table);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  std::string header = "record,stat";
  for (const auto& c : table.columns) header += "," + c;
  CHECK(line == header);

  size_t trial_rows = 0, agg_rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("trial,,", 0) == 0) ++trial_rows;
    if (line.rfind("AGG,", 0) == 0) ++agg_rows;
  }
  CHECK(trial_rows == 12);
  CHECK(agg_rows == 36);
}

TEST_CASE("render_json: shape, seeds as strings, csv agreement") {
  auto table = run_experiment(phase_config(1));
  auto parsed = nlohmann::json::parse(render_json(table));
  CHECK(parsed["kind"] == "phase_portrait");
  CHECK(parsed["columns"].size() == table.columns.size());
  CHECK(parsed["trials"].size() == 12);
  CHECK(parsed["aggregates"].size() == 36);
  CHECK(parsed["config"]["seed"] == "42");
  CHECK(parsed["config"]["trials"] == 3);
  // out, format and threads are run details, not experiment identity
  CHECK(parsed["config"].contains("out") == false);
  CHECK(parsed["config"].contains("format") == false);
  CHECK(parsed["config"].contains("threads") == false);

  for (const auto& row : parsed["trials"]) CHECK(row["seed"].is_string());

  // the same cell through both renderers: row 0, largest_frac
  const size_t frac_col = col(table, "largest_frac");
  const double json_val = parsed["trials"][0]["largest_frac"].get<double>();
  CHECK(json_val == table.trials[0][frac_col].num);
  auto csv = render_csv(table);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);  // first trial row
  std::istringstream fields(line);
  std::string field;
  for (size_t i = 0; i < 2 + frac_col + 1; ++i) std::getline(fields, field, ',');
  CHECK(std::stod(field) == json_val);
}

TEST_CASE("write_report writes the requested formats") {
  auto table = run_experiment(parse_config(
      R"({"kind":"phase_portrait","d":4,"epsilon":1.0,"trials":2})"));
  const std::string base = "/tmp/cubelab_harness_test_out";
  auto both = write_report(table, base, "both");
  REQUIRE(both.size() == 2);
  CHECK(slurp(base + ".csv") == render_csv(table));
  CHECK(slurp(base + ".json") == render_json(table));
  auto csv_only = write_report(table, base, "csv");
  CHECK(csv_only == std::vector<std::string>{base + ".csv"});
  CHECK_THROWS(write_report(table, "/nonexistent_dir_zzz/x", "json"));
  std::remove((base + ".csv").c_str());
  std::remove((base + ".json").c_str());
}

TEST_CASE("shipped schema file matches the embedded copy") {
  const std::string shipped =
      slurp(std::string(CUBELAB_SOURCE_DIR) + "/schemas/experiment_result.schema.json");
  CHECK(shipped == result_schema_json());
}

TEST_CASE("every experiment kind runs end to end at toy size") {
  const char* configs[] = {
      R"({"kind":"phase_portrait","d":4,"epsilon":1.0,"trials":2})",
      R"({"kind":"expansion","d":4,"epsilon":1.0,"trials":2,"params":{"alpha":0.1}})",
      R"({"kind":"cycles","d":4,"p":0.5,"trials":2,"params":{"restarts":3,"census_max_length":4}})",
      R"({"kind":"minors","d":4,"epsilon":1.0,"trials":2})",
      R"({"kind":"genus","d":4,"epsilon":1.0,"trials":2})",
      R"({"kind":"iso_verify","d":4,"epsilon":1.0,"trials":2,"params":{"set_size":4}})",
      R"({"kind":"sprinkle_check","d":4,"p":0.4,"trials":2})",
  };
  for (const char* text : configs) {
    CAPTURE(text);
    auto table = run_experiment(parse_config(text));
    CHECK(table.trials.size() == 2);
    CHECK(table.aggregates.size() == 9);
    CHECK_FALSE(render_csv(table).empty());
    auto parsed = nlohmann::json::parse(render_json(table));
    CHECK(parsed["trials"].size() == 2);
  }
}
