#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "entrolab/descriptor.hpp"
#include "entrolab/estimator.hpp"
#include "entrolab/report_io.hpp"
#include "entrolab/sample.hpp"

using namespace entrolab;

namespace {
const char* kMinimal = R"({
  "estimator": "d_entropy",
  "system": {"kind": "doubling"},
  "metrics": [{"kind": "circle_arc"}],
  "sample": {"kind": "grid_circle", "count": 64},
  "epsilons": [0.25, 0.125],
  "n_max": 6,
  "fit_window": [2, 5]
})";
} // namespace

TEST_CASE("a minimal experiment parses with defaults filled in") {
    const ExperimentConfig cfg = parse_experiment_config(kMinimal);
    CHECK(cfg.estimator == "d_entropy");
    CHECK(cfg.system.kind() == SystemKind::circle_affine);
    CHECK(cfg.system.multiplier() == 2);
    REQUIRE(cfg.metrics.size() == 1);
    CHECK(cfg.metrics[0].kind == MetricKind::circle_arc);
    REQUIRE(cfg.sample.has_value());
    CHECK(cfg.sample->size() == 64);
    CHECK(cfg.n_max == 6);
    REQUIRE(cfg.fit_window.has_value());
    CHECK(cfg.fit_window->first == 2);
    CHECK(cfg.seed == 0);
    CHECK(cfg.jobs == 1);
    CHECK(cfg.out_dir == "out");
}

TEST_CASE("the seed override wins over the config seed") {
    std::string with_seed(kMinimal);
    with_seed.insert(with_seed.rfind('}'), ", \"seed\": 7");
    CHECK(parse_experiment_config(with_seed).seed == 7);
    CHECK(parse_experiment_config(with_seed, 99).seed == 99);
}

TEST_CASE("unknown keys are rejected by name") {
    std::string bad(kMinimal);
    bad.insert(bad.rfind('}'), ", \"tolerance\": 0.1");
    CHECK_THROWS_WITH_AS(parse_experiment_config(bad), doctest::Contains("tolerance"), ConfigError);
}

TEST_CASE("missing required keys are named") {
    CHECK_THROWS_WITH_AS(parse_experiment_config(R"({"estimator": "d_entropy"})"),
                         doctest::Contains("system"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("not json at all"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[1, 2]"), ConfigError);
}

TEST_CASE("field validation happens at parse time") {
    std::string bad(kMinimal);
    bad.replace(bad.find("\"n_max\": 6"), 10, "\"n_max\": 2");
    CHECK_THROWS_AS(parse_experiment_config(bad), ConfigError);

    std::string window(kMinimal);
    window.replace(window.find("[2, 5]"), 6, "[2, 9]");
    CHECK_THROWS_WITH_AS(parse_experiment_config(window), doctest::Contains("fit_window"),
                         ConfigError);

    std::string lam(R"({
      "estimator": "d_entropy",
      "system": {"kind": "sft", "adjacency": [[1, 1], [1, 0]]},
      "metrics": [{"kind": "symbolic", "lambda": 1.5}],
      "sample": {"kind": "words", "length": 6},
      "epsilons": [0.5],
      "n_max": 4
    })");
    CHECK_THROWS_WITH_AS(parse_experiment_config(lam), doctest::Contains("lambda"), ConfigError);
}

TEST_CASE("system construction failures surface as config errors") {
    const char* bad_adj = R"({
      "estimator": "d_entropy",
      "system": {"kind": "sft", "adjacency": [[1, 0], [0, 0]]},
      "metrics": [{"kind": "symbolic"}],
      "sample": {"kind": "words", "length": 6},
      "epsilons": [0.5],
      "n_max": 4
    })";
    CHECK_THROWS_AS(parse_experiment_config(bad_adj), ConfigError);
}

TEST_CASE("word samples require a shift system") {
    const char* mixed = R"({
      "estimator": "d_entropy",
      "system": {"kind": "doubling"},
      "metrics": [{"kind": "circle_arc"}],
      "sample": {"kind": "words", "length": 6},
      "epsilons": [0.5],
      "n_max": 4
    })";
    CHECK_THROWS_AS(parse_experiment_config(mixed), ConfigError);
}

TEST_CASE("union samples concatenate their parts in order") {
    const char* two_part = R"({
      "estimator": "d_entropy",
      "system": {"kind": "linear", "matrix": [[2.0]]},
      "metrics": [{"kind": "compactified"}],
      "sample": {"kind": "union", "parts": [
        {"kind": "grid_box", "box": [[0.0, 1.0]], "per_dim": 8},
        {"kind": "stereographic", "count": 4, "scale": 2.0}
      ]},
      "epsilons": [0.5],
      "n_max": 4
    })";
    const ExperimentConfig cfg = parse_experiment_config(two_part);
    REQUIRE(cfg.sample.has_value());
    CHECK(cfg.sample->size() == 12);
    CHECK(cfg.sample->points[0].kind() == SpaceKind::euclidean);
}

TEST_CASE("reports serialize deterministically") {
    const EntropyReport rep = d_entropy_estimate(DynamicalSystem::circle_affine(2, 0.0),
                                                 Metric::circle_arc(), grid_sample_circle(128),
                                                 {0.25}, 6, std::pair<int, int>{2, 5});
    const std::string a = report_to_json(rep);
    const std::string b = report_to_json(rep);
    CHECK(a == b);
    CHECK(a.find("\"estimator\": \"d_entropy\"") != std::string::npos);
    CHECK(a.find("\"headline\"") != std::string::npos);
    CHECK(a.find("\"counts\"") != std::string::npos);

    const std::string csv = report_to_csv(rep);
    CHECK(csv.rfind("series,n,count,log_count,h_n", 0) == 0);
    // one row per level plus the header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("atomic writes land the full content") {
    const std::string dir = "tmp_report_io_test";
    write_file_atomic(dir + "/nested/report.json", "{\"ok\": true}\n");
    std::ifstream in(dir + "/nested/report.json");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{\"ok\": true}\n");
    std::filesystem::remove_all(dir);
}
