#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrolab/cover.hpp"
#include "entrolab/measure.hpp"
#include "entrolab/metric.hpp"
#include "entrolab/sample.hpp"
#include "entrolab/system.hpp"

namespace entrolab {

// A fully materialized experiment: descriptors are resolved into systems,
// metrics, samples, covers, partitions and measures at parse time, so that a
// config that parses is a config that runs.
struct ExperimentConfig {
    std::string estimator; // d_entropy | bowen | topological | ks | variational
    DynamicalSystem system;
    std::string system_label;
    std::vector<Metric> metrics;
    std::optional<WitnessSample> sample;
    std::optional<WitnessSample> whole_sample; // variational d-entropy side
    std::vector<WitnessSample> compacts;
    std::vector<double> epsilons;
    int n_max = 8;
    std::optional<std::pair<int, int>> fit_window;
    std::vector<std::pair<std::string, Cover>> covers;
    std::vector<std::pair<std::string, Cover>> partitions;
    std::optional<FiniteMeasure> measure;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out_dir = "out";
    double chain_tol = 0.05;
    double flag_tol = 0.1;
};

// Parses a config document (strict: unknown keys are errors, every error
// message carries the JSON pointer of the offending field). The schema is
// documented in the README. seed_override replaces the config seed before
// any random sample is drawn (the CLI --seed flag).
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         std::optional<std::uint64_t> seed_override = std::nullopt);

} // namespace entrolab
