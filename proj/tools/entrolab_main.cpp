#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entrolab/descriptor.hpp"
#include "entrolab/estimator.hpp"
#include "entrolab/report_io.hpp"
#include "entrolab/verify.hpp"

namespace {

using namespace entrolab;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Flags {
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::optional<std::uint64_t> seed;
};

void require_field(bool present, const std::string& key, const std::string& estimator) {
    if (!present)
        throw ConfigError("/" + key + ": required for estimator \"" + estimator + "\"");
}

// Flag overrides get the same validation as their config-file counterparts.
void apply_flags(ExperimentConfig& cfg, const Flags& flags) {
    if (flags.out) cfg.out_dir = *flags.out;
    if (flags.jobs) {
        if (*flags.jobs < 1) throw ConfigError("--jobs: expected jobs >= 1");
        cfg.jobs = *flags.jobs;
    }
}

// Writes one report pair (JSON + CSV) immediately and prints its headline
// line, so a failure later in the run preserves what finished.
void emit(const ExperimentConfig& cfg, const std::string& stem, const EntropyReport& rep) {
    write_file_atomic(cfg.out_dir + "/" + stem + ".json", report_to_json(rep));
    write_file_atomic(cfg.out_dir + "/" + stem + ".csv", report_to_csv(rep));
    std::printf("%s %s headline=%.6f bound=%s%s\n", rep.estimator.c_str(), rep.instrument.c_str(),
                rep.headline, rep.bound.c_str(), rep.all_exact ? " exact" : "");
}

int cmd_estimate(const std::string& cfg_path, const Flags& flags) {
    ExperimentConfig cfg = parse_experiment_config(slurp(cfg_path), flags.seed);
    apply_flags(cfg, flags);
    if (cfg.estimator.empty()) throw ConfigError("missing required key \"estimator\"");
    const std::string& est = cfg.estimator;

    if (est == "d_entropy") {
        require_field(!cfg.metrics.empty(), "metrics", est);
        require_field(cfg.sample.has_value(), "sample", est);
        require_field(!cfg.epsilons.empty(), "epsilons", est);
        for (const Metric& m : cfg.metrics) {
            EntropyReport rep = d_entropy_estimate(cfg.system, m, *cfg.sample, cfg.epsilons,
                                                   cfg.n_max, cfg.fit_window, cfg.jobs);
            rep.system = cfg.system_label;
            emit(cfg, "d_entropy_" + metric_kind_name(m.kind), rep);
        }
        return 0;
    }
    if (est == "bowen") {
        require_field(!cfg.metrics.empty(), "metrics", est);
        require_field(!cfg.compacts.empty(), "compacts", est);
        require_field(!cfg.epsilons.empty(), "epsilons", est);
        for (const Metric& m : cfg.metrics) {
            EntropyReport rep = bowen_entropy_estimate(cfg.system, m, cfg.compacts, cfg.epsilons,
                                                       cfg.n_max, cfg.fit_window, cfg.jobs);
            rep.system = cfg.system_label;
            emit(cfg, "bowen_" + metric_kind_name(m.kind), rep);
        }
        return 0;
    }
    if (est == "topological") {
        require_field(!cfg.covers.empty(), "covers", est);
        require_field(cfg.sample.has_value(), "sample", est);
        EntropyReport rep = topological_entropy_estimate(cfg.system, cfg.covers, *cfg.sample,
                                                         cfg.n_max, cfg.fit_window);
        rep.system = cfg.system_label;
        emit(cfg, "topological", rep);
        return 0;
    }
    if (est == "ks") {
        require_field(!cfg.partitions.empty(), "partitions", est);
        require_field(cfg.measure.has_value(), "measure", est);
        EntropyReport rep =
            ks_entropy_estimate(cfg.system, *cfg.measure, cfg.partitions, cfg.n_max, cfg.fit_window);
        rep.system = cfg.system_label;
        emit(cfg, "ks", rep);
        return 0;
    }
    if (est == "variational") {
        require_field(!cfg.metrics.empty(), "metrics", est);
        require_field(cfg.sample.has_value(), "sample", est);
        require_field(!cfg.epsilons.empty(), "epsilons", est);
        require_field(!cfg.covers.empty(), "covers", est);
        require_field(!cfg.partitions.empty(), "partitions", est);
        require_field(cfg.measure.has_value(), "measure", est);
        require_field(!cfg.compacts.empty(), "compacts", est);
        const WitnessSample& whole = cfg.whole_sample ? *cfg.whole_sample : *cfg.sample;
        VariationalAuditReport audit = variational_audit(
            cfg.system, *cfg.measure, cfg.partitions, cfg.covers, *cfg.sample, cfg.metrics,
            cfg.compacts, whole, cfg.epsilons, cfg.n_max, cfg.fit_window, cfg.chain_tol,
            cfg.flag_tol);
        audit.ks.system = cfg.system_label;
        audit.top.system = cfg.system_label;
        for (auto& pm : audit.per_metric) {
            pm.bowen.system = cfg.system_label;
            pm.d_whole.system = cfg.system_label;
        }
        emit(cfg, "ks", audit.ks);
        emit(cfg, "topological", audit.top);
        for (const auto& pm : audit.per_metric) {
            emit(cfg, "bowen_" + pm.name, pm.bowen);
            emit(cfg, "d_entropy_" + pm.name, pm.d_whole);
        }
        write_file_atomic(cfg.out_dir + "/variational.json", variational_to_json(audit));
        std::printf("chain h_KS <= h_top <= h_B <= h_d: %s (tol %.3f)\n",
                    audit.chain_ok ? "holds" : "VIOLATED", audit.tol_chain);
        if (audit.has_compactified)
            std::printf("compactified attains minimum: %s\n",
                        audit.compactified_attains_min ? "yes" : "no");
        return audit.chain_ok ? 0 : 1;
    }
    throw ConfigError("unknown estimator \"" + est + "\"");
}

int cmd_verify(const std::string& suite, const Flags& flags) {
    const SuiteResult res = run_suite(suite, flags.seed.value_or(0));
    std::printf("suite %s: %d checks, %zu failures\n", res.name.c_str(), res.checks,
                res.failures.size());
    for (const std::string& f : res.failures) std::printf("  FAIL %s\n", f.c_str());
    return res.passed() ? 0 : 1;
}

int cmd_compare_metrics(const std::string& cfg_path, const Flags& flags) {
    ExperimentConfig cfg = parse_experiment_config(slurp(cfg_path), flags.seed);
    apply_flags(cfg, flags);
    if (cfg.metrics.size() < 2)
        throw ConfigError("/metrics: compare-metrics needs at least 2 metrics");
    require_field(cfg.sample.has_value(), "sample", "compare-metrics");
    require_field(!cfg.epsilons.empty(), "epsilons", "compare-metrics");

    struct Row {
        std::string metric, estimator;
        double headline;
    };
    std::vector<Row> rows;
    double min_d = 0.0;
    double comp_d = 0.0;
    bool have_comp = false, first = true;
    for (const Metric& m : cfg.metrics) {
        const EntropyReport rep = d_entropy_estimate(cfg.system, m, *cfg.sample, cfg.epsilons,
                                                     cfg.n_max, cfg.fit_window, cfg.jobs);
        rows.push_back({metric_kind_name(m.kind), "d_entropy", rep.headline});
        if (first || rep.headline < min_d) min_d = rep.headline;
        first = false;
        if (m.kind == MetricKind::compactified) {
            have_comp = true;
            comp_d = rep.headline;
        }
        if (!cfg.compacts.empty()) {
            const EntropyReport bw = bowen_entropy_estimate(cfg.system, m, cfg.compacts,
                                                            cfg.epsilons, cfg.n_max,
                                                            cfg.fit_window, cfg.jobs);
            rows.push_back({metric_kind_name(m.kind), "bowen", bw.headline});
        }
    }

    std::string csv = "metric,estimator,headline\n";
    for (const Row& r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", r.headline);
        csv += r.metric + "," + r.estimator + "," + buf + "\n";
        std::printf("%-14s %-10s %.6f\n", r.metric.c_str(), r.estimator.c_str(), r.headline);
    }
    write_file_atomic(cfg.out_dir + "/compare_metrics.csv", csv);
    if (have_comp)
        std::printf("compactified attains minimum: %s\n",
                    comp_d <= min_d + cfg.flag_tol ? "yes" : "no");
    else
        std::printf("compactified metric not in the family\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy estimation laboratory"};
    app.require_subcommand(1);

    std::string config_path, suite;
    std::string out_flag;
    int jobs_flag = 1;
    std::uint64_t seed_flag = 0;

    CLI::App* est = app.add_subcommand("estimate", "run the estimator described by a config file");
    est->add_option("config", config_path, "JSON config path")->required();
    est->add_option("--out", out_flag, "output directory (overrides the config)");
    est->add_option("--jobs", jobs_flag, "worker threads for grid jobs");
    est->add_option("--seed", seed_flag, "seed override for random samples");

    CLI::App* ver = app.add_subcommand("verify", "run a property suite");
    ver->add_option("suite", suite, "lattice | measures | sandwich | chain | variational")
        ->required();
    ver->add_option("--seed", seed_flag, "suite seed");

    CLI::App* cmp = app.add_subcommand("compare-metrics",
                                       "estimate one system under several metrics");
    cmp->add_option("config", config_path, "JSON config path")->required();
    cmp->add_option("--out", out_flag, "output directory (overrides the config)");
    cmp->add_option("--jobs", jobs_flag, "worker threads for grid jobs");
    cmp->add_option("--seed", seed_flag, "seed override for random samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is a configuration error
    }

    Flags flags;
    CLI::App* active = est->parsed() ? est : ver->parsed() ? ver : cmp;
    auto flag_given = [&](const char* name) {
        const CLI::Option* o = active->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    if (flag_given("--out")) flags.out = out_flag;
    if (flag_given("--jobs")) flags.jobs = jobs_flag;
    if (flag_given("--seed")) flags.seed = seed_flag;

    try {
        if (est->parsed()) return cmd_estimate(config_path, flags);
        if (ver->parsed()) return cmd_verify(suite, flags);
        return cmd_compare_metrics(config_path, flags);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
