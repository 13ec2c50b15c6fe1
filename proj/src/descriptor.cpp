#include "entrolab/descriptor.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace entrolab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

const json& member(const json& o, const std::string& path, const char* key) {
    auto it = o.find(key);
    if (it == o.end()) fail(path, std::string("missing required key \"") + key + "\"");
    return *it;
}

// Strict-schema guard: every present key must be in the allowed list.
void expect_keys(const json& o, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!o.is_object()) fail(path, "expected an object");
    for (const auto& item : o.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                ok = true;
                break;
            }
        if (!ok) fail(path, "unknown key \"" + item.key() + "\"");
    }
}

std::string get_string(const json& o, const std::string& path, const char* key) {
    const json& v = member(o, path, key);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
}

double get_number(const json& o, const std::string& path, const char* key) {
    return get_number(member(o, path, key), path + "/" + key);
}

long long get_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
}

long long get_integer(const json& o, const std::string& path, const char* key) {
    return get_integer(member(o, path, key), path + "/" + key);
}

std::string num_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::vector<std::pair<double, double>> parse_box(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of [lo, hi] pairs");
    std::vector<std::pair<double, double>> box;
    for (size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const json& side = v[i];
        if (!side.is_array() || side.size() != 2) fail(p, "expected a [lo, hi] pair");
        const double lo = get_number(side[0], p + "/0");
        const double hi = get_number(side[1], p + "/1");
        if (!(lo <= hi)) fail(p, "expected lo <= hi");
        box.emplace_back(lo, hi);
    }
    return box;
}

std::string box_label(const std::vector<std::pair<double, double>>& box) {
    std::string s = "[";
    for (size_t i = 0; i < box.size(); ++i) {
        if (i) s += "x";
        s += "[" + num_label(box[i].first) + "," + num_label(box[i].second) + "]";
    }
    return s + "]";
}

std::vector<std::vector<double>> parse_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty matrix (array of rows)");
    std::vector<std::vector<double>> m;
    for (size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        if (!v[i].is_array() || v[i].empty()) fail(p, "expected a nonempty row");
        std::vector<double> row;
        for (size_t j = 0; j < v[i].size(); ++j) row.push_back(get_number(v[i][j], p + "/" + std::to_string(j)));
        m.push_back(std::move(row));
    }
    return m;
}

template <class T>
std::vector<std::vector<T>> parse_int_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty matrix (array of rows)");
    std::vector<std::vector<T>> m;
    for (size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        if (!v[i].is_array() || v[i].empty()) fail(p, "expected a nonempty row");
        std::vector<T> row;
        for (size_t j = 0; j < v[i].size(); ++j)
            row.push_back(static_cast<T>(get_integer(v[i][j], p + "/" + std::to_string(j))));
        m.push_back(std::move(row));
    }
    return m;
}

SpaceDescriptor parse_space(const json& v, const std::string& path) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "circle") return {SpaceKind::circle, 1, 0};
        if (s == "line") return {SpaceKind::euclidean, 1, 0};
        fail(path, "unknown space \"" + s + "\" (use \"circle\", \"line\" or an object)");
    }
    expect_keys(v, path, {"kind", "dim", "alphabet"});
    const std::string kind = get_string(v, path, "kind");
    if (kind == "circle") return {SpaceKind::circle, 1, 0};
    if (kind == "euclidean") {
        const int dim = int(get_integer(v, path, "dim"));
        if (dim < 1) fail(path + "/dim", "expected dim >= 1");
        return {SpaceKind::euclidean, dim, 0};
    }
    if (kind == "torus") {
        const int dim = int(get_integer(v, path, "dim"));
        if (dim < 1) fail(path + "/dim", "expected dim >= 1");
        return {SpaceKind::torus, dim, 0};
    }
    if (kind == "word") {
        const int a = int(get_integer(v, path, "alphabet"));
        if (a < 1) fail(path + "/alphabet", "expected alphabet >= 1");
        return {SpaceKind::word, 1, a};
    }
    fail(path + "/kind", "unknown space kind \"" + kind + "\"");
}

std::pair<DynamicalSystem, std::string> parse_system(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = get_string(v, path, "kind");
    try {
        if (kind == "identity") {
            expect_keys(v, path, {"kind", "space"});
            const SpaceDescriptor sp = parse_space(member(v, path, "space"), path + "/space");
            return {DynamicalSystem::identity(sp), "identity on " + sp.str()};
        }
        if (kind == "doubling") {
            expect_keys(v, path, {"kind"});
            return {DynamicalSystem::circle_affine(2, 0.0), "doubling map"};
        }
        if (kind == "circle_affine") {
            expect_keys(v, path, {"kind", "m", "alpha"});
            const long long m = get_integer(v, path, "m");
            const double alpha = v.contains("alpha") ? get_number(v, path, "alpha") : 0.0;
            return {DynamicalSystem::circle_affine(m, alpha),
                    "circle x -> " + std::to_string(m) + "x + " + num_label(alpha)};
        }
        if (kind == "rotation") {
            expect_keys(v, path, {"kind", "alpha"});
            const double alpha = get_number(v, path, "alpha");
            return {DynamicalSystem::circle_affine(1, alpha), "rotation by " + num_label(alpha)};
        }
        if (kind == "tent") {
            expect_keys(v, path, {"kind", "slope"});
            const double slope = get_number(v, path, "slope");
            return {DynamicalSystem::tent(slope), "tent slope " + num_label(slope)};
        }
        if (kind == "linear") {
            expect_keys(v, path, {"kind", "matrix"});
            auto m = parse_matrix(member(v, path, "matrix"), path + "/matrix");
            const std::string lbl = "linear " + std::to_string(m.size()) + "d";
            return {DynamicalSystem::linear(std::move(m)), lbl};
        }
        if (kind == "torus") {
            expect_keys(v, path, {"kind", "matrix"});
            auto m = parse_int_matrix<long long>(member(v, path, "matrix"), path + "/matrix");
            const std::string lbl = "torus endomorphism " + std::to_string(m.size()) + "d";
            return {DynamicalSystem::torus_endomorphism(std::move(m)), lbl};
        }
        if (kind == "sft") {
            expect_keys(v, path, {"kind", "adjacency"});
            auto a = parse_int_matrix<int>(member(v, path, "adjacency"), path + "/adjacency");
            const std::string lbl = "shift on " + std::to_string(a.size()) + " symbols";
            return {DynamicalSystem::shift_sft(std::move(a)), lbl};
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) { // constructor rejected the data
        fail(path, e.what());
    }
    fail(path + "/kind", "unknown system kind \"" + kind + "\"");
}

Metric parse_metric(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = get_string(v, path, "kind");
    if (kind == "symbolic") {
        expect_keys(v, path, {"kind", "lambda"});
        const double lambda = v.contains("lambda") ? get_number(v, path, "lambda") : 0.5;
        if (!(lambda > 0.0 && lambda < 1.0)) fail(path + "/lambda", "expected 0 < lambda < 1");
        return Metric::symbolic_cylinder(lambda);
    }
    expect_keys(v, path, {"kind"});
    if (kind == "euclidean") return Metric::euclidean();
    if (kind == "circle_arc") return Metric::circle_arc();
    if (kind == "circle_chord") return Metric::circle_chord();
    if (kind == "torus_max") return Metric::torus_max();
    if (kind == "compactified") return Metric::compactified();
    fail(path + "/kind", "unknown metric kind \"" + kind + "\"");
}

// Deterministic per-sample stream: the config seed is mixed with a running
// counter, so adding a sample never reshuffles the previous ones.
std::uint64_t mix_seed(std::uint64_t seed, int counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

WitnessSample parse_sample(const json& v, const std::string& path, const DynamicalSystem& sys,
                           std::uint64_t seed, int& rand_counter) {
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = get_string(v, path, "kind");
    std::optional<std::string> label;
    if (v.contains("label")) label = get_string(v, path, "label");
    WitnessSample s;
    try {
        if (kind == "grid_circle") {
            expect_keys(v, path, {"kind", "count", "label"});
            s = grid_sample_circle(int(get_integer(v, path, "count")));
        } else if (kind == "grid_box") {
            expect_keys(v, path, {"kind", "box", "per_dim", "label"});
            s = grid_sample_box(parse_box(member(v, path, "box"), path + "/box"),
                                int(get_integer(v, path, "per_dim")));
        } else if (kind == "grid_torus") {
            expect_keys(v, path, {"kind", "dim", "per_dim", "label"});
            s = grid_sample_torus(int(get_integer(v, path, "dim")),
                                  int(get_integer(v, path, "per_dim")));
        } else if (kind == "stereographic") {
            expect_keys(v, path, {"kind", "count", "scale", "label"});
            const double scale = v.contains("scale") ? get_number(v, path, "scale") : 1.0;
            s = stereographic_sample_line(int(get_integer(v, path, "count")), scale);
        } else if (kind == "random_box") {
            expect_keys(v, path, {"kind", "box", "count", "label"});
            s = random_sample_box(parse_box(member(v, path, "box"), path + "/box"),
                                  int(get_integer(v, path, "count")),
                                  mix_seed(seed, rand_counter++));
        } else if (kind == "random_circle") {
            expect_keys(v, path, {"kind", "count", "label"});
            s = random_sample_circle(int(get_integer(v, path, "count")),
                                     mix_seed(seed, rand_counter++));
        } else if (kind == "words") {
            expect_keys(v, path, {"kind", "length", "label"});
            s = sft_word_sample(sys, int(get_integer(v, path, "length")));
        } else if (kind == "union") {
            expect_keys(v, path, {"kind", "parts", "label"});
            const json& parts = member(v, path, "parts");
            if (!parts.is_array() || parts.empty()) fail(path + "/parts", "expected a nonempty array");
            std::vector<WitnessSample> ps;
            for (size_t i = 0; i < parts.size(); ++i)
                ps.push_back(parse_sample(parts[i], path + "/parts/" + std::to_string(i), sys, seed,
                                          rand_counter));
            s = concat_samples(ps);
        } else {
            fail(path + "/kind", "unknown sample kind \"" + kind + "\"");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
    if (label) s.provenance = *label;
    return s;
}

std::pair<std::string, Cover> parse_cover(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = get_string(v, path, "kind");
    std::optional<std::string> label;
    if (v.contains("label")) label = get_string(v, path, "label");
    try {
        if (kind == "box") {
            expect_keys(v, path, {"kind", "compact", "delta", "label"});
            auto box = parse_box(member(v, path, "compact"), path + "/compact");
            const double delta = get_number(v, path, "delta");
            Cover c = build_admissible_cover_box(box, delta);
            return {label ? *label : "box " + box_label(box) + " delta=" + num_label(delta),
                    std::move(c)};
        }
        if (kind == "circle") {
            expect_keys(v, path, {"kind", "delta", "label"});
            const double delta = get_number(v, path, "delta");
            Cover c = build_admissible_cover_circle(delta);
            return {label ? *label : "circle delta=" + num_label(delta), std::move(c)};
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
    fail(path + "/kind", "unknown cover kind \"" + kind + "\"");
}

std::pair<std::string, Cover> parse_partition(const json& v, const std::string& path,
                                              const DynamicalSystem& sys) {
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = get_string(v, path, "kind");
    std::optional<std::string> label;
    if (v.contains("label")) label = get_string(v, path, "label");
    try {
        if (kind == "dyadic_circle") {
            expect_keys(v, path, {"kind", "depth", "label"});
            const int depth = int(get_integer(v, path, "depth"));
            return {label ? *label : "dyadic depth=" + std::to_string(depth),
                    dyadic_circle_partition(depth)};
        }
        if (kind == "box") {
            expect_keys(v, path, {"kind", "box", "per_dim", "label"});
            auto box = parse_box(member(v, path, "box"), path + "/box");
            const int per_dim = int(get_integer(v, path, "per_dim"));
            return {label ? *label : "box grid " + std::to_string(per_dim) + "^d",
                    box_partition(box, per_dim)};
        }
        if (kind == "box_with_tail") {
            expect_keys(v, path, {"kind", "box", "per_dim", "label"});
            auto box = parse_box(member(v, path, "box"), path + "/box");
            const int per_dim = int(get_integer(v, path, "per_dim"));
            Cover c = box_partition(box, per_dim);
            // one extra cell catches everything outside the closed box, so
            // escaping orbits keep a cell to land in
            ComplementOfCompactElem tail;
            tail.space = c.space;
            tail.box = box;
            c.elements.push_back(CoverElement{std::move(tail)});
            return {label ? *label : "box grid " + std::to_string(per_dim) + "^d + tail",
                    std::move(c)};
        }
        if (kind == "cylinder") {
            expect_keys(v, path, {"kind", "depth", "label"});
            const int depth = int(get_integer(v, path, "depth"));
            if (depth < 1) fail(path + "/depth", "expected depth >= 1");
            Cover c = cylinder_partition(sys);
            if (depth > 1) c = iterate_cover(c, sys, depth);
            return {label ? *label : "cylinders depth=" + std::to_string(depth), std::move(c)};
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
    fail(path + "/kind", "unknown partition kind \"" + kind + "\"");
}

FiniteMeasure parse_measure(const json& v, const std::string& path, const DynamicalSystem& sys,
                            std::uint64_t seed, int& rand_counter) {
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = get_string(v, path, "kind");
    try {
        if (kind == "uniform") {
            expect_keys(v, path, {"kind", "sample"});
            const WitnessSample s =
                parse_sample(member(v, path, "sample"), path + "/sample", sys, seed, rand_counter);
            return FiniteMeasure::uniform(s.points);
        }
        if (kind == "parry") {
            expect_keys(v, path, {"kind", "length"});
            return parry_word_measure(sys, int(get_integer(v, path, "length")));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
    fail(path + "/kind", "unknown measure kind \"" + kind + "\"");
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         std::optional<std::uint64_t> seed_override) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    const std::string root = "/";
    expect_keys(doc, root,
                {"estimator", "system", "metrics", "sample", "whole_sample", "compacts",
                 "epsilons", "n_max", "fit_window", "covers", "partitions", "measure", "seed",
                 "jobs", "out", "chain_tol", "flag_tol"});

    ExperimentConfig cfg;
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_integer() && !s.is_number_unsigned()) fail("/seed", "expected an integer");
        if (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0)
            fail("/seed", "expected a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (seed_override) cfg.seed = *seed_override;
    int rand_counter = 0;

    auto [sys, sys_label] = parse_system(member(doc, root, "system"), "/system");
    cfg.system = std::move(sys);
    cfg.system_label = std::move(sys_label);

    if (doc.contains("estimator")) {
        cfg.estimator = get_string(doc, root, "estimator");
        if (cfg.estimator != "d_entropy" && cfg.estimator != "bowen" &&
            cfg.estimator != "topological" && cfg.estimator != "ks" &&
            cfg.estimator != "variational")
            fail("/estimator", "unknown estimator \"" + cfg.estimator + "\"");
    }

    if (doc.contains("metrics")) {
        const json& ms = doc["metrics"];
        if (!ms.is_array() || ms.empty()) fail("/metrics", "expected a nonempty array");
        for (size_t i = 0; i < ms.size(); ++i)
            cfg.metrics.push_back(parse_metric(ms[i], "/metrics/" + std::to_string(i)));
    }

    if (doc.contains("sample"))
        cfg.sample = parse_sample(doc["sample"], "/sample", cfg.system, cfg.seed, rand_counter);
    if (doc.contains("whole_sample"))
        cfg.whole_sample =
            parse_sample(doc["whole_sample"], "/whole_sample", cfg.system, cfg.seed, rand_counter);

    if (doc.contains("compacts")) {
        const json& cs = doc["compacts"];
        if (!cs.is_array() || cs.empty()) fail("/compacts", "expected a nonempty array");
        for (size_t i = 0; i < cs.size(); ++i)
            cfg.compacts.push_back(
                parse_sample(cs[i], "/compacts/" + std::to_string(i), cfg.system, cfg.seed, rand_counter));
    }

    if (doc.contains("epsilons")) {
        const json& es = doc["epsilons"];
        if (!es.is_array() || es.empty()) fail("/epsilons", "expected a nonempty array");
        for (size_t i = 0; i < es.size(); ++i)
            cfg.epsilons.push_back(get_number(es[i], "/epsilons/" + std::to_string(i)));
    }

    if (doc.contains("n_max")) {
        cfg.n_max = int(get_integer(doc, root, "n_max"));
        if (cfg.n_max < 4) fail("/n_max", "expected n_max >= 4");
    }

    if (doc.contains("fit_window")) {
        const json& w = doc["fit_window"];
        if (!w.is_array() || w.size() != 2) fail("/fit_window", "expected [lo, hi]");
        const int lo = int(get_integer(w[0], "/fit_window/0"));
        const int hi = int(get_integer(w[1], "/fit_window/1"));
        if (!(1 <= lo && lo < hi && hi <= cfg.n_max))
            fail("/fit_window", "expected 1 <= lo < hi <= n_max");
        cfg.fit_window = {lo, hi};
    }

    if (doc.contains("covers")) {
        const json& cs = doc["covers"];
        if (!cs.is_array() || cs.empty()) fail("/covers", "expected a nonempty array");
        for (size_t i = 0; i < cs.size(); ++i)
            cfg.covers.push_back(parse_cover(cs[i], "/covers/" + std::to_string(i)));
    }

    if (doc.contains("partitions")) {
        const json& ps = doc["partitions"];
        if (!ps.is_array() || ps.empty()) fail("/partitions", "expected a nonempty array");
        for (size_t i = 0; i < ps.size(); ++i)
            cfg.partitions.push_back(
                parse_partition(ps[i], "/partitions/" + std::to_string(i), cfg.system));
    }

    if (doc.contains("measure"))
        cfg.measure = parse_measure(doc["measure"], "/measure", cfg.system, cfg.seed, rand_counter);

    if (doc.contains("jobs")) {
        cfg.jobs = int(get_integer(doc, root, "jobs"));
        if (cfg.jobs < 1) fail("/jobs", "expected jobs >= 1");
    }
    if (doc.contains("out")) cfg.out_dir = get_string(doc, root, "out");
    if (doc.contains("chain_tol")) {
        cfg.chain_tol = get_number(doc, root, "chain_tol");
        if (!(cfg.chain_tol >= 0)) fail("/chain_tol", "expected a nonnegative number");
    }
    if (doc.contains("flag_tol")) {
        cfg.flag_tol = get_number(doc, root, "flag_tol");
        if (!(cfg.flag_tol >= 0)) fail("/flag_tol", "expected a nonnegative number");
    }
    return cfg;
}

} // namespace entrolab
