#include "entrolab/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace entrolab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json series_json(const SeriesEntry& e) {
    ordered_json s;
    s["label"] = e.label;
    s["method"] = e.series.method;
    s["fitted_rate"] = e.series.fitted_rate;
    s["residual"] = e.series.residual;
    s["window"] = {e.series.window_lo, e.series.window_hi};
    s["exact"] = e.series.exact;
    if (e.escaped > 0) s["escaped"] = e.escaped;
    if (!e.invariant || e.invariance_defect > 0.0) {
        s["invariance_defect"] = e.invariance_defect;
        s["invariant"] = e.invariant;
    }
    ordered_json entries = ordered_json::array();
    for (const auto& [n, v] : e.series.entries) entries.push_back({n, v});
    s["entries"] = std::move(entries);
    if (!e.counts.empty()) s["counts"] = e.counts;
    return s;
}

ordered_json report_json(const EntropyReport& r) {
    ordered_json j;
    j["estimator"] = r.estimator;
    j["system"] = r.system;
    j["instrument"] = r.instrument;
    j["bound"] = r.bound;
    j["all_exact"] = r.all_exact;
    j["headline"] = r.headline;
    ordered_json grid = ordered_json::array();
    for (const SeriesEntry& e : r.grid) grid.push_back(series_json(e));
    j["grid"] = std::move(grid);
    return j;
}

} // namespace

std::string report_to_json(const EntropyReport& r) { return report_json(r).dump(2) + "\n"; }

std::string variational_to_json(const VariationalAuditReport& r) {
    ordered_json j;
    j["chain_ok"] = r.chain_ok;
    j["ks_le_top"] = r.ks_le_top;
    j["tol_chain"] = r.tol_chain;
    j["has_compactified"] = r.has_compactified;
    if (r.has_compactified) j["compactified_attains_min"] = r.compactified_attains_min;
    j["ks"] = report_json(r.ks);
    j["top"] = report_json(r.top);
    ordered_json pm = ordered_json::array();
    for (const auto& m : r.per_metric) {
        ordered_json e;
        e["metric"] = m.name;
        e["top_le_bowen"] = m.top_le_bowen;
        e["bowen_le_d"] = m.bowen_le_d;
        e["bowen"] = report_json(m.bowen);
        e["d_whole"] = report_json(m.d_whole);
        pm.push_back(std::move(e));
    }
    j["per_metric"] = std::move(pm);
    return j.dump(2) + "\n";
}

std::string report_to_csv(const EntropyReport& r) {
    std::string out = "series,n,count,log_count,h_n\n";
    for (const SeriesEntry& e : r.grid) {
        for (size_t i = 0; i < e.series.entries.size(); ++i) {
            const auto& [n, v] = e.series.entries[i];
            out += '"' + e.label + "\"," + std::to_string(n) + ',';
            if (i < e.counts.size()) out += std::to_string(e.counts[i]);
            out += ',' + csv_num(v) + ',' + csv_num(n > 0 ? v / n : 0.0) + '\n';
        }
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const std::filesystem::path tmp = p.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ComputeError("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), std::streamsize(content.size()));
        f.flush();
        if (!f) throw ComputeError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

} // namespace entrolab
