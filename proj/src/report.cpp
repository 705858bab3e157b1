#include "slrsm/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace slrsm {

namespace fs = std::filesystem;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("report: cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error("report: write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

SampleTable load_or_build_table(const RunConfig& cfg, const SamplingConfig& scfg, bool& hit) {
    const std::string hash = problem_hash(cfg.problem, scfg, cfg.ivp);
    const fs::path dir = effective_cache_dir(cfg);
    const fs::path path = dir / (hash + ".json");

    hit = false;
    if (fs::exists(path)) {
        try {
            std::ifstream in(path);
            nlohmann::json doc = nlohmann::json::parse(in);
            SampleTable t = table_from_json(doc);
            if (t.problem_hash == hash) {
                hit = true;
                return t;
            }
        } catch (const std::exception&) {
            // stale or corrupt cache entry: rebuild below
        }
    }

    SampleTable t = build_sample_table(cfg.problem, scfg, cfg.ivp);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!ec) {
        try {
            write_atomic(path, to_json(t).dump());
        } catch (const std::exception&) {
            // cache write failure is not fatal
        }
    }
    return t;
}

nlohmann::json gram_to_json(const std::vector<std::vector<double>>& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : g) rows.push_back(row);
    return rows;
}

// Annotate failures with the pipeline phase they came from.
template <class Fn>
auto phase(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + " phase: " + e.what());
    }
}

} // namespace

oracle::OracleResult run_oracle_only(const RunConfig& cfg) {
    return oracle::find_zeros_direct(cfg.problem, cfg.resolved_mu_max(), cfg.scan_step, cfg.tol);
}

RunReport run_pipeline(const RunConfig& cfg) {
    RunReport report;
    report.config = cfg;

    Stopwatch parse_w;
    validate(cfg.problem);
    parse_potential(cfg.problem.q_source);
    report.sampling = cfg.sampling();
    report.mu_max = cfg.resolved_mu_max();
    if (cfg.problem.a == 1.0)
        report.warning = "a = 1 degenerates the jump to plain continuity";
    report.timings.parse_ms = parse_w.ms();

    Stopwatch sampling_w;
    const SampleTable table =
        phase("sampling", [&] { return load_or_build_table(cfg, report.sampling, report.cache_hit); });
    report.timings.sampling_ms = sampling_w.ms();

    Stopwatch scan_w;
    report.roots = phase("scan", [&] {
        return scan_and_refine(table, cfg.problem.a, report.mu_max, cfg.scan_step, cfg.tol,
                               &report.diagnostics);
    });
    report.timings.scan_ms = scan_w.ms();

    Stopwatch estimate_w;
    report.c4 = phase("estimate", [&] { return fit_c4(table, cfg.problem); });
    for (auto& root : report.roots) {
        try {
            root.error_estimate = error_estimate(table, cfg.problem.a, root, report.c4);
        } catch (const DerivativeTooSmall&) {
            root.error_estimate = std::numeric_limits<double>::quiet_NaN();
        }
    }
    report.timings.estimate_ms = estimate_w.ms();

    if (cfg.run_oracle) {
        Stopwatch oracle_w;
        report.oracle = phase("oracle", [&] { return run_oracle_only(cfg); });
        const std::size_t n = std::min(report.oracle->zeros.size(), report.roots.size());
        for (std::size_t i = 0; i < n; ++i) {
            TableRow row;
            row.index = static_cast<int>(i) + 1;
            row.oracle_mu = report.oracle->zeros[i];
            row.rsm_mu = report.roots[i].mu;
            row.abs_err = std::fabs(row.oracle_mu - row.rsm_mu);
            row.rel_err = row.oracle_mu != 0.0 ? row.abs_err / row.oracle_mu : row.abs_err;
            report.table.push_back(row);
        }
        report.timings.oracle_ms = oracle_w.ms();
    }

    Stopwatch eigen_w;
    phase("eigenfunction", [&] {
        report.pairs.reserve(report.roots.size());
        for (std::size_t i = 0; i < report.roots.size(); ++i)
            report.pairs.push_back(assemble_eigenfunction(cfg.problem, report.roots[i].mu,
                                                          cfg.grid_pts, cfg.ivp,
                                                          static_cast<int>(i) + 1));
        return 0;
    });
    report.timings.eigen_ms = eigen_w.ms();

    Stopwatch gram_w;
    report.gram = phase("gram", [&] { return gram_matrix(report.pairs); });
    report.timings.gram_ms = gram_w.ms();

    return report;
}

nlohmann::json report_to_json(const RunReport& r) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& root : r.roots) {
        nlohmann::json j{{"mu", root.mu},
                         {"eigenvalue", root.eigenvalue},
                         {"bracket", {root.bracket_lo, root.bracket_hi}},
                         {"residual", root.residual}};
        if (std::isfinite(root.error_estimate)) j["error_estimate"] = root.error_estimate;
        roots.push_back(std::move(j));
    }

    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"index", p.index},
                         {"mu", p.mu},
                         {"eigenvalue", p.eigenvalue},
                         {"alpha", p.alpha},
                         {"l2_norm", p.l2_norm}});

    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : r.table)
        table.push_back({{"index", row.index},
                         {"oracle_mu", row.oracle_mu},
                         {"rsm_mu", row.rsm_mu},
                         {"abs_err", row.abs_err},
                         {"rel_err", row.rel_err}});

    nlohmann::json doc{
        {"schema_version", 1},
        {"kind", "run_report"},
        {"problem",
         {{"q", r.config.problem.q_source},
          {"a", r.config.problem.a},
          {"d", r.config.problem.d},
          {"label", r.config.problem.label}}},
        {"config",
         {{"sampling",
           {{"N", r.sampling.N},
            {"m", r.sampling.m},
            {"sigma0", r.sampling.sigma0},
            {"theta", r.sampling.theta},
            {"sigma", r.sampling.sigma}}},
          {"ivp",
           {{"abs_tol", r.config.ivp.abs_tol},
            {"rel_tol", r.config.ivp.rel_tol},
            {"max_steps", r.config.ivp.max_steps}}},
          {"mu_max", r.mu_max},
          {"scan_step", r.config.scan_step},
          {"tol", r.config.tol},
          {"grid_pts", r.config.grid_pts},
          {"run_oracle", r.config.run_oracle}}},
        {"roots", std::move(roots)},
        {"eigenfunctions", std::move(pairs)},
        {"gram", gram_to_json(r.gram)},
        {"c4", r.c4},
        {"skipped_scan_points", r.diagnostics.skipped_points},
        {"timings_ms",
         {{"parse", r.timings.parse_ms},
          {"sampling", r.timings.sampling_ms},
          {"scan", r.timings.scan_ms},
          {"estimate", r.timings.estimate_ms},
          {"oracle", r.timings.oracle_ms},
          {"eigen", r.timings.eigen_ms},
          {"gram", r.timings.gram_ms},
          {"write", r.timings.write_ms}}},
    };
    if (!r.warning.empty()) doc["warning"] = r.warning;
    if (r.oracle) {
        doc["oracle"] = {{"zeros", r.oracle->zeros},
                         {"scan_step", r.oracle->scan_step},
                         {"tol", r.oracle->tol},
                         {"method", r.oracle->method == oracle::Method::direct_shooting
                                        ? "direct_shooting"
                                        : "closed_form_q0"}};
        doc["table"] = std::move(table);
    }
    return doc;
}

void write_report_files(RunReport& report, const std::string& output_dir) {
    Stopwatch write_w;

    const fs::path dir = output_dir;
    fs::create_directories(dir);

    std::string csv = "index,mu,eigenvalue,abs_err,rel_err,error_estimate\n";
    for (std::size_t i = 0; i < report.roots.size(); ++i) {
        const RootResult& root = report.roots[i];
        csv += std::to_string(i + 1) + "," + fmt12(root.mu) + "," + fmt12(root.eigenvalue) + ",";
        if (i < report.table.size())
            csv += fmt12(report.table[i].abs_err) + "," + fmt12(report.table[i].rel_err);
        else
            csv += ",";
        csv += ",";
        if (std::isfinite(root.error_estimate)) csv += fmt12(root.error_estimate);
        csv += "\n";
    }
    write_atomic(dir / "eigenvalues.csv", csv);

    for (const auto& pair : report.pairs) {
        const std::string stem = "eigenfunction_" + std::to_string(pair.index);
        std::string body = "x,y,yprime,side\n";
        for (const auto& s : pair.grid_left)
            body += fmt12(s.x) + "," + fmt12(s.u) + "," + fmt12(s.v) + ",L\n";
        for (const auto& s : pair.grid_right)
            body += fmt12(s.x) + "," + fmt12(s.u) + "," + fmt12(s.v) + ",R\n";
        write_atomic(dir / (stem + ".csv"), body);
        write_atomic(dir / (stem + ".json"), to_json(pair).dump() + "\n");
    }

    std::string gram;
    for (const auto& row : report.gram) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) gram += ",";
            gram += fmt12(row[j]);
        }
        gram += "\n";
    }
    write_atomic(dir / "gram.csv", gram);

    report.timings.write_ms = write_w.ms();
    write_atomic(dir / "report.json", report_to_json(report).dump(2) + "\n");
}

std::string format_table(const RunReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-20s %-20s %-16s %-16s\n", "Index", "Exact (oracle)",
                  "RSM", "Absolute Error", "Relative Error");
    out += line;
    for (const auto& row : report.table) {
        std::snprintf(line, sizeof line, "%-6d %-20.12g %-20.12g %-16.6g %-16.6g\n", row.index,
                      row.oracle_mu, row.rsm_mu, row.abs_err, row.rel_err);
        out += line;
    }
    if (report.table.empty()) {
        for (std::size_t i = 0; i < report.roots.size(); ++i) {
            std::snprintf(line, sizeof line, "%-6zu %-20s %-20.12g %-16s %-16s\n", i + 1, "-",
                          report.roots[i].mu, "-", "-");
            out += line;
        }
    }
    return out;
}

} // namespace slrsm
