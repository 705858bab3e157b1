#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slrsm/config.hpp"
#include "slrsm/eigen.hpp"
#include "slrsm/oracle.hpp"
#include "slrsm/roots.hpp"

namespace slrsm {

struct PhaseTimings {
    double parse_ms = 0.0;
    double sampling_ms = 0.0;
    double scan_ms = 0.0;
    double estimate_ms = 0.0;
    double oracle_ms = 0.0;
    double eigen_ms = 0.0;
    double gram_ms = 0.0;
    double write_ms = 0.0;
};

/// One comparison row: abs_err = |oracle_mu - rsm_mu|,
/// rel_err = abs_err / oracle_mu.
struct TableRow {
    int index = 0;
    double oracle_mu = 0.0;
    double rsm_mu = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
};

struct RunReport {
    RunConfig config;
    SamplingConfig sampling;
    double mu_max = 0.0;
    std::vector<RootResult> roots;
    std::optional<oracle::OracleResult> oracle;
    std::vector<TableRow> table;
    std::vector<Eigenpair> pairs;
    std::vector<std::vector<double>> gram;
    double c4 = 0.0; ///< fitted bound constant feeding the error estimates
    ScanDiagnostics diagnostics;
    PhaseTimings timings;
    bool cache_hit = false;
    std::string warning;
};

/// Full pipeline: sample table (via cache) -> root scan -> error estimates
/// -> optional oracle comparison -> eigenfunctions -> Gram matrix.
/// Does not write the output files; see write_report_files.
RunReport run_pipeline(const RunConfig& cfg);

/// Oracle comparison only (no sampling machinery).
oracle::OracleResult run_oracle_only(const RunConfig& cfg);

/// report.json content. Timings are the only non-deterministic part.
nlohmann::json report_to_json(const RunReport& report);

/// report.json, eigenvalues.csv, eigenfunction_<k>.csv, gram.csv under
/// output_dir. Files are written to a temp name and renamed into place.
/// Updates report.timings.write_ms.
void write_report_files(RunReport& report, const std::string& output_dir);

/// Fixed-width comparison table (index, oracle, rsm, absolute and relative
/// error), 12 significant digits.
std::string format_table(const RunReport& report);

} // namespace slrsm
