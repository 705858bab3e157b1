#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slrsm/report.hpp"

namespace fs = std::filesystem;

namespace {

int run_command(const std::string& config_path, bool write_files, bool print_table) {
    const slrsm::RunConfig cfg = slrsm::load_config(config_path);
    slrsm::RunReport report = slrsm::run_pipeline(cfg);

    if (!report.warning.empty()) std::cerr << "warning: " << report.warning << "\n";
    std::cerr << "sample table: " << (report.cache_hit ? "cache hit" : "built") << " ("
              << slrsm::effective_cache_dir(cfg) << ")\n";

    if (write_files) {
        slrsm::write_report_files(report, cfg.output_dir);
        std::cout << "wrote " << report.roots.size() << " eigenvalue(s) to " << cfg.output_dir
                  << "/\n";
    }
    if (print_table || !write_files) std::cout << slrsm::format_table(report);
    return 0;
}

int oracle_command(const std::string& config_path) {
    const slrsm::RunConfig cfg = slrsm::load_config(config_path);
    const slrsm::oracle::OracleResult result = slrsm::run_oracle_only(cfg);
    std::printf("%-6s %-20s %-20s\n", "Index", "mu", "eigenvalue");
    for (std::size_t i = 0; i < result.zeros.size(); ++i)
        std::printf("%-6zu %-20.12g %-20.12g\n", i + 1, result.zeros[i],
                    result.zeros[i] * result.zeros[i]);
    return 0;
}

int cache_clear_command(const std::string& dir_option) {
    std::string dir = dir_option;
    if (dir.empty()) {
        if (const char* env = std::getenv("SLRSM_CACHE_DIR"); env && *env)
            dir = env;
        else
            dir = ".slrsm-cache";
    }
    if (!fs::exists(dir)) {
        std::cout << "cache directory " << dir << " does not exist; nothing to clear\n";
        return 0;
    }
    std::size_t removed = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            fs::remove(entry.path());
            ++removed;
        }
    }
    std::cout << "removed " << removed << " cached table(s) from " << dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalues of Sturm-Liouville problems with an interior "
                 "transmission condition, via regularized sampling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string cache_dir_option;

    CLI::App* run = app.add_subcommand("run", "run the full pipeline and write report files");
    run->add_option("config", config_path, "path to the config file")->required();

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "direct-integration reference eigenvalues only");
    oracle_cmd->add_option("config", config_path, "path to the config file")->required();

    CLI::App* table =
        app.add_subcommand("table", "print the oracle/RSM comparison table to stdout");
    table->add_option("config", config_path, "path to the config file")->required();

    CLI::App* cache = app.add_subcommand("cache", "cache maintenance");
    CLI::App* clear = cache->add_subcommand("clear", "remove cached sample tables");
    clear->add_option("--dir", cache_dir_option,
                      "cache directory (default: $SLRSM_CACHE_DIR or .slrsm-cache)");
    cache->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_path, true, false);
        if (oracle_cmd->parsed()) return oracle_command(config_path);
        if (table->parsed()) return run_command(config_path, false, true);
        if (cache->parsed() && clear->parsed()) return cache_clear_command(cache_dir_option);
    } catch (const slrsm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
