// gausscorr: sweep the two-mode thermal-bath model and write correlation
// measures as CSV/TSV.
//
// Exit status: 0 success (possibly with warnings), 1 I/O failure,
// 2 command-line or config error.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gausscorr/multiprecision.hpp"
#include "gausscorr/report.hpp"
#include "gausscorr/run_config.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

gausscorr::SweepResult execute(const gausscorr::RunConfig& config) {
    if (config.scalar == gausscorr::ScalarKind::Float50) {
        return gausscorr::run_sweep<gausscorr::HighPrecision>(config.sweep, config.threads);
    }
    return gausscorr::run_sweep<double>(config.sweep, config.threads);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation dynamics of two bosonic modes in a thermal bath"};
    std::string config_path;
    std::string recipe;
    std::string out_path;
    std::string format;
    std::string scalar;
    std::optional<int> threads;
    bool summary = false;

    app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
    app.add_option("--recipe", recipe, "Preset: fig1, fig2, fig3, fig4 or custom");
    app.add_option("--out", out_path, "Output file (default: standard output)");
    app.add_option("--format", format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    app.add_option("--threads", threads, "Worker threads (GAUSSCORR_THREADS overrides)")->check(CLI::PositiveNumber);
    app.add_option("--scalar", scalar, "double or float50")->check(CLI::IsMember({"double", "float50"}));
    app.add_flag("--summary", summary, "Print death times, max discord and branch statistics to stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    gausscorr::RunConfig config = gausscorr::recipe_config("custom");
    try {
        if (!recipe.empty()) {
            config = gausscorr::recipe_config(recipe);
        }
        if (!config_path.empty()) {
            config = gausscorr::load_config(config_path, config);
        }
        if (!out_path.empty()) {
            config.output = out_path;
        }
        if (!format.empty()) {
            config.format = gausscorr::parse_format(format);
        }
        if (!scalar.empty()) {
            config.scalar = gausscorr::parse_scalar(scalar);
        }
        if (threads) {
            config.threads = static_cast<unsigned>(*threads);
        }
        if (const char* env = std::getenv("GAUSSCORR_THREADS"); env && *env) {
            char* end = nullptr;
            const long value = std::strtol(env, &end, 10);
            if (*end != '\0' || value < 1) {
                throw gausscorr::ConfigError("GAUSSCORR_THREADS must be a positive integer");
            }
            config.threads = static_cast<unsigned>(value);
        }
    } catch (const gausscorr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    gausscorr::SweepResult result = execute(config);
    const std::string table = gausscorr::render_table(result, config.format, config.precision);

    if (config.output.empty()) {
        std::cout << table;
        std::cout.flush();
        if (!std::cout) {
            std::cerr << "error: failed writing to standard output\n";
            return kExitIo;
        }
    } else {
        try {
            gausscorr::write_file_atomically(config.output, table);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitIo;
        }
    }

    if (summary) {
        std::cerr << "recipe: " << config.recipe << '\n' << gausscorr::report_summary(result);
    }
    const auto stats = gausscorr::table_stats(result);
    if (stats.failed + stats.unphysical > 0) {
        std::cerr << "warning: " << stats.failed << " point(s) failed, " << stats.unphysical
                  << " point(s) non-physical\n";
    }
    return 0;
}
