// Tabular output and run summaries for sweep results.
#ifndef GAUSSCORR_REPORT_HPP
#define GAUSSCORR_REPORT_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "gausscorr/analysis.hpp"
#include "gausscorr/run_config.hpp"

namespace gausscorr {

/// Column names, in order.
inline constexpr std::string_view kCsvHeader =
    "t,T,lambda,E_N,discord,classical,mutual_info,nu_tilde_minus_hat,physical,epsilon_branch";

/// printf %.{digits}g with -0 folded to 0; non-finite values print as "nan".
std::string format_number(double value, int digits);

/// Renders every row. LF line endings, header first. Rows whose measures
/// failed carry "nan" numeric fields, physical = 0 and epsilon_branch = 0.
std::string render_table(const SweepResult& result, OutputFormat format, int digits);

struct TableStats {
    std::size_t failed = 0;
    std::size_t unphysical = 0;
};
TableStats table_stats(const SweepResult& result);

/// Writes `contents` to a sibling temporary file and renames it over `path`;
/// on failure nothing is left at `path`. Throws std::runtime_error.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

/// Death time per (T, lambda), largest discord, epsilon-branch statistics and
/// failure counts.
std::string report_summary(const SweepResult& result);

}  // namespace gausscorr

#endif  // GAUSSCORR_REPORT_HPP
