#include "gausscorr/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace gausscorr {

std::string format_number(double value, int digits) {
    if (!std::isfinite(value)) {
        return "nan";
    }
    if (value == 0.0) {
        value = 0.0;
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return buffer;
}

std::string render_table(const SweepResult& result, OutputFormat format, int digits) {
    const char sep = format == OutputFormat::Csv ? ',' : '\t';
    std::string out;
    for (char c : kCsvHeader) {
        out += c == ',' ? sep : c;
    }
    out += '\n';

    const auto nan = std::nan("");
    for (const auto& row : result.rows) {
        const auto* r = row.report ? &*row.report : nullptr;
        const double fields[] = {row.t,
                                 row.temperature,
                                 row.lambda,
                                 r ? r->log_negativity : nan,
                                 r ? r->discord : nan,
                                 r ? r->classical_corr : nan,
                                 r ? r->mutual_info : nan,
                                 r ? r->nu_tilde_minus_hat : nan};
        for (double field : fields) {
            out += format_number(field, digits);
            out += sep;
        }
        out += r && r->physical ? '1' : '0';
        out += sep;
        out += r ? (r->epsilon_branch == EpsilonBranch::First ? '1' : '2') : '0';
        out += '\n';
    }
    return out;
}

TableStats table_stats(const SweepResult& result) {
    TableStats stats;
    for (const auto& row : result.rows) {
        if (!row.report) {
            ++stats.failed;
        } else if (!row.report->physical) {
            ++stats.unphysical;
        }
    }
    return stats;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw std::runtime_error("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

std::string report_summary(const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    std::ostringstream out;
    out << "points: " << result.rows.size() << " (scalar " << result.metadata.scalar << ", version "
        << result.metadata.code_version << ")\n";

    const auto sigma0 = squeezed_thermal_covariance<double>(spec.initial);
    const double initial_en = log_negativity(sigma0);
    if (initial_en == 0.0) {
        out << "no sudden death: initially separable\n";
    } else {
        out << "initial log-negativity: " << format_number(initial_en, 8) << " bits\n";
        out << "entanglement death times (scan to 50/lambda):\n";
        for (double temperature : spec.temperatures) {
            for (double lambda : spec.lambdas) {
                const BathParams bath(lambda, temperature);
                const auto death = sudden_death_time(sigma0, spec.sys, bath, 50.0 / lambda);
                out << "  T=" << format_number(temperature, 6) << " lambda=" << format_number(lambda, 6) << ": ";
                if (death.time) {
                    out << "t* = " << format_number(*death.time, 10);
                } else {
                    out << "no sudden death before t = " << format_number(50.0 / lambda, 6);
                }
                if (!death.revivals.empty()) {
                    out << " (" << death.revivals.size() << " revival interval(s), first at t = "
                        << format_number(death.revivals.front().first, 8) << ")";
                }
                out << '\n';
            }
        }
    }

    const SweepRow* best = nullptr;
    std::size_t evaluated = 0;
    std::size_t first_branch = 0;
    std::size_t ties = 0;
    for (const auto& row : result.rows) {
        if (!row.report) {
            continue;
        }
        ++evaluated;
        first_branch += row.report->epsilon_branch == EpsilonBranch::First;
        ties += row.report->epsilon_tie;
        if (!best || row.report->discord > best->report->discord) {
            best = &row;
        }
    }
    if (best) {
        out << "max discord: " << format_number(best->report->discord, 8) << " nats at t="
            << format_number(best->t, 8) << " T=" << format_number(best->temperature, 6)
            << " lambda=" << format_number(best->lambda, 6) << '\n';
        const double percent = 100.0 * static_cast<double>(first_branch) / static_cast<double>(evaluated);
        out << "first branch of epsilon used at " << format_number(percent, 4) << "% of points ("
            << first_branch << "/" << evaluated << ", " << ties << " within tie band)\n";
    }

    const auto stats = table_stats(result);
    out << "failed points: " << stats.failed << ", non-physical points: " << stats.unphysical << '\n';
    return out.str();
}

}  // namespace gausscorr
