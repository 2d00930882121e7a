// Run configuration for the command-line front end: named figure recipes and
// a flat INI-style config file.
#ifndef GAUSSCORR_RUN_CONFIG_HPP
#define GAUSSCORR_RUN_CONFIG_HPP

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gausscorr/analysis.hpp"

namespace gausscorr {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Tsv };
enum class ScalarKind { Double, Float50 };

struct RunConfig {
    std::string recipe = "custom";
    SweepSpec sweep;
    /// Empty means standard output.
    std::filesystem::path output;
    OutputFormat format = OutputFormat::Csv;
    /// Significant digits of every numeric column.
    int precision = 12;
    ScalarKind scalar = ScalarKind::Double;
    unsigned threads = 1;
};

/// Names accepted by recipe_config.
const std::vector<std::string>& recipe_names();

/// Preset for fig1..fig4 (r = 3, n1 = 3, n2 = 1, lambda = 0.1, w1 = 1, w2 = 2,
/// m = 1) or "custom" (same physics, single point at t = 0, T = 0).
RunConfig recipe_config(std::string_view name);

/// Applies an INI document on top of `base`. Recognised layout:
///
///   recipe = fig1                 ; optional, replaces base with the preset
///   [system]  mass, omega1, omega2
///   [bath]    temperatures = 0, 0.5, 1   lambdas = 0.1
///   [initial] r, n1, n2
///   [time]    t_min, t_max, points, spacing = linear|log, log_floor
///   [output]  path, format = csv|tsv, precision, scalar = double|float50, threads
///
/// Unknown sections or keys, malformed numbers and invalid parameter values
/// raise ConfigError.
RunConfig parse_config(std::istream& in, RunConfig base = recipe_config("custom"));
RunConfig load_config(const std::filesystem::path& path, RunConfig base = recipe_config("custom"));

OutputFormat parse_format(std::string_view text);
ScalarKind parse_scalar(std::string_view text);

}  // namespace gausscorr

#endif  // GAUSSCORR_RUN_CONFIG_HPP
