#include "gausscorr/run_config.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace gausscorr {

namespace {

using boost::property_tree::ptree;

std::vector<double> temperature_grid(double step, double max) {
    std::vector<double> out;
    const int count = static_cast<int>(max / step + 0.5);
    for (int i = 0; i <= count; ++i) {
        out.push_back(step * i);
    }
    return out;
}

RunConfig make_recipe(std::string name, double t_max, int points) {
    return RunConfig{std::move(name),
                     SweepSpec{SystemParams(1.0, 1.0, 2.0), temperature_grid(0.5, 5.0), {0.1},
                               SqueezedThermalSpec(3.0, 3.0, 1.0),
                               TimeGrid{0.0, t_max, points, Spacing::Linear}},
                     {},
                     OutputFormat::Csv,
                     12,
                     ScalarKind::Double,
                     1};
}

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

double parse_number(std::string_view raw, const std::string& key) {
    const std::string text = trim(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
    }
    return value;
}

int parse_int(std::string_view raw, const std::string& key) {
    const std::string text = trim(raw);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("'" + key + "': expected an integer, got '" + text + "'");
    }
    return value;
}

std::vector<double> parse_list(std::string_view raw, const std::string& key) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        const auto comma = raw.find(',', start);
        const auto piece = raw.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_number(piece, key));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

/// Drops a trailing "; comment" or "# comment" (marker preceded by whitespace).
std::string strip_comment(const std::string& value) {
    for (std::size_t i = 1; i < value.size(); ++i) {
        if ((value[i] == ';' || value[i] == '#') && (value[i - 1] == ' ' || value[i - 1] == '\t')) {
            return value.substr(0, i);
        }
    }
    return value;
}

Spacing parse_spacing(std::string_view text) {
    const std::string value = trim(text);
    if (value == "linear") {
        return Spacing::Linear;
    }
    if (value == "log") {
        return Spacing::Log;
    }
    throw ConfigError("spacing must be 'linear' or 'log', got '" + value + "'");
}

/// Reads the keys of one section, rejecting any not in `allowed`.
class Section {
public:
    Section(const ptree& tree, std::string name, std::set<std::string> allowed)
        : name_(std::move(name)) {
        const auto child = tree.get_child_optional(name_);
        if (!child) {
            return;
        }
        for (const auto& [key, value] : *child) {
            if (!allowed.contains(key)) {
                throw ConfigError("unknown key '" + key + "' in section [" + name_ + "]");
            }
            values_.emplace_back(key, strip_comment(value.data()));
        }
    }

    std::optional<std::string> get(std::string_view key) const {
        for (const auto& [k, v] : values_) {
            if (k == key) {
                return v;
            }
        }
        return std::nullopt;
    }

    std::string qualified(std::string_view key) const { return name_ + "." + std::string(key); }

private:
    std::string name_;
    std::vector<std::pair<std::string, std::string>> values_;
};

}  // namespace

const std::vector<std::string>& recipe_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "custom"};
    return names;
}

RunConfig recipe_config(std::string_view name) {
    if (name == "fig1") {
        return make_recipe("fig1", 30.0, 301);
    }
    if (name == "fig2" || name == "fig3" || name == "fig4") {
        return make_recipe(std::string(name), 100.0, 201);
    }
    if (name == "custom") {
        RunConfig config = make_recipe("custom", 0.0, 1);
        config.sweep.temperatures = {0.0};
        return config;
    }
    throw ConfigError("unknown recipe '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view text) {
    const std::string value = trim(text);
    if (value == "csv") {
        return OutputFormat::Csv;
    }
    if (value == "tsv") {
        return OutputFormat::Tsv;
    }
    throw ConfigError("format must be 'csv' or 'tsv', got '" + value + "'");
}

ScalarKind parse_scalar(std::string_view text) {
    const std::string value = trim(text);
    if (value == "double") {
        return ScalarKind::Double;
    }
    if (value == "float50") {
        return ScalarKind::Float50;
    }
    throw ConfigError("scalar must be 'double' or 'float50', got '" + value + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    static const std::set<std::string> sections{"system", "bath", "initial", "time", "output"};
    for (const auto& [key, value] : tree) {
        if (value.empty()) {
            if (key != "recipe") {
                throw ConfigError("unknown top-level key '" + key + "'");
            }
        } else if (!sections.contains(key)) {
            throw ConfigError("unknown section [" + key + "]");
        }
    }

    RunConfig config = std::move(base);
    if (const auto recipe = tree.get_optional<std::string>("recipe"); recipe && tree.get_child("recipe").empty()) {
        config = recipe_config(trim(strip_comment(*recipe)));
    }

    try {
        const Section system(tree, "system", {"mass", "omega1", "omega2"});
        const double mass = system.get("mass") ? parse_number(*system.get("mass"), system.qualified("mass"))
                                               : config.sweep.sys.mass();
        const double omega1 = system.get("omega1")
                                  ? parse_number(*system.get("omega1"), system.qualified("omega1"))
                                  : config.sweep.sys.omega1();
        const double omega2 = system.get("omega2")
                                  ? parse_number(*system.get("omega2"), system.qualified("omega2"))
                                  : config.sweep.sys.omega2();
        config.sweep.sys = SystemParams(mass, omega1, omega2);

        const Section bath(tree, "bath", {"temperatures", "lambdas"});
        if (const auto v = bath.get("temperatures")) {
            config.sweep.temperatures = parse_list(*v, bath.qualified("temperatures"));
        }
        if (const auto v = bath.get("lambdas")) {
            config.sweep.lambdas = parse_list(*v, bath.qualified("lambdas"));
        }

        const Section initial(tree, "initial", {"r", "n1", "n2"});
        const auto& spec = config.sweep.initial;
        config.sweep.initial = SqueezedThermalSpec(
            initial.get("r") ? parse_number(*initial.get("r"), initial.qualified("r")) : spec.r(),
            initial.get("n1") ? parse_number(*initial.get("n1"), initial.qualified("n1")) : spec.n1(),
            initial.get("n2") ? parse_number(*initial.get("n2"), initial.qualified("n2")) : spec.n2());

        const Section time(tree, "time", {"t_min", "t_max", "points", "spacing", "log_floor"});
        TimeGrid& grid = config.sweep.time;
        if (const auto v = time.get("t_min")) {
            grid.t_min = parse_number(*v, time.qualified("t_min"));
        }
        if (const auto v = time.get("t_max")) {
            grid.t_max = parse_number(*v, time.qualified("t_max"));
        }
        if (const auto v = time.get("points")) {
            grid.n_points = parse_int(*v, time.qualified("points"));
        }
        if (const auto v = time.get("spacing")) {
            grid.spacing = parse_spacing(*v);
        }
        if (const auto v = time.get("log_floor")) {
            grid.log_floor = parse_number(*v, time.qualified("log_floor"));
        }

        const Section output(tree, "output", {"path", "format", "precision", "scalar", "threads"});
        if (const auto v = output.get("path")) {
            config.output = trim(*v);
        }
        if (const auto v = output.get("format")) {
            config.format = parse_format(*v);
        }
        if (const auto v = output.get("precision")) {
            config.precision = parse_int(*v, output.qualified("precision"));
            if (config.precision < 1 || config.precision > 17) {
                throw ConfigError("output.precision must lie in [1, 17]");
            }
        }
        if (const auto v = output.get("scalar")) {
            config.scalar = parse_scalar(*v);
        }
        if (const auto v = output.get("threads")) {
            const int threads = parse_int(*v, output.qualified("threads"));
            if (threads < 1) {
                throw ConfigError("output.threads must be >= 1");
            }
            config.threads = static_cast<unsigned>(threads);
        }

        config.sweep.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid parameter: ") + e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    return parse_config(in, std::move(base));
}

}  // namespace gausscorr
