// run_config.hpp: everything one CLI invocation needs, with its JSON form
#pragma once

#include "jcqed/core_model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace jcqed::cli {

inline constexpr int config_schema = 1;

struct Range {
    double start{0.0};
    double stop{0.0};
    double step{0.0};

    std::vector<double> grid() const;
    bool operator==(const Range&) const = default;
};

// "start:stop:step", or a single number for a one-point range.
Range parse_range(const std::string& text);
std::string format_range(const Range& r);

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string command;
    double Omega{1.0};
    std::optional<double> omega;  // cavity frequency; unset means ω = Ω
    double g{0.1};
    double kappa{0.2};
    std::optional<Range> kappa_range;
    std::optional<Range> omega_range;
    std::vector<int> n_list;
    std::optional<double> tau_max;
    std::optional<std::size_t> points;
    std::optional<double> k1;
    std::optional<double> k2;
    bool oracle{false};
    std::optional<Range> d1_range;
    std::optional<Range> d2_range;
    std::vector<double> gaps_fixed;
    std::vector<double> k_list;
    OutputFormat format{OutputFormat::csv};
    std::string output;  // empty writes to stdout

    SystemParams params() const { return {omega.value_or(Omega), Omega, g, kappa}; }
    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);

// Throws InvalidArgument on a wrong schema version or malformed fields.
RunConfig config_from_json(const nlohmann::json& j);

} // namespace jcqed::cli
