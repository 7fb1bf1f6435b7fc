#include "run_config.hpp"

#include "jcqed/errors.hpp"
#include "jcqed/numerics.hpp"
#include "table.hpp"

#include <cstdlib>

namespace jcqed::cli {

namespace {

double parse_number(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw InvalidArgument("not a number: '" + text + "'");
    return v;
}

template <typename T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& field) {
    if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

void read_range(const nlohmann::json& j, const char* key, std::optional<Range>& field) {
    if (j.contains(key) && !j.at(key).is_null()) field = parse_range(j.at(key).get<std::string>());
}

} // namespace

std::vector<double> Range::grid() const {
    if (step == 0.0 && start == stop) return {start};
    return range_grid(start, stop, step);
}

Range parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t from = 0;
    for (std::size_t colon; (colon = text.find(':', from)) != std::string::npos; from = colon + 1)
        parts.push_back(text.substr(from, colon - from));
    parts.push_back(text.substr(from));
    if (parts.size() == 1) {
        const double v = parse_number(parts[0]);
        return {v, v, 0.0};
    }
    if (parts.size() != 3) throw InvalidArgument("range must be start:stop:step, got '" + text + "'");
    Range r{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
    if (!(r.step > 0)) throw InvalidArgument("range step must be positive in '" + text + "'");
    if (!(r.stop >= r.start)) throw InvalidArgument("range stop precedes start in '" + text + "'");
    return r;
}

std::string format_range(const Range& r) {
    if (r.step == 0.0 && r.start == r.stop) return format_number(r.start);
    return format_number(r.start) + ":" + format_number(r.stop) + ":" + format_number(r.step);
}

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["schema"] = config_schema;
    j["command"] = cfg.command;
    j["Omega"] = cfg.Omega;
    if (cfg.omega) j["omega"] = *cfg.omega;
    j["g"] = cfg.g;
    j["kappa"] = cfg.kappa;
    if (cfg.kappa_range) j["kappa_range"] = format_range(*cfg.kappa_range);
    if (cfg.omega_range) j["omega_range"] = format_range(*cfg.omega_range);
    if (!cfg.n_list.empty()) j["n"] = cfg.n_list;
    if (cfg.tau_max) j["tau_max"] = *cfg.tau_max;
    if (cfg.points) j["points"] = *cfg.points;
    if (cfg.k1) j["k1"] = *cfg.k1;
    if (cfg.k2) j["k2"] = *cfg.k2;
    j["oracle"] = cfg.oracle;
    if (cfg.d1_range) j["d1_range"] = format_range(*cfg.d1_range);
    if (cfg.d2_range) j["d2_range"] = format_range(*cfg.d2_range);
    if (!cfg.gaps_fixed.empty()) j["gaps_fixed"] = cfg.gaps_fixed;
    if (!cfg.k_list.empty()) j["k"] = cfg.k_list;
    j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    if (!cfg.output.empty()) j["output"] = cfg.output;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    if (!j.contains("schema") || j.at("schema") != config_schema)
        throw InvalidArgument("config schema must be " + std::to_string(config_schema));
    try {
        RunConfig cfg;
        cfg.command = j.value("command", std::string{});
        cfg.Omega = j.value("Omega", cfg.Omega);
        read_optional(j, "omega", cfg.omega);
        cfg.g = j.value("g", cfg.g);
        cfg.kappa = j.value("kappa", cfg.kappa);
        read_range(j, "kappa_range", cfg.kappa_range);
        read_range(j, "omega_range", cfg.omega_range);
        cfg.n_list = j.value("n", std::vector<int>{});
        read_optional(j, "tau_max", cfg.tau_max);
        read_optional(j, "points", cfg.points);
        read_optional(j, "k1", cfg.k1);
        read_optional(j, "k2", cfg.k2);
        cfg.oracle = j.value("oracle", false);
        read_range(j, "d1_range", cfg.d1_range);
        read_range(j, "d2_range", cfg.d2_range);
        cfg.gaps_fixed = j.value("gaps_fixed", std::vector<double>{});
        cfg.k_list = j.value("k", std::vector<double>{});
        const std::string format = j.value("format", std::string{"csv"});
        if (format != "csv" && format != "json") throw InvalidArgument("format must be csv or json");
        cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        cfg.output = j.value("output", std::string{});
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed config: ") + e.what());
    }
}

} // namespace jcqed::cli
