#include "cli.hpp"

#include "jcqed/boundstate.hpp"
#include "jcqed/correlation.hpp"
#include "jcqed/errors.hpp"
#include "jcqed/nphoton.hpp"
#include "jcqed/numerics.hpp"
#include "parallel.hpp"
#include "table.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

namespace jcqed::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands{"spectrum", "ep", "boundstate", "g2", "nphoton", "sweep-tightness"};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json params_json(const SystemParams& p) {
    return {{"omega", p.omega}, {"Omega", p.Omega}, {"g", p.g}, {"kappa", p.kappa}};
}

double nan_if_missing(const std::optional<double>& v) {
    return v.value_or(std::numeric_limits<double>::quiet_NaN());
}

// Writes the table to cfg.output (or out). CSV runs put meta in a
// "<output>.meta.json" sidecar, or on err when writing to stdout.
void emit(const RunConfig& cfg, const Table& table, json meta, std::ostream& out, std::ostream& err) {
    meta["command"] = cfg.command;
    meta["params"] = params_json(cfg.params());
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output, std::ios::binary);
        if (!file) throw InvalidArgument("cannot open output file '" + cfg.output + "'");
    }
    std::ostream& sink = cfg.output.empty() ? out : file;
    if (cfg.format == OutputFormat::json) {
        sink << json{{"meta", meta}, {"rows", to_json(table)}}.dump(2) << '\n';
        return;
    }
    write_csv(sink, table);
    if (cfg.output.empty()) {
        err << meta.dump() << '\n';
    } else {
        std::ofstream side(cfg.output + ".meta.json", std::ios::binary);
        if (!side) throw InvalidArgument("cannot open metadata file '" + cfg.output + ".meta.json'");
        side << meta.dump(2) << '\n';
    }
}

// x_N = 0 and x_j = x_{j+1} + gap_j.
std::vector<double> coordinates_from_gaps(const std::vector<double>& gaps) {
    std::vector<double> coords(gaps.size() + 1, 0.0);
    for (std::size_t j = gaps.size(); j-- > 0;) coords[j] = coords[j + 1] + gaps[j];
    return coords;
}

std::vector<int> n_or(const RunConfig& cfg, std::vector<int> fallback) {
    return cfg.n_list.empty() ? fallback : cfg.n_list;
}

void run_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SystemParams base = cfg.params();
    const std::vector<double> kappas = cfg.kappa_range ? cfg.kappa_range->grid() : std::vector<double>{cfg.kappa};
    const std::vector<double> omegas = cfg.omega_range ? cfg.omega_range->grid() : std::vector<double>{base.omega};
    const auto rows = sweep_spectrum(base, n_or(cfg, {1}), omegas, kappas);
    Table t{{"n", "omega", "kappa", "re_E_plus", "im_E_plus", "re_E_minus", "im_E_minus"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({static_cast<long long>(r.n), r.omega, r.kappa, r.e_plus.real(), r.e_plus.imag(),
                          r.e_minus.real(), r.e_minus.imag()});
    emit(cfg, t, {{"rows", rows.size()}}, out, err);
}

void run_ep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Table t{{"n", "kappa_ep", "re_E", "im_E", "gap", "expected_re_E", "expected_im_E"}, {}};
    for (int n : n_or(cfg, {1, 2, 3})) {
        SystemParams p = cfg.params();
        p.kappa = exceptional_point_kappa(p, n);
        const ExcitationSector s = build_sector(p, n);
        const double root_n = std::sqrt(double(n));
        t.rows.push_back({static_cast<long long>(n), p.kappa, s.e_plus.real(), s.e_plus.imag(), std::abs(s.gap()),
                          n * p.Omega, -(2 * n - 1) * root_n * p.g});
    }
    emit(cfg, t, json::object(), out, err);
}

std::vector<double> tau_grid(const RunConfig& cfg, const SystemParams& p, std::size_t default_points) {
    const std::size_t points = cfg.points.value_or(default_points);
    if (points < 2) throw InvalidArgument("--points must be at least 2");
    if (!cfg.tau_max) return default_tau_grid(p, points);
    if (!(*cfg.tau_max > 0)) throw InvalidArgument("--tau-max must be positive");
    return linspace(0.0, *cfg.tau_max, points);
}

std::optional<double> try_tail_rate(const BoundStateProfile& prof) {
    try {
        return tail_decay_rate(prof);
    } catch (const InsufficientData&) {
        return std::nullopt;
    }
}

void run_boundstate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SystemParams p = cfg.params();
    const double k1 = cfg.k1.value_or(p.omega);
    const double k2 = cfg.k2.value_or(k1);
    const auto grid = tau_grid(cfg, p, 512);
    json meta;
    BoundStateProfile prof;
    if (cfg.oracle) {
        const OracleProfile o = oracle_bound_profile(p, k1, k2, grid, default_oracle_config(p, k1, k2));
        prof = o.profile;
        meta["method"] = "quadrature";
        meta["max_error_estimate"] = o.max_error_estimate;
        meta["converged"] = o.converged;
    } else {
        prof = generic_bound_profile(p, k1, k2, grid);
        meta["method"] = "residues";
    }
    meta["k1"] = k1;
    meta["k2"] = k2;
    meta["regime"] = std::string(to_string(prof.regime));
    meta["center_phase_freq"] = prof.center_phase_freq;
    meta["tail_rate"] = nan_if_missing(try_tail_rate(prof));

    Table t{{"tau", "re_amp", "im_amp", "abs_amp"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Complex a = prof.amplitude[i];
        t.rows.push_back({grid[i], a.real(), a.imag(), std::abs(a)});
    }
    emit(cfg, t, meta, out, err);
}

void run_g2(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SystemParams p = cfg.params();
    const double tau_max = cfg.tau_max.value_or(p.g > 0 ? 40.0 / p.g : 100.0);
    const CorrelationCurve c = g2_curve(p, tau_max, cfg.points.value_or(2048));
    Table t{{"tau", "g2"}, {}};
    for (std::size_t i = 0; i < c.tau.size(); ++i) t.rows.push_back({c.tau[i], c.g2[i]});
    emit(cfg, t, {{"asymptote", c.asymptote}, {"approach_rate", c.approach_rate}}, out, err);
}

void run_nphoton(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SystemParams p = cfg.params();
    const std::vector<int> ns = n_or(cfg, {3});
    if (ns.size() != 1) throw InvalidArgument("nphoton takes a single photon number --n");
    const int n = ns.front();
    if (!cfg.d1_range) throw InvalidArgument("nphoton needs --d1-range");
    const bool general = !cfg.k_list.empty();
    if (general && cfg.k_list.size() != static_cast<std::size_t>(n))
        throw InvalidArgument("--k must list one frequency per photon");

    const std::vector<double> d1s = cfg.d1_range->grid();
    const std::vector<double> d2s = n >= 3 ? (cfg.d2_range ? cfg.d2_range->grid() : std::vector<double>{1.0})
                                           : std::vector<double>{0.0};
    Table t{{"d1", "d2", "re_value", "im_value", "abs_value"}, {}};
    if (n < 2) throw InvalidArgument("nphoton needs n >= 2");
    std::vector<double> gaps(static_cast<std::size_t>(n - 1), 1.0);
    for (std::size_t j = 2; j < gaps.size() && j - 2 < cfg.gaps_fixed.size(); ++j) gaps[j] = cfg.gaps_fixed[j - 2];
    for (double d1 : d1s) {
        for (double d2 : d2s) {
            gaps[0] = d1;
            if (n >= 3) gaps[1] = d2;
            const std::vector<double> coords = coordinates_from_gaps(gaps);
            const Complex v = general ? envelope_general(p, cfg.k_list, coords).value : envelope_resonant(p, coords).value;
            t.rows.push_back({d1, d2, v.real(), v.imag(), std::abs(v)});
        }
    }
    emit(cfg, t, {{"n", n}, {"resonant", !general}}, out, err);
}

// Tail rate of the n-photon envelope along the slice that grows the last gap,
// the others held at 1 (n = 2 is the bound-state profile itself).
double envelope_tail_rate(const SystemParams& p, int n) {
    BoundStateProfile slice;
    slice.tau = linspace(0.0, 40.0 / p.g, 1024);
    std::vector<double> gaps(static_cast<std::size_t>(n - 1), 1.0);
    for (double gap : slice.tau) {
        gaps.back() = gap;
        slice.amplitude.push_back(envelope_resonant(p, coordinates_from_gaps(gaps)).value);
    }
    return tail_decay_rate(slice);
}

void run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SystemParams base = cfg.params();
    if (!base.resonant()) throw DomainError("sweep-tightness requires omega == Omega");
    if (!(base.g > 0)) throw DomainError("sweep-tightness requires g > 0");
    if (!cfg.kappa_range) throw InvalidArgument("sweep-tightness needs --kappa-range");
    const std::vector<int> ns = n_or(cfg, {2});
    if (ns.size() != 1) throw InvalidArgument("sweep-tightness takes a single photon number --n");
    const int n = ns.front();
    if (n < 2 || n > max_resonant_photons) throw InvalidArgument("sweep-tightness photon number must be 2..8");

    const std::vector<double> kappas = cfg.kappa_range->grid();
    std::vector<double> tail(kappas.size());
    std::vector<double> approach(kappas.size());
    parallel_for(kappas.size(), [&](std::size_t i) {
        SystemParams p = base;
        p.kappa = kappas[i];
        if (!(p.kappa > 0)) throw InvalidArgument("sweep-tightness needs kappa > 0");
        tail[i] = envelope_tail_rate(p, n);
        approach[i] = g2_curve(p, 40.0 / p.g, 2048).approach_rate;
    });
    const auto argmax = [](const std::vector<double>& v) {
        return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    };
    const std::size_t best_tail = argmax(tail);
    const std::size_t best_approach = argmax(approach);

    Table t{{"kappa", "kappa_over_g", "tail_rate", "approach_rate", "tail_argmax", "approach_argmax"}, {}};
    for (std::size_t i = 0; i < kappas.size(); ++i)
        t.rows.push_back({kappas[i], kappas[i] / base.g, tail[i], approach[i], static_cast<long long>(i == best_tail),
                          static_cast<long long>(i == best_approach)});
    emit(cfg, t,
         {{"n", n},
          {"ep_kappa", 4.0 * base.g},
          {"tail_argmax_kappa", kappas[best_tail]},
          {"approach_argmax_kappa", kappas[best_approach]}},
         out, err);
}

std::string find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file path");
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
    try {
        return config_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config file is not valid JSON: ") + e.what());
    }
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& args, bool& dump_config) {
    const std::string config_path = find_config_path(args);
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);

    CLI::App app{"Few-photon transport through a waveguide-coupled Jaynes-Cummings system"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    for (const auto& name : kCommands) app.add_subcommand(name);
    std::string ignored_path;
    app.add_option("--config", ignored_path, "JSON run configuration; flags override its fields");
    app.add_flag("--dump-config", dump_config, "print the effective configuration as JSON and exit");

    double omega = 0.0;
    std::string kappa_range, omega_range, d1_range, d2_range, format;
    double tau_max = 0.0, k1 = 0.0, k2 = 0.0;
    std::size_t points = 0;
    auto* o_omega = app.add_option("--omega", omega, "cavity frequency (defaults to --Omega)");
    app.add_option("--Omega", cfg.Omega, "atomic transition frequency");
    app.add_option("--g", cfg.g, "atom-cavity coupling");
    app.add_option("--kappa", cfg.kappa, "cavity-waveguide decay rate");
    auto* o_kr = app.add_option("--kappa-range", kappa_range, "start:stop:step");
    auto* o_or = app.add_option("--omega-range", omega_range, "start:stop:step");
    app.add_option("--n", cfg.n_list, "excitation or photon numbers")->delimiter(',');
    auto* o_tau = app.add_option("--tau-max", tau_max, "largest separation");
    auto* o_pts = app.add_option("--points", points, "number of samples");
    auto* o_k1 = app.add_option("--k1", k1, "first incoming frequency");
    auto* o_k2 = app.add_option("--k2", k2, "second incoming frequency");
    auto* o_oracle = app.add_flag("--oracle", "integrate the scattering matrix numerically");
    auto* o_d1 = app.add_option("--d1-range", d1_range, "gap x1 - x2 as start:stop:step");
    auto* o_d2 = app.add_option("--d2-range", d2_range, "gap x2 - x3 as start:stop:step");
    app.add_option("--gaps-fixed", cfg.gaps_fixed, "remaining gaps x3 - x4, ...")->delimiter(',');
    app.add_option("--k", cfg.k_list, "photon frequencies for the general envelope")->delimiter(',');
    auto* o_fmt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", cfg.output, "output file (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (o_omega->count()) cfg.omega = omega;
    if (o_kr->count()) cfg.kappa_range = parse_range(kappa_range);
    if (o_or->count()) cfg.omega_range = parse_range(omega_range);
    if (o_tau->count()) cfg.tau_max = tau_max;
    if (o_pts->count()) cfg.points = points;
    if (o_k1->count()) cfg.k1 = k1;
    if (o_k2->count()) cfg.k2 = k2;
    if (o_oracle->count()) cfg.oracle = true;
    if (o_d1->count()) cfg.d1_range = parse_range(d1_range);
    if (o_d2->count()) cfg.d2_range = parse_range(d2_range);
    if (o_fmt->count()) cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (cfg.command.empty() && !dump_config) throw UsageError("no command given; expected one of spectrum, ep, boundstate, g2, nphoton, sweep-tightness");
    return cfg;
}

void execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.params().validate();
    if (cfg.command == "spectrum") return run_spectrum(cfg, out, err);
    if (cfg.command == "ep") return run_ep(cfg, out, err);
    if (cfg.command == "boundstate") return run_boundstate(cfg, out, err);
    if (cfg.command == "g2") return run_g2(cfg, out, err);
    if (cfg.command == "nphoton") return run_nphoton(cfg, out, err);
    if (cfg.command == "sweep-tightness") return run_sweep(cfg, out, err);
    throw UsageError("unknown command '" + cfg.command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        bool dump = false;
        const RunConfig cfg = parse_args(args, dump);
        if (dump) {
            out << to_json(cfg).dump(2) << '\n';
            return 0;
        }
        execute(cfg, out, err);
        return 0;
    } catch (const UsageError& e) {
        print_error(err, "usage", e.what());
        return 1;
    } catch (const Error& e) {
        print_error(err, e.kind(), e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error(err, "internal", e.what());
        return 2;
    }
}

} // namespace jcqed::cli
