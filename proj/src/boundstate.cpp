// boundstate.cpp: closed-form, residue and quadrature bound-state profiles

#include "jcqed/boundstate.hpp"

#include "jcqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace jcqed {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kUnderflowFloor = 1e-290;

void require_resonant_closed_form(const SystemParams& params, const char* who) {
    params.validate();
    if (!params.resonant())
        throw DomainError(std::string(who) + " requires omega == Omega; use generic_bound_profile instead");
    if (!(params.kappa > 0) || !(params.g > 0)) throw DomainError(std::string(who) + " requires kappa > 0 and g > 0");
}

bool uniform_grid(const std::vector<double>& grid, std::size_t first) {
    if (grid.size() - first < 3) return false;
    const double h = grid[first + 1] - grid[first];
    if (!(h > 0)) return false;
    for (std::size_t i = first + 1; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-6 * h) return false;
    return true;
}

DampingRegime profile_regime(const SystemParams& params, const ExcitationSector& s1) {
    if (params.resonant() && params.kappa > 0 && params.g > 0) return resonant_regime(params);
    if (s1.in_exclusion_zone()) return DampingRegime::critical;
    const Complex gap = s1.gap();
    return std::abs(gap.real()) >= std::abs(gap.imag()) ? DampingRegime::underdamped : DampingRegime::overdamped;
}

} // namespace

std::string_view to_string(DampingRegime regime) {
    switch (regime) {
    case DampingRegime::underdamped: return "underdamped";
    case DampingRegime::critical: return "critical";
    case DampingRegime::overdamped: return "overdamped";
    }
    return "unknown";
}

DampingRegime resonant_regime(const SystemParams& params) {
    require_resonant_closed_form(params, "resonant_regime");
    const double seam = 4.0 * params.g;
    if (std::abs(params.kappa - seam) < critical_seam_width * params.g) return DampingRegime::critical;
    return params.kappa < seam ? DampingRegime::underdamped : DampingRegime::overdamped;
}

double f_tau(const SystemParams& params, double tau) {
    const DampingRegime regime = resonant_regime(params);
    const double t = std::abs(tau);
    const double c = params.kappa / 4;
    const double g = params.g;
    switch (regime) {
    case DampingRegime::critical:
        return (1.0 + g * t) * std::exp(-g * t);
    case DampingRegime::underdamped: {
        const double s = std::sqrt((g - c) * (g + c));
        return (std::cos(s * t) + c * std::sin(s * t) / s) * std::exp(-c * t);
    }
    case DampingRegime::overdamped: {
        // cosh and sinh expanded into the slow and fast exponentials.
        const double s = std::sqrt((c - g) * (c + g));
        return 0.5 * ((1.0 + c / s) * std::exp(-(c - s) * t) + (1.0 - c / s) * std::exp(-(c + s) * t));
    }
    }
    return 0.0;
}

double resonant_bound_prefactor(const SystemParams& params) {
    const double k2 = params.kappa * params.kappa;
    return -4.0 * k2 / (std::numbers::sqrt2 * std::numbers::pi * (k2 + 4.0 * params.g * params.g));
}

std::vector<double> default_tau_grid(const SystemParams& params, std::size_t points) {
    params.validate();
    double slowest = params.kappa / 4;
    if (params.g > 0) slowest = std::min(slowest, params.g);
    if (!(slowest > 0)) throw InvalidArgument("default_tau_grid needs kappa > 0");
    return linspace(0.0, 12.0 / slowest, points);
}

BoundStateProfile generic_bound_profile(const SystemParams& params, double k1, double k2,
                                        const std::vector<double>& tau_grid) {
    params.validate();
    const ExcitationSector s1 = build_sector(params, 1);
    const ConnectedS2 sc(params, k1, k2);
    const double total = k1 + k2;
    const Complex numerator = sc.numerator();
    const Complex ep = s1.e_plus;
    const Complex em = s1.e_minus;
    const bool confluent = s1.in_exclusion_zone();

    BoundStateProfile profile;
    profile.center_phase_freq = total;
    profile.regime = profile_regime(params, s1);
    profile.tau = tau_grid;
    profile.amplitude.resize(tau_grid.size());

    // b(τ) = 1/(2√2π) ∫dp1 S^C e^{i(p1 − K/2)|τ|} closed in the upper half plane,
    // where the poles sit at p1 = K − E_{1λ}.
    const Complex to_profile = kI * 2.0 * std::numbers::pi / (2.0 * std::numbers::sqrt2 * std::numbers::pi);
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const double t = std::abs(tau_grid[i]);
        Complex residues{};
        if (numerator != Complex{}) {
            if (confluent) {
                const Complex e = 0.5 * (ep + em);
                const Complex pole = total - e;
                const Complex d = pole - e;
                residues = numerator * std::exp(kI * (pole - 0.5 * total) * t) / (d * d) * (kI * t - 2.0 / d);
            } else {
                const Complex pp = total - ep;
                const Complex pm = total - em;
                residues = numerator * std::exp(kI * (pp - 0.5 * total) * t) / ((pp - ep) * (pp - em) * (pp - pm)) +
                           numerator * std::exp(kI * (pm - 0.5 * total) * t) / ((pm - ep) * (pm - em) * (pm - pp));
            }
        }
        profile.amplitude[i] = to_profile * residues;
    }
    return profile;
}

QuadConfig default_oracle_config(const SystemParams& params, double k1, double k2) {
    const double mean = 0.5 * (k1 + k2);
    QuadConfig config;
    config.half_width = 200.0 * std::max({params.kappa, params.g, std::abs(mean - params.omega)}) + 50.0;
    config.rel_tol = 1e-9;
    config.max_subdivisions = 400000;
    config.initial_segments = 64;
    config.center = mean;
    return config;
}

OracleProfile oracle_bound_profile(const SystemParams& params, double k1, double k2,
                                   const std::vector<double>& tau_grid, const QuadConfig& config) {
    params.validate();
    config.validate();
    const ConnectedS2 sc(params, k1, k2);
    const double mean = 0.5 * (k1 + k2);
    const double norm = 1.0 / (2.0 * std::numbers::sqrt2 * std::numbers::pi);

    QuadConfig cfg = config;
    cfg.center = 0.0;

    OracleProfile out;
    out.profile.tau = tau_grid;
    out.profile.amplitude.assign(tau_grid.size(), Complex{});
    out.profile.center_phase_freq = k1 + k2;
    out.profile.regime = profile_regime(params, build_sector(params, 1));
    if (sc.numerator() == Complex{}) return out;

    // Absolute tolerance scaled by ∫|S^C|, so zeros of the profile terminate.
    QuadConfig scale_cfg = cfg;
    scale_cfg.rel_tol = 1e-6;
    const QuadResult scale = adaptive_integrate([&](double q) { return Complex{std::abs(sc(mean + q)), 0.0}; }, scale_cfg);
    cfg.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(scale.value));

    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const double t = std::abs(tau_grid[i]);
        const QuadResult r = adaptive_integrate([&](double q) { return sc(mean + q) * std::cos(q * t); }, cfg);
        out.profile.amplitude[i] = norm * r.value;
        out.max_error_estimate = std::max(out.max_error_estimate, norm * r.error_estimate);
        out.converged = out.converged && r.converged;
    }
    return out;
}

double tail_decay_rate(const BoundStateProfile& profile, TailFit method) {
    const std::size_t n = profile.tau.size();
    if (profile.amplitude.size() != n) throw InvalidArgument("tail_decay_rate: tau and amplitude sizes differ");
    const std::size_t first = n - n / 3;

    std::size_t end = first;
    while (end < n && std::abs(profile.amplitude[end]) > kUnderflowFloor) ++end;
    if (end - first < 20) throw InsufficientData("tail_decay_rate: fewer than 20 tail points above the underflow floor");

    if (method == TailFit::modes && uniform_grid(profile.tau, first)) {
        const std::size_t count = end - first;
        const std::size_t stride = std::max<std::size_t>(1, count / 256);
        std::vector<Complex> samples;
        for (std::size_t i = first; i < end; i += stride) samples.push_back(profile.amplitude[i]);
        const double step = (profile.tau[first + 1] - profile.tau[first]) * static_cast<double>(stride);
        return slowest_decay_rate(fit_decay_modes(samples, step));
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = first + 1; i + 1 < end; ++i) {
        const double a = std::abs(profile.amplitude[i]);
        if (a > std::abs(profile.amplitude[i - 1]) && a >= std::abs(profile.amplitude[i + 1])) {
            xs.push_back(profile.tau[i]);
            ys.push_back(a);
        }
    }
    if (xs.size() < 8) {
        xs.clear();
        ys.clear();
        for (std::size_t i = first; i < end; ++i) {
            const double a = std::abs(profile.amplitude[i]);
            if (a > kUnderflowFloor) {
                xs.push_back(profile.tau[i]);
                ys.push_back(a);
            }
        }
    }
    return fit_exp_rate(xs, ys).rate;
}

} // namespace jcqed
