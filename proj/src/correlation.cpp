// correlation.cpp: G²(τ) samples and the approach-rate metric

#include "jcqed/correlation.hpp"

#include "jcqed/boundstate.hpp"
#include "jcqed/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace jcqed {

namespace {

constexpr std::size_t kMaxFitSamples = 256;

void require_resonant(const SystemParams& params) {
    params.validate();
    if (!params.resonant()) throw DomainError("g2_resonant requires omega == Omega");
}

bool interacting(const SystemParams& p) { return p.g > 0 && p.kappa > 0; }

double interaction_weight(const SystemParams& p) {
    const double k2 = p.kappa * p.kappa;
    return 4.0 * k2 / (std::numbers::pi * (k2 + 4.0 * p.g * p.g));
}

} // namespace

double g2_asymptote(const SystemParams& params) {
    require_resonant(params);
    const double free = 1.0 / std::numbers::pi;
    return free * free;
}

double g2_resonant(const SystemParams& params, double tau) {
    require_resonant(params);
    const Complex free = std::polar(1.0 / std::numbers::pi, params.omega * tau);
    if (!interacting(params)) return std::norm(free);
    return std::norm(free - interaction_weight(params) * f_tau(params, tau));
}

double g2_deviation(const SystemParams& params, double tau) {
    require_resonant(params);
    if (!interacting(params)) return 0.0;
    const double cf = interaction_weight(params) * f_tau(params, tau);
    return cf * (cf - 2.0 / std::numbers::pi * std::cos(params.omega * tau));
}

CorrelationCurve g2_curve(const SystemParams& params, double tau_max, std::size_t n_points) {
    require_resonant(params);
    if (!(tau_max > 0)) throw InvalidArgument("g2_curve: tau_max must be positive");
    if (n_points < 64) throw InvalidArgument("g2_curve: need at least 64 points");

    CorrelationCurve curve;
    curve.tau = linspace(0.0, tau_max, n_points);
    curve.asymptote = g2_asymptote(params);
    curve.g2.resize(n_points);
    std::vector<double> dev(n_points);
    double peak = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
        curve.g2[i] = g2_resonant(params, curve.tau[i]);
        dev[i] = g2_deviation(params, curve.tau[i]);
        peak = std::max(peak, std::abs(dev[i]));
    }
    if (peak == 0.0) {
        curve.approach_rate = std::numeric_limits<double>::quiet_NaN();
        return curve;
    }

    // Fit window: up to the last sample carrying information above roundoff,
    // subsampled without aliasing the carrier or the beat.
    std::size_t end = n_points;
    while (end > 0 && std::abs(dev[end - 1]) < 1e-14 * peak) --end;
    const double h = curve.tau[1] - curve.tau[0];
    const double fastest = std::abs(params.omega) + 2.0 * std::hypot(params.g, params.kappa);
    const auto alias_cap = static_cast<std::size_t>(std::max(1.0, std::floor(0.5 * std::numbers::pi / (fastest * h))));
    const std::size_t stride = std::clamp<std::size_t>(end / kMaxFitSamples, 1, alias_cap);

    std::vector<Complex> samples;
    for (std::size_t i = 0; i < end && samples.size() < 2 * kMaxFitSamples; i += stride) samples.push_back(dev[i]);
    if (samples.size() < 6) throw InsufficientData("g2_curve: deviation vanishes too early to fit an approach rate");
    curve.approach_rate = slowest_decay_rate(fit_decay_modes(samples, h * static_cast<double>(stride)));
    return curve;
}

} // namespace jcqed
