// correlation.hpp: two-photon correlation G²(τ) for resonant scattering
//
// G²(τ) = |e^{iωτ}/π − C f(τ)|²,  C = 4κ² / (π(κ² + 4g²)).
// As f decays the curve settles on |1/π|² = 1/π².

#pragma once

#include "jcqed/core_model.hpp"

#include <vector>

namespace jcqed {

struct CorrelationCurve {
    std::vector<double> tau;
    std::vector<double> g2;
    double asymptote{0.0};
    // Slowest significant decay rate of g2 − asymptote; NaN when the curve
    // sits on the asymptote exactly (g = 0).
    double approach_rate{0.0};
};

// Requires ω = Ω. At g = 0 the interacting term vanishes identically.
double g2_resonant(const SystemParams& params, double tau);

// g2_resonant(τ) − g2_asymptote, evaluated without cancellation.
double g2_deviation(const SystemParams& params, double tau);

double g2_asymptote(const SystemParams& params);

// Uniform grid over [0, tau_max], n_points ≥ 64.
CorrelationCurve g2_curve(const SystemParams& params, double tau_max, std::size_t n_points);

} // namespace jcqed
