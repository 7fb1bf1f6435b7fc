// Shared generators for property tests. Every test seeds its own engine.
#pragma once

#include "jcqed/core_model.hpp"

#include <cmath>
#include <random>

namespace jcqed::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Off-resonant draw: ω, Ω ∈ [0.5, 1.5], g ∈ [0.01, 0.5], κ ∈ [0.01, 1].
inline SystemParams random_params(Rng& rng) {
    SystemParams p;
    p.omega = uniform(rng, 0.5, 1.5);
    p.Omega = uniform(rng, 0.5, 1.5);
    p.g = uniform(rng, 0.01, 0.5);
    p.kappa = uniform(rng, 0.01, 1.0);
    return p;
}

inline SystemParams resonant_params(double g, double kappa, double omega = 1.0) {
    return SystemParams{omega, omega, g, kappa};
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace jcqed::testing
