// boundstate.hpp: two-photon bound-state wavefunction
//
// B(x1, x2) = 1/(4√2 π) ∫dp1 dp2 S^C (e^{ip1x1 + ip2x2} + e^{ip1x2 + ip2x1}),
// reduced by the momentum δ to one integral over p1. With x_c = (x1 + x2)/2 and
// τ = x1 − x2 it factorizes as e^{i(k1+k2)x_c} b(τ). Profiles store b(τ) and the
// carrier frequency k1 + k2.
//
// Three routes:
//   f_tau                 resonant closed form, B = −4κ²/(√2π(κ²+4g²)) e^{2iωx_c} f(τ)
//   generic_bound_profile residues of S^C at p1 = k1 + k2 − E_{1±} (double pole at an EP)
//   oracle_bound_profile  adaptive quadrature of the p1 integral itself

#pragma once

#include "jcqed/core_model.hpp"
#include "jcqed/numerics.hpp"

#include <string_view>
#include <vector>

namespace jcqed {

enum class DampingRegime { underdamped, critical, overdamped };

std::string_view to_string(DampingRegime regime);

// |κ − 4g| below this multiple of g selects the critical (confluent) forms.
inline constexpr double critical_seam_width = 1e-9;

struct BoundStateProfile {
    std::vector<double> tau;           // ascending separations x1 − x2
    std::vector<Complex> amplitude;    // b(τ), even in τ
    DampingRegime regime{DampingRegime::underdamped};
    double center_phase_freq{0.0};     // k1 + k2, multiplies x_c
};

// Requires ω = Ω (DomainError otherwise) and κ, g > 0.
DampingRegime resonant_regime(const SystemParams& params);

double f_tau(const SystemParams& params, double tau);

// −4κ² / (√2 π (κ² + 4g²))
double resonant_bound_prefactor(const SystemParams& params);

// 512 points over [0, 12 / min(κ/4, g)].
std::vector<double> default_tau_grid(const SystemParams& params, std::size_t points = 512);

BoundStateProfile generic_bound_profile(const SystemParams& params, double k1, double k2,
                                        const std::vector<double>& tau_grid);

struct OracleProfile {
    BoundStateProfile profile;
    double max_error_estimate{0.0};
    bool converged{true};
};

// Λ = 200·max(κ, g, |(k1+k2)/2 − ω|) + 50, rel_tol = 1e-9.
QuadConfig default_oracle_config(const SystemParams& params, double k1, double k2);

// The integral runs over p1 = (k1+k2)/2 + q with q ∈ [−Λ, Λ]; config.center
// is ignored.
OracleProfile oracle_bound_profile(const SystemParams& params, double k1, double k2,
                                   const std::vector<double>& tau_grid, const QuadConfig& config);

enum class TailFit {
    modes,      // least-squares exponential-mode (matrix pencil) fit, slowest significant rate
    log_slope,  // least-squares slope of log|b| (on local maxima when the tail oscillates)
};

// Decay rate of |b(τ)| over the last third of the grid. Non-uniform grids
// always use log_slope. Throws InsufficientData with fewer than 20 tail
// points above the underflow floor.
double tail_decay_rate(const BoundStateProfile& profile, TailFit method = TailFit::modes);

} // namespace jcqed
