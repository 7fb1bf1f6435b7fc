// numerics.hpp: quadrature and decay-rate fitting shared by the physics modules

#pragma once

#include "jcqed/core_model.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace jcqed {

using ComplexIntegrand = std::function<Complex(double)>;

// Integration over [center − half_width, center + half_width].
struct QuadConfig {
    double half_width{1.0};
    double rel_tol{1e-9};
    double abs_tol{0.0};              // stop once the total error is below max(abs_tol, rel_tol·|value|)
    int max_subdivisions{20000};
    std::optional<double> pv_point;   // simple pole integrated as a principal value
    double center{0.0};
    int initial_segments{8};

    void validate() const;
};

struct QuadResult {
    Complex value{};
    double error_estimate{0.0};
    bool converged{false};
    int subdivisions{0};
};

// Globally adaptive 15-point Gauss-Kronrod. The principal value around
// pv_point is taken by pairing f(c + t) + f(c − t) on the largest symmetric
// neighbourhood inside the interval, so the pole never gets sampled. On hitting
// the subdivision cap the best estimate is returned with converged = false.
QuadResult adaptive_integrate(const ComplexIntegrand& f, const QuadConfig& config);

// Plain interval version, a < b.
QuadResult integrate_interval(const ComplexIntegrand& f, double a, double b, double rel_tol,
                              double abs_tol = 0.0, int max_subdivisions = 20000);

struct ExpRateFit {
    double rate{0.0};       // positive for decay
    double intercept{0.0};  // log-amplitude at x = 0
    double r_squared{0.0};
};

// Least squares of log(ys) against xs. Needs at least 8 points, ys > 0.
ExpRateFit fit_exp_rate(std::span<const double> xs, std::span<const double> ys);

// One exponential mode y_m ≈ amplitude · pole^m of a uniformly sampled signal.
struct DecayMode {
    Complex pole{};
    Complex amplitude{};
    double rate{0.0};       // −ln|pole| / step
    double frequency{0.0};  // arg(pole) / step
    double weight{0.0};     // |amplitude| · ‖pole^m‖₂ over the window
};

struct ModeFitOptions {
    double rank_tol{1e-10};     // singular values below rank_tol·σ_max are noise
    int max_order{12};
};

// Matrix-pencil least-squares fit of a sum of complex exponentials. The model
// order is the numerical rank of the Hankel matrix, so a critically damped
// (τ e^{-γτ}) signal shows up as two coalescing poles. Modes come back sorted
// by increasing rate.
std::vector<DecayMode> fit_decay_modes(std::span<const Complex> samples, double step,
                                       const ModeFitOptions& options = {});

// Smallest rate among modes whose weight is at least significance·max weight.
double slowest_decay_rate(const std::vector<DecayMode>& modes, double significance = 1e-6);

// Evenly spaced grid from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

// start, start+step, ... up to stop (inclusive within a 1e-9 step fraction).
std::vector<double> range_grid(double start, double stop, double step);

} // namespace jcqed
