#include "support.hpp"

#include "jcqed/boundstate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

using namespace jcqed;
using namespace jcqed::testing;
using Catch::Approx;

namespace {

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        (f(a) * f(m) <= 0 ? b : a) = m;
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_CASE("f at the origin and symmetry") {
    for (double ratio : {1.0, 2.0, 4.0, 6.0, 10.0}) {
        const SystemParams p = resonant_params(0.1, ratio * 0.1);
        CHECK(f_tau(p, 0.0) == Approx(1.0).epsilon(1e-15));
        CHECK(f_tau(p, 3.7) == f_tau(p, -3.7));
    }
}

TEST_CASE("underdamped oscillation and first zero") {
    const double g = 0.1;
    const SystemParams p = resonant_params(g, 2.0 * g);
    CHECK(resonant_regime(p) == DampingRegime::underdamped);
    const double s = std::sqrt(3.0) / 2.0 * g;
    const double c = g / 2.0;
    // Root of cos(sτ) + (c/s) sin(sτ), independent of the implementation.
    const double root = bisect([&](double t) { return std::cos(s * t) + c / s * std::sin(s * t); }, 1.0, std::numbers::pi / s);
    CHECK(std::abs(f_tau(p, root)) < 1e-12);
    CHECK(f_tau(p, 0.99 * root) > 0.0);
    CHECK(f_tau(p, 1.01 * root) < 0.0);
    CHECK(root == Approx((std::numbers::pi - std::atan(s / c)) / s).epsilon(1e-12));
}

TEST_CASE("critical form") {
    const double g = 0.25;
    const SystemParams p = resonant_params(g, 4.0 * g);
    CHECK(resonant_regime(p) == DampingRegime::critical);
    CHECK(f_tau(p, 1.0 / g) == Approx(2.0 / std::numbers::e).epsilon(1e-14));
}

TEST_CASE("overdamped form has no zero and decays at the slow root") {
    const double g = 0.1;
    const SystemParams p = resonant_params(g, 8.0 * g);
    CHECK(resonant_regime(p) == DampingRegime::overdamped);
    const double c = 2.0 * g;
    const double slow = c - std::sqrt(c * c - g * g);
    for (double t = 0.0; t < 400.0; t += 0.5) CHECK(f_tau(p, t) > 0.0);
    CHECK(std::log(f_tau(p, 300.0) / f_tau(p, 301.0)) == Approx(slow).epsilon(1e-9));
}

TEST_CASE("seam continuity") {
    const double g = 0.1;
    const SystemParams crit = resonant_params(g, 4.0 * g);
    for (double side : {1.0 - 1e-6, 1.0 + 1e-6}) {
        const SystemParams p = resonant_params(g, 4.0 * g * side);
        CHECK(resonant_regime(p) != DampingRegime::critical);
        for (double t : {0.0, 1.0, 10.0, 50.0, 150.0}) CHECK(std::abs(f_tau(p, t) - f_tau(crit, t)) < 1e-4);
    }
}

TEST_CASE("closed form requires resonance") {
    CHECK_THROWS_AS(f_tau(SystemParams{1.0, 1.1, 0.1, 0.2}, 1.0), DomainError);
    CHECK_THROWS_AS(f_tau(SystemParams{1.0, 1.0, 0.0, 0.2}, 1.0), DomainError);
    CHECK_THROWS_AS(resonant_regime(SystemParams{1.0, 1.0, 0.1, 0.0}), DomainError);
}

TEST_CASE("prefactor") {
    const SystemParams p = resonant_params(0.1, 0.4);
    CHECK(resonant_bound_prefactor(p) == Approx(-16.0 / (5.0 * std::numbers::sqrt2 * std::numbers::pi)));
}

TEST_CASE("residue profile reproduces the resonant closed form") {
    for (double ratio : {1.0, 2.0, 3.9, 4.0, 4.1, 6.0, 9.0}) {
        const double g = 0.1;
        const SystemParams p = resonant_params(g, ratio * g);
        const auto grid = default_tau_grid(p, 200);
        const BoundStateProfile prof = generic_bound_profile(p, 1.0, 1.0, grid);
        CHECK(prof.regime == resonant_regime(p));
        CHECK(prof.center_phase_freq == Approx(2.0));
        const double pref = resonant_bound_prefactor(p);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(std::abs(prof.amplitude[i] - pref * f_tau(p, grid[i])) < 1e-10 * std::abs(pref));
    }
}

TEST_CASE("oracle quadrature agrees with the residue profile") {
    SECTION("resonant, underdamped") {
        const SystemParams p = resonant_params(0.1, 0.2);
        const std::vector<double> taus{0.0, 3.0, 17.0, 60.0};
        const OracleProfile o = oracle_bound_profile(p, 1.0, 1.0, taus, default_oracle_config(p, 1.0, 1.0));
        const BoundStateProfile r = generic_bound_profile(p, 1.0, 1.0, taus);
        CHECK(o.converged);
        for (std::size_t i = 0; i < taus.size(); ++i)
            CHECK(std::abs(o.profile.amplitude[i] - r.amplitude[i]) < 1e-6 * max_abs(r.amplitude));
    }
    SECTION("detuned, off-resonant photons") {
        const SystemParams p{1.0, 1.08, 0.12, 0.3};
        const std::vector<double> taus{0.0, 2.0, 9.0, 30.0};
        const OracleProfile o = oracle_bound_profile(p, 0.95, 1.1, taus, default_oracle_config(p, 0.95, 1.1));
        const BoundStateProfile r = generic_bound_profile(p, 0.95, 1.1, taus);
        CHECK(o.converged);
        CHECK(o.profile.center_phase_freq == Approx(2.05));
        for (std::size_t i = 0; i < taus.size(); ++i)
            CHECK(std::abs(o.profile.amplitude[i] - r.amplitude[i]) < 1e-6 * max_abs(r.amplitude));
    }
}

TEST_CASE("oracle truncation convergence") {
    const SystemParams p = resonant_params(0.1, 0.4);
    const std::vector<double> taus{0.0, 5.0, 20.0};
    QuadConfig cfg = default_oracle_config(p, 1.0, 1.0);
    const OracleProfile a = oracle_bound_profile(p, 1.0, 1.0, taus, cfg);
    cfg.half_width *= 2.0;
    const OracleProfile b = oracle_bound_profile(p, 1.0, 1.0, taus, cfg);
    for (std::size_t i = 0; i < taus.size(); ++i) CHECK(std::abs(a.profile.amplitude[i] - b.profile.amplitude[i]) < 1e-8);
}

TEST_CASE("profile vanishes without coupling") {
    const SystemParams p{1.0, 1.0, 0.0, 0.3};
    const std::vector<double> taus{0.0, 1.0};
    CHECK(max_abs(generic_bound_profile(p, 1.0, 1.0, taus).amplitude) == 0.0);
    CHECK(max_abs(oracle_bound_profile(p, 1.0, 1.0, taus, default_oracle_config(p, 1.0, 1.0)).profile.amplitude) == 0.0);
}

TEST_CASE("tail rates") {
    const double g = 0.1;
    SECTION("underdamped tail follows kappa/4") {
        const SystemParams p = resonant_params(g, 2.0 * g);
        const auto prof = generic_bound_profile(p, 1.0, 1.0, linspace(0.0, 400.0, 1024));
        CHECK(tail_decay_rate(prof) == Approx(0.5 * g).epsilon(0.02));
        CHECK(tail_decay_rate(prof, TailFit::log_slope) == Approx(0.5 * g).epsilon(0.02));
    }
    SECTION("critical tail follows g") {
        const SystemParams p = resonant_params(g, 4.0 * g);
        const auto prof = generic_bound_profile(p, 1.0, 1.0, linspace(0.0, 400.0, 1024));
        CHECK(tail_decay_rate(prof) == Approx(g).epsilon(0.02));
    }
    SECTION("overdamped tail follows the slow root") {
        const SystemParams p = resonant_params(g, 6.0 * g);
        const double c = 1.5 * g;
        const auto prof = generic_bound_profile(p, 1.0, 1.0, linspace(0.0, 400.0, 1024));
        CHECK(tail_decay_rate(prof) == Approx(c - std::sqrt(c * c - g * g)).epsilon(0.02));
    }
    SECTION("off resonance the slowest single-excitation pole wins") {
        const SystemParams p{1.0, 1.1, 0.1, 0.3};
        const auto [ep, em] = sector_eigenvalues(p, 1);
        const double slow = std::min(-ep.imag(), -em.imag());
        const auto prof = generic_bound_profile(p, 0.97, 1.06, linspace(0.0, 300.0, 1024));
        CHECK(tail_decay_rate(prof) == Approx(slow).epsilon(0.02));
    }
    SECTION("underflowed tail") {
        const SystemParams p = resonant_params(g, 6.0 * g);
        const auto prof = generic_bound_profile(p, 1.0, 1.0, linspace(0.0, 1e6, 300));
        CHECK_THROWS_AS(tail_decay_rate(prof), InsufficientData);
    }
}

TEST_CASE("default tau grid") {
    const auto grid = default_tau_grid(resonant_params(0.1, 0.2));
    CHECK(grid.size() == 512);
    CHECK(grid.back() == Approx(12.0 / 0.05));
}
