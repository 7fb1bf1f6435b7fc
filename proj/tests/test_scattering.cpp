#include "support.hpp"

#include "jcqed/scattering.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jcqed;
using namespace jcqed::testing;
using Catch::Approx;

namespace {

// Draws k near the resonances so the poles matter.
double random_k(Rng& rng, const SystemParams& p) { return uniform(rng, std::min(p.omega, p.Omega) - 1.0, std::max(p.omega, p.Omega) + 1.0); }

} // namespace

TEST_CASE("transmission is unitary") {
    Rng rng(31);
    for (int i = 0; i < 10000; ++i) {
        const SystemParams p = random_params(rng);
        CHECK(std::abs(std::abs(transmission(p, random_k(rng, p))) - 1.0) < 1e-13);
    }
}

TEST_CASE("transmission limits") {
    CHECK(transmission(SystemParams{1.0, 1.0, 0.2, 0.0}, 0.7) == Complex{1.0, 0.0});
    // Bare cavity on resonance reflects with phase −1.
    CHECK(std::abs(transmission(SystemParams{1.0, 1.0, 0.0, 0.3}, 1.0) + 1.0) < 1e-15);
    // Dressed: at k = Ω the atom pins t = 1.
    CHECK(std::abs(transmission(SystemParams{1.0, 1.2, 0.1, 0.3}, 1.2) - 1.0) < 1e-15);
}

TEST_CASE("auxiliary amplitudes") {
    Rng rng(32);
    for (int i = 0; i < 200; ++i) {
        const SystemParams p = random_params(rng);
        const double k = random_k(rng, p);
        const AuxAmplitudes a = s_aux(p, k);
        CHECK(rel_diff(a.s_a / a.s_c, p.g / (k - p.Omega)) < 1e-12);
    }
    CHECK(s_aux(SystemParams{1.0, 1.0, 0.1, 0.0}, 1.0).s_c == Complex{});
    const AuxAmplitudes bare = s_aux(SystemParams{1.0, 1.0, 0.0, 0.4}, 1.0);
    CHECK(std::abs(bare.s_c - std::sqrt(0.4) / Complex{0.0, 0.2}) < 1e-15);
    CHECK(bare.s_a == Complex{});
}

TEST_CASE("spectral single-photon amplitude equals transmission") {
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
        const SystemParams p = random_params(rng);
        if (build_sector(p, 1).in_exclusion_zone() || build_sector(p, 2).in_exclusion_zone()) continue;
        const double k = random_k(rng, p);
        CHECK(std::abs(1.0 + spectral_g(p, k) - transmission(p, k)) < 1e-10);
        const SpectralKernel kernel(p);
        CHECK(std::abs(kernel.g(k) - spectral_g(p, k)) < 1e-14);
    }
}

TEST_CASE("G(k) numerator is -iκ(k − Ω)") {
    Rng rng(34);
    for (int i = 0; i < 100; ++i) {
        const SystemParams p = random_params(rng);
        if (build_sector(p, 1).in_exclusion_zone()) continue;
        const double k = random_k(rng, p);
        const auto [ep, em] = sector_eigenvalues(p, 1);
        const Complex expected = single_photon_numerator(p, k) / ((k - ep) * (k - em));
        CHECK(rel_diff(spectral_g(p, k), expected) < 1e-10);
    }
}

TEST_CASE("symmetrized spectral kernel equals connected S matrix") {
    Rng rng(35);
    int checked = 0;
    while (checked < 200) {
        const SystemParams p = random_params(rng);
        if (build_sector(p, 1).in_exclusion_zone() || build_sector(p, 2).in_exclusion_zone()) continue;
        const double k1 = random_k(rng, p);
        const double k2 = random_k(rng, p);
        const double p1 = random_k(rng, p);
        const Complex closed = connected_s2(p, p1, k1, k2).amplitude;
        const Complex spectral = symmetrized_g2_sum(p, p1, k1, k2);
        CHECK(std::abs(spectral - closed) < 1e-8 * std::max(1.0, std::abs(closed)));
        ++checked;
    }
}

TEST_CASE("connected S matrix structure") {
    const SystemParams p{1.0, 1.1, 0.2, 0.3};
    const ConnectedS2 s(p, 0.9, 1.2);
    SECTION("symmetric under p1 ↔ p2") {
        for (double p1 : {-1.0, 0.3, 1.05, 2.0}) CHECK(rel_diff(s(p1), s(2.1 - p1)) < 1e-14);
    }
    SECTION("symmetric under k1 ↔ k2") {
        const ConnectedS2 swapped(p, 1.2, 0.9);
        CHECK(rel_diff(s(0.4), swapped(0.4)) < 1e-13);
    }
    SECTION("four-pole decay at large momentum") {
        const double a = std::abs(s(1e3)) * 1e12;
        const double b = std::abs(s(2e3)) * 16e12;
        CHECK(a == Approx(b).epsilon(5e-3));
    }
    SECTION("vanishes without coupling") {
        CHECK(ConnectedS2(SystemParams{1.0, 1.0, 0.0, 0.3}, 1.0, 1.0)(1.0) == Complex{});
        CHECK(ConnectedS2(SystemParams{1.0, 1.0, 0.3, 0.0}, 1.0, 1.0)(1.0) == Complex{});
    }
    CHECK(s.total_frequency() == Approx(2.1));
}

TEST_CASE("spectral amplitudes are invariant under eigenvector rescaling") {
    const SystemParams p{1.0, 1.15, 0.12, 0.35};
    ExcitationSector s1 = build_sector(p, 1);
    ExcitationSector s2 = build_sector(p, 2);
    const SpectralKernel reference(p, spectral_amplitudes(s1, s2));

    const Complex c1{0.3, -1.7};
    const Complex c2{-2.0, 0.4};
    s1.right_vecs.col(0) *= c1;
    s2.right_vecs.col(1) *= c2;
    s1.left_vecs = s1.right_vecs.inverse();
    s2.left_vecs = s2.right_vecs.inverse();
    const SpectralKernel rescaled(p, spectral_amplitudes(s1, s2));

    for (double p1 : {-0.4, 0.8, 1.3}) {
        CHECK(rel_diff(reference.g2(p1, 0.9, 2.2), rescaled.g2(p1, 0.9, 2.2)) < 1e-12);
        CHECK(rel_diff(reference.g(p1), rescaled.g(p1)) < 1e-12);
    }
}

TEST_CASE("kernel numerator removes the single-excitation poles") {
    const SystemParams p{1.0, 0.95, 0.1, 0.25};
    const SpectralKernel kernel(p);
    const auto& e = kernel.amplitudes().e1;
    const double p1 = 0.37;
    const double k1 = 1.1;
    const double total = 2.05;
    const Complex direct = 2.0 * std::numbers::pi * Complex{0.0, 1.0} * (total - p1 - e[0]) * (total - p1 - e[1]) *
                           kernel.g2(p1, k1, total);
    CHECK(rel_diff(kernel.g2_numerator(p1, k1, total), direct) < 1e-12);
    // Finite at a pole of 𝒢.
    const Complex at_pole = kernel.g2_numerator(total - e[0], k1, total);
    CHECK(std::isfinite(at_pole.real()));
    CHECK(std::isfinite(at_pole.imag()));
}

TEST_CASE("spectral errors") {
    const SystemParams ep{1.0, 1.0, 0.1, 0.4};
    CHECK_THROWS_AS(spectral_amplitudes(ep), DegenerateSpectrum);
    CHECK_THROWS_AS(spectral_g(ep, 1.0), DegenerateSpectrum);
    const SystemParams ep2{1.0, 1.0, 0.1, 0.4 * std::sqrt(2.0)};
    CHECK_THROWS_AS(spectral_g2_kernel(ep2, 0.3, 1.0, 2.0), DegenerateSpectrum);
    const SystemParams ok{1.0, 1.0, 0.1, 0.3};
    CHECK_THROWS_AS(spectral_g2_kernel(ok, 1.0, 1.0, 2.0), PrincipalValuePoint);
    // The closed forms stay valid at the EP.
    CHECK(std::abs(std::abs(transmission(ep, 0.93)) - 1.0) < 1e-14);
    CHECK(std::isfinite(std::abs(connected_s2(ep, 0.5, 1.0, 1.0).amplitude)));
}
