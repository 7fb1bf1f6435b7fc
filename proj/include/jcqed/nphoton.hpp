// nphoton.hpp: slowest-decay envelope of the N-photon bound state
//
// Only the part governed by the single-excitation poles E_{1±} is built. It
// dominates at large separations. For descending coordinates x_Q1 ≥ … ≥ x_QN
// the envelope is one pair decay followed by a chain of single decays:
//
//   B ∝ Σ_Q F_{k,k'}(x_Q1 − x_Q2) ∏_{j≥2} F_k''(x_Qj − x_Q(j+1))   (general)
//   B ∝ Σ_Q f(x_Q1 − x_Q2) ∏_{j≥2} g(x_Qj − x_Q(j+1))             (ω = Ω = k_i)

#pragma once

#include "jcqed/core_model.hpp"

#include <span>
#include <vector>

namespace jcqed {

inline constexpr int max_resonant_photons = 8;
inline constexpr int max_general_photons = 6;

struct NPhotonEnvelope {
    int n{0};
    std::vector<double> coordinates;
    Complex value{};
    bool resonant{false};
};

// Requires ω = Ω and κ, g > 0.
double g_tau(const SystemParams& params, double tau);

// F_{k1,k2}(x): ℬ(K2 − E_{1λ}, k1, K2) with K2 = k1 + k2, combined over the
// two single-excitation poles. x ≥ 0. Throws DegenerateSpectrum at an EP.
Complex aux_two_decay(const SystemParams& params, double k1, double k2, double x);

// F_k(x) = [𝒜(E₊)e^{−iE₊x}/(k − E₊) − 𝒜(E₋)e^{−iE₋x}/(k − E₋)] / (E₋ − E₊),
// 𝒜(k) = −iκ(k − Ω). x ≥ 0. Throws DegenerateSpectrum at an EP.
Complex aux_single_decay(const SystemParams& params, double k_next, double x);

enum class PermutationSum {
    ordered,  // the one surviving ordering (sorted coordinates)
    full,     // every permutation, each gated by its step functions
};

// Σ_Q f·∏g without prefactor. Coincident coordinates average over the tied
// orderings. 2 ≤ n ≤ 8; n > 8 throws ComplexityLimit.
NPhotonEnvelope envelope_resonant(const SystemParams& params, std::span<const double> coords,
                                  PermutationSum mode = PermutationSum::ordered);

// √(N!)/(2π)^{N/2} Σ_Q Σ_R of pair and single decays with their plane-wave
// phases. 2 ≤ n ≤ 6; n > 6 throws ComplexityLimit.
NPhotonEnvelope envelope_general(const SystemParams& params, std::span<const double> k_list,
                                 std::span<const double> coords, PermutationSum mode = PermutationSum::ordered);

} // namespace jcqed
