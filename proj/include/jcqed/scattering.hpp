// scattering.hpp: single-photon transmission and the two-photon S matrix
//
// Two independent routes to the same physics:
//   * closed forms: t_k, s_k^(c), s_k^(a), F(k1, k2) and the connected S^C;
//   * spectral forms built from biorthonormal sector eigenvectors: G(k) and the
//     kernel 𝒢(P1, K1, K2).
// They must agree: 1 + G(k) = t_k and 𝒢 summed over the four (p, k) pairings
// equals S^C. Every two-photon amplitude is a density with the
// momentum-conservation δ(p1 + p2 − k1 − k2) factored out.

#pragma once

#include "jcqed/core_model.hpp"

#include <Eigen/Dense>

#include <array>

namespace jcqed {

// t_k = [(k − ω − iκ/2)(k − Ω) − g²] / [(k − ω + iκ/2)(k − Ω) − g²]
Complex transmission(const SystemParams& params, double k);

struct AuxAmplitudes {
    Complex s_c{};  // cavity channel  √κ (k − Ω) / D(k)
    Complex s_a{};  // atom channel    √κ g / D(k)
};

AuxAmplitudes s_aux(const SystemParams& params, double k);

// F(k1, k2) of the connected two-photon S matrix.
Complex pair_amplitude_f(const SystemParams& params, double k1, double k2);

struct TwoPhotonSMatrixEval {
    double p1{};
    double p2{};  // k1 + k2 − p1
    double k1{};
    double k2{};
    Complex amplitude{};
};

// S^C for fixed incoming (k1, k2) as a function of the outgoing p1. Caches
// the poles and κ g² F(k1, k2), which makes it the integrand of choice for
// quadrature over p1.
class ConnectedS2 {
public:
    ConnectedS2(const SystemParams& params, double k1, double k2);

    Complex operator()(double p1) const;

    Complex numerator() const { return numerator_; }                  // κ g² F(k1, k2)
    const std::array<Complex, 2>& single_poles() const { return e1_; }
    const std::array<Complex, 2>& double_poles() const { return e2_; }
    double total_frequency() const { return k1_ + k2_; }

private:
    double k1_{};
    double k2_{};
    std::array<Complex, 2> e1_{};
    std::array<Complex, 2> e2_{};
    Complex numerator_{};
};

TwoPhotonSMatrixEval connected_s2(const SystemParams& params, double p1, double k1, double k2);

// Biorthogonal matrix elements between the vacuum and sectors 1 and 2.
struct SpectralAmplitudes {
    std::array<Complex, 2> e1{};         // E_{1,λ}, λ = (+, −)
    std::array<Complex, 2> e2{};         // E_{2,λ}
    std::array<Complex, 2> vac_a{};      // ⟨0|a|λ⟩₁
    std::array<Complex, 2> adag_vac{};   // ₁⟨λ̄|a†|0⟩
    Eigen::Matrix2cd a_21{};             // ₁⟨ν̄|a|λ⟩₂, row ν, column λ
    Eigen::Matrix2cd adag_12{};          // ₂⟨λ̄|a†|μ⟩₁, row λ, column μ
};

// Throws DegenerateSpectrum when either sector sits in the EP exclusion zone.
SpectralAmplitudes spectral_amplitudes(const ExcitationSector& sector1, const ExcitationSector& sector2);
SpectralAmplitudes spectral_amplitudes(const SystemParams& params);

// Spectral-decomposition evaluator for G and 𝒢 at fixed parameters.
class SpectralKernel {
public:
    explicit SpectralKernel(const SystemParams& params);
    SpectralKernel(const SystemParams& params, const SpectralAmplitudes& amplitudes);

    // G(k) = −iκ Σ_λ ⟨0|a|λ⟩₁ ₁⟨λ̄|a†|0⟩ / (k − E_{1λ}); S_pk = [1 + G(k)] δ(p − k).
    Complex g(double k) const;

    // 𝒢(P1, K1, K2); P1 = K1 is the principal-value point and is rejected.
    Complex g2(double p1, double k1, double k2) const;

    // ℬ(P1, K1, K2) = 2πi (K2 − P1 − E_{1+})(K2 − P1 − E_{1−}) 𝒢(P1, K1, K2),
    // analytic in complex P1 away from P1 = K1.
    Complex g2_numerator(Complex p1, double k1, double k2) const;

    const SpectralAmplitudes& amplitudes() const { return amp_; }
    const SystemParams& params() const { return params_; }

private:
    Complex bracket(Complex pv_factor, double total, int nu, int mu) const;

    SystemParams params_;
    SpectralAmplitudes amp_;
};

Complex spectral_g(const SystemParams& params, double k);
Complex spectral_g2_kernel(const SystemParams& params, double p1, double k1, double k2);

// 𝒢(p1,k1,K) + 𝒢(p2,k1,K) + 𝒢(p1,k2,K) + 𝒢(p2,k2,K), K = k1 + k2, p2 = K − p1.
Complex symmetrized_g2_sum(const SystemParams& params, double p1, double k1, double k2);

// 𝒜(k) = −iκ (k − Ω), the numerator of G(k) over (k − E_{1+})(k − E_{1−}).
Complex single_photon_numerator(const SystemParams& params, Complex k);

} // namespace jcqed
