// scattering.cpp: closed-form and spectral two-photon S-matrix pieces

#include "jcqed/scattering.hpp"

#include <cmath>
#include <numbers>

namespace jcqed {

namespace {

constexpr Complex kI{0.0, 1.0};

// D(k) = (k − ω + iκ/2)(k − Ω) − g² = (k − E_{1+})(k − E_{1−})
Complex single_denominator(const SystemParams& p, Complex k) {
    return (k - p.omega + kI * (p.kappa / 2)) * (k - p.Omega) - p.g * p.g;
}

} // namespace

Complex transmission(const SystemParams& params, double k) {
    params.validate();
    if (params.kappa == 0.0) return {1.0, 0.0};
    const Complex half_decay = kI * (params.kappa / 2);
    if (params.g == 0.0) {
        // Bare cavity; the atom factor (k − Ω) cancels.
        return (k - params.omega - half_decay) / (k - params.omega + half_decay);
    }
    const Complex num = (k - params.omega - half_decay) * (k - params.Omega) - params.g * params.g;
    const Complex den = single_denominator(params, k);
    // Im den = κ(k − Ω)/2 and Re den = −g² at k = Ω, so den ≠ 0 for κ, g > 0.
    if (den == Complex{}) throw DomainError("transmission: vanishing denominator");
    return num / den;
}

AuxAmplitudes s_aux(const SystemParams& params, double k) {
    params.validate();
    if (params.kappa == 0.0) return {};
    const double root_kappa = std::sqrt(params.kappa);
    if (params.g == 0.0) return {root_kappa / (k - params.omega + kI * (params.kappa / 2)), {}};
    const Complex den = single_denominator(params, k);
    return {root_kappa * (k - params.Omega) / den, root_kappa * params.g / den};
}

Complex pair_amplitude_f(const SystemParams& params, double k1, double k2) {
    params.validate();
    if (params.kappa == 0.0 || params.g == 0.0) return {};
    const auto [c1, a1] = s_aux(params, k1);
    const auto [c2, a2] = s_aux(params, k2);
    const double total = k1 + k2;
    const auto [e2p, e2m] = sector_eigenvalues(params, 2);
    const Complex numerator = 2.0 * params.g * (c1 + c2) + (total - 2.0 * params.omega + kI * params.kappa) * (a1 + a2);
    const Complex prefactor = kI * std::sqrt(params.kappa) * params.g / std::numbers::pi;
    return prefactor * numerator / ((total - e2p) * (total - e2m));
}

ConnectedS2::ConnectedS2(const SystemParams& params, double k1, double k2) : k1_(k1), k2_(k2) {
    params.validate();
    const ExcitationSector s1 = build_sector(params, 1);
    const ExcitationSector s2 = build_sector(params, 2);
    e1_ = {s1.e_plus, s1.e_minus};
    e2_ = {s2.e_plus, s2.e_minus};
    numerator_ = params.kappa * params.g * params.g * pair_amplitude_f(params, k1, k2);
}

Complex ConnectedS2::operator()(double p1) const {
    if (numerator_ == Complex{}) return {};
    const double p2 = k1_ + k2_ - p1;
    return numerator_ / ((p1 - e1_[0]) * (p1 - e1_[1]) * (p2 - e1_[0]) * (p2 - e1_[1]));
}

TwoPhotonSMatrixEval connected_s2(const SystemParams& params, double p1, double k1, double k2) {
    const ConnectedS2 s(params, k1, k2);
    return {p1, k1 + k2 - p1, k1, k2, s(p1)};
}

// ------------------------------------------------------------- spectral route

SpectralAmplitudes spectral_amplitudes(const ExcitationSector& sector1, const ExcitationSector& sector2) {
    if (sector1.n != 1 || sector2.n != 2) throw InvalidArgument("spectral_amplitudes expects sectors n = 1 and n = 2");
    if (sector1.in_exclusion_zone())
        throw DegenerateSpectrum("single-excitation sector is at an exceptional point; use transmission()/connected_s2()");
    if (sector2.in_exclusion_zone())
        throw DegenerateSpectrum("two-excitation sector is at an exceptional point; use connected_s2()");

    // a maps {|2,g⟩, |1,e⟩} onto {|1,g⟩, |0,e⟩} with elements √2 and 1; a† is its transpose.
    Eigen::Matrix2cd lower = Eigen::Matrix2cd::Zero();
    lower(0, 0) = std::sqrt(2.0);
    lower(1, 1) = 1.0;

    SpectralAmplitudes amp;
    amp.e1 = {sector1.e_plus, sector1.e_minus};
    amp.e2 = {sector2.e_plus, sector2.e_minus};
    for (int l = 0; l < 2; ++l) {
        amp.vac_a[l] = sector1.right_vecs(0, l);
        amp.adag_vac[l] = sector1.left_vecs(l, 0);
    }
    amp.a_21 = sector1.left_vecs * lower * sector2.right_vecs;
    amp.adag_12 = sector2.left_vecs * lower.transpose() * sector1.right_vecs;
    return amp;
}

SpectralAmplitudes spectral_amplitudes(const SystemParams& params) {
    return spectral_amplitudes(build_sector(params, 1), build_sector(params, 2));
}

SpectralKernel::SpectralKernel(const SystemParams& params) : params_(params), amp_(spectral_amplitudes(params)) {}

SpectralKernel::SpectralKernel(const SystemParams& params, const SpectralAmplitudes& amplitudes)
    : params_(params), amp_(amplitudes) {}

Complex SpectralKernel::g(double k) const {
    Complex sum{};
    for (int l = 0; l < 2; ++l) sum += amp_.vac_a[l] * amp_.adag_vac[l] / (k - amp_.e1[l]);
    return -kI * params_.kappa * sum;
}

// Σ over the intermediate two-excitation states plus the principal-value
// channel, between single-excitation states ν (outgoing side) and μ.
Complex SpectralKernel::bracket(Complex pv_factor, double total, int nu, int mu) const {
    Complex ladder{};
    for (int l = 0; l < 2; ++l) ladder += amp_.a_21(nu, l) * amp_.adag_12(l, mu) / (total - amp_.e2[l]);
    return amp_.adag_vac[nu] * pv_factor * amp_.vac_a[mu] + ladder;
}

Complex SpectralKernel::g2(double p1, double k1, double k2) const {
    if (p1 == k1) throw PrincipalValuePoint("g2 kernel evaluated at its principal-value point P1 = K1");
    const Complex z = k2 - p1;
    const Complex pv = 1.0 / (k1 - p1);
    Complex sum{};
    for (int nu = 0; nu < 2; ++nu)
        for (int mu = 0; mu < 2; ++mu)
            sum += amp_.vac_a[nu] / (z - amp_.e1[nu]) * bracket(pv, k2, nu, mu) * amp_.adag_vac[mu] /
                   (k1 - amp_.e1[mu]);
    return params_.kappa * params_.kappa / (2.0 * std::numbers::pi * kI) * sum;
}

Complex SpectralKernel::g2_numerator(Complex p1, double k1, double k2) const {
    if (p1 == Complex{k1, 0.0}) throw PrincipalValuePoint("g2 numerator evaluated at P1 = K1");
    const Complex z = k2 - p1;
    const Complex pv = 1.0 / (k1 - p1);
    Complex sum{};
    for (int nu = 0; nu < 2; ++nu) {
        // (z − E_ν)^{-1} (z − E_+)(z − E_−) = z − E_{other}
        const Complex partner = z - amp_.e1[1 - nu];
        for (int mu = 0; mu < 2; ++mu)
            sum += amp_.vac_a[nu] * partner * bracket(pv, k2, nu, mu) * amp_.adag_vac[mu] / (k1 - amp_.e1[mu]);
    }
    return params_.kappa * params_.kappa * sum;
}

Complex spectral_g(const SystemParams& params, double k) {
    params.validate();
    const ExcitationSector s1 = build_sector(params, 1);
    if (s1.in_exclusion_zone())
        throw DegenerateSpectrum("single-excitation sector is at an exceptional point; use transmission()");

    Complex sum{};
    for (int l = 0; l < 2; ++l) sum += s1.right_vecs(0, l) * s1.left_vecs(l, 0) / (k - s1.energy(l));
    return -kI * params.kappa * sum;
}

Complex spectral_g2_kernel(const SystemParams& params, double p1, double k1, double k2) {
    params.validate();
    return SpectralKernel(params).g2(p1, k1, k2);
}

Complex symmetrized_g2_sum(const SystemParams& params, double p1, double k1, double k2) {
    params.validate();
    const SpectralKernel kernel(params);
    const double total = k1 + k2;
    const double p2 = total - p1;
    return kernel.g2(p1, k1, total) + kernel.g2(p2, k1, total) + kernel.g2(p1, k2, total) + kernel.g2(p2, k2, total);
}

Complex single_photon_numerator(const SystemParams& params, Complex k) {
    return -kI * params.kappa * (k - params.Omega);
}

} // namespace jcqed
